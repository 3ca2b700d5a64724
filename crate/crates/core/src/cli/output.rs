//! Output records. Every record carries a schema tag; rationals are strings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bochner::{BochnerIdentity, EigenvalueBound, IDENTITY_SCHEMA};
use crate::clifford::SpinorTable;
use crate::linalg::Rational;
use crate::report::VerificationReport;
use crate::weights::{
    casimir_eigenvalue, conformal_table, tilde_casimir_eigenvalue, HighestWeight, Sign, WeightError,
};

pub const WEIGHTS_SCHEMA: &str = "kahlergrad.weights/1";
pub const ESTIMATE_SCHEMA: &str = "kahlergrad.estimate/1";
pub const SPINOR_SCHEMA: &str = "kahlergrad.spinor-table/1";
pub const CPM_SCHEMA: &str = "kahlergrad.cpm/1";
pub const CASIMIR_SCHEMA: &str = "kahlergrad.casimir/1";
pub const VERIFY_SCHEMA: &str = "kahlergrad.verify/1";

pub trait Render: Serialize {
    fn text(&self) -> String;

    fn latex(&self) -> Option<String> {
        None
    }

    fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output records serialize")
    }
}

pub fn latex_document(body: &str) -> String {
    format!(
        "\\documentclass{{article}}\n\\usepackage{{amsmath,amssymb}}\n\\begin{{document}}\n{body}\\end{{document}}\n"
    )
}

fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        let a = r.abs();
        format!("{sign}\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRow {
    pub i: usize,
    pub w: i64,
    pub gamma: Rational,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsOutput {
    pub schema: String,
    pub rho: HighestWeight,
    pub m: usize,
    pub dimension: Rational,
    pub plus: Vec<ShiftRow>,
    pub minus: Vec<ShiftRow>,
    /// `c_q` for `q = 0..=2m`.
    pub casimir: Vec<Rational>,
    /// `c~_q` for `q = 0..=2m`.
    pub tilde_casimir: Vec<Rational>,
}

impl WeightsOutput {
    pub fn new(rho: &HighestWeight) -> Result<Self, WeightError> {
        let rows = |sign| -> Result<Vec<ShiftRow>, WeightError> {
            let t = conformal_table(rho, sign)?;
            Ok((1..=rho.m())
                .map(|i| ShiftRow {
                    i,
                    w: t.w(i),
                    gamma: t.gamma(i).clone(),
                    valid: t.is_valid(i),
                })
                .collect())
        };
        let qs = 0..=2 * rho.m() as u32;
        Ok(WeightsOutput {
            schema: WEIGHTS_SCHEMA.into(),
            rho: rho.clone(),
            m: rho.m(),
            dimension: rho.weyl_dimension(),
            plus: rows(Sign::Plus)?,
            minus: rows(Sign::Minus)?,
            casimir: qs
                .clone()
                .map(|q| casimir_eigenvalue(rho, q))
                .collect::<Result<_, _>>()?,
            tilde_casimir: qs
                .map(|q| tilde_casimir_eigenvalue(rho, q))
                .collect::<Result<_, _>>()?,
        })
    }
}

impl Render for WeightsOutput {
    fn text(&self) -> String {
        let mut s = format!(
            "rho = {}  m = {}  dim = {}\n",
            self.rho, self.m, self.dimension
        );
        for (name, rows) in [("+", &self.plus), ("-", &self.minus)] {
            for r in rows {
                let flag = if r.valid { "" } else { "  (not dominant)" };
                let _ = writeln!(
                    s,
                    "  {name}{}  w = {:>3}  gamma = {}{flag}",
                    r.i, r.w, r.gamma
                );
            }
        }
        for (q, (c, t)) in self.casimir.iter().zip(&self.tilde_casimir).enumerate() {
            let _ = writeln!(s, "  c_{q} = {c}  c~_{q} = {t}");
        }
        s
    }

    fn latex(&self) -> Option<String> {
        let mut s = format!("\\[\\rho = {}\\]\n\\begin{{tabular}}{{cccc}}\nshift & $w$ & $\\gamma$ & valid \\\\\n\\hline\n", self.rho);
        for (name, rows) in [("+", &self.plus), ("-", &self.minus)] {
            for r in rows {
                let _ = writeln!(
                    s,
                    "${name}{}$ & ${}$ & ${}$ & {} \\\\",
                    r.i,
                    r.w,
                    latex_rational(&r.gamma),
                    if r.valid { "yes" } else { "no" }
                );
            }
        }
        s.push_str(
            "\\end{tabular}\n\n\\begin{tabular}{ccc}\n$q$ & $c_q$ & $\\tilde c_q$ \\\\\n\\hline\n",
        );
        for (q, (c, t)) in self.casimir.iter().zip(&self.tilde_casimir).enumerate() {
            let _ = writeln!(
                s,
                "{q} & ${}$ & ${}$ \\\\",
                latex_rational(c),
                latex_rational(t)
            );
        }
        s.push_str("\\end{tabular}\n");
        Some(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityOutput {
    pub schema: String,
    pub rho: HighestWeight,
    /// `degree`, `weitzenboeck` or `dolbeault`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    pub identities: Vec<BochnerIdentity>,
}

impl IdentityOutput {
    pub fn new(
        rho: &HighestWeight,
        kind: &str,
        q: Option<u32>,
        p: Option<usize>,
        identities: Vec<BochnerIdentity>,
    ) -> Self {
        IdentityOutput {
            schema: IDENTITY_SCHEMA.into(),
            rho: rho.clone(),
            kind: kind.into(),
            q,
            p,
            identities,
        }
    }
}

impl Render for IdentityOutput {
    fn text(&self) -> String {
        let mut s = format!("rho = {}\n", self.rho);
        for id in &self.identities {
            let _ = writeln!(s, "{id}");
        }
        s
    }

    fn latex(&self) -> Option<String> {
        let mut s = format!("Identities for $\\rho = {}$.\n", self.rho);
        for id in &self.identities {
            let _ = write!(
                s,
                "\\begin{{multline*}}\n\\text{{{}}}:\\quad {}\n\\end{{multline*}}\n",
                id.label,
                id.to_latex()
            );
        }
        Some(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateOutput {
    pub schema: String,
    pub m: usize,
    pub bound_coefficient: Rational,
    pub witness_p: usize,
    pub closed_form: Rational,
}

impl EstimateOutput {
    pub fn new(b: EigenvalueBound, closed_form: Rational) -> Self {
        EstimateOutput {
            schema: ESTIMATE_SCHEMA.into(),
            m: b.m,
            bound_coefficient: b.bound_coefficient,
            witness_p: b.witness_p,
            closed_form,
        }
    }
}

impl Render for EstimateOutput {
    fn text(&self) -> String {
        format!(
            "m = {}: lambda^2 >= (kappa_0/4) * {}  (minimizing p = {}, closed form {})\n",
            self.m, self.bound_coefficient, self.witness_p, self.closed_form
        )
    }

    fn latex(&self) -> Option<String> {
        Some(format!(
            "For $m = {}$: \\[\\lambda^2 \\ge \\frac{{\\kappa_0}}{{4}}\\cdot {},\\] attained at $p = {}$.\n",
            self.m,
            latex_rational(&self.bound_coefficient),
            self.witness_p
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorTableOutput {
    pub schema: String,
    #[serde(flatten)]
    pub table: SpinorTable,
}

impl SpinorTableOutput {
    pub fn new(table: SpinorTable) -> Self {
        SpinorTableOutput {
            schema: SPINOR_SCHEMA.into(),
            table,
        }
    }
}

impl Render for SpinorTableOutput {
    fn text(&self) -> String {
        let mut s = format!("m = {}\n", self.table.m);
        for r in &self.table.rows {
            let _ = writeln!(
                s,
                "  p = {}  {}{}  w = {:>3}  gamma = {}",
                r.p,
                r.sign.symbol(),
                r.i,
                r.w,
                r.gamma
            );
        }
        s
    }

    fn latex(&self) -> Option<String> {
        let mut s = format!(
            "$m = {}$\n\n\\begin{{tabular}}{{cccc}}\n$p$ & shift & $w$ & $\\gamma$ \\\\\n\\hline\n",
            self.table.m
        );
        for r in &self.table.rows {
            let _ = writeln!(
                s,
                "{} & ${}{}$ & ${}$ & ${}$ \\\\",
                r.p,
                r.sign.symbol(),
                r.i,
                r.w,
                latex_rational(&r.gamma)
            );
        }
        s.push_str("\\end{tabular}\n");
        Some(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpmOutput {
    pub schema: String,
    pub rho: HighestWeight,
    pub i: usize,
    pub r: Rational,
    pub eigenvalue: Rational,
}

impl CpmOutput {
    pub fn new(rho: &HighestWeight, i: usize, r: Rational, eigenvalue: Rational) -> Self {
        CpmOutput {
            schema: CPM_SCHEMA.into(),
            rho: rho.clone(),
            i,
            r,
            eigenvalue,
        }
    }
}

impl Render for CpmOutput {
    fn text(&self) -> String {
        format!("{}\n", self.eigenvalue)
    }

    fn latex(&self) -> Option<String> {
        Some(format!(
            "On holomorphic sections of $S_{{{}}}$ with $r = {}$: \\[D_{{-{i}}}^{{*}}D_{{-{i}}} = {}.\\]\n",
            self.rho,
            latex_rational(&self.r),
            latex_rational(&self.eigenvalue),
            i = self.i
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirRow {
    pub q: u32,
    pub c: Rational,
    pub tilde_c: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirOutput {
    pub schema: String,
    pub rho: HighestWeight,
    pub quadratic: i64,
    pub rows: Vec<CasimirRow>,
    /// Matrix check on the representation; absent when it exceeds the dimension limit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<VerificationReport>,
}

impl CasimirOutput {
    pub fn new(
        rho: &HighestWeight,
        rows: Vec<CasimirRow>,
        check: Option<VerificationReport>,
    ) -> Self {
        CasimirOutput {
            schema: CASIMIR_SCHEMA.into(),
            rho: rho.clone(),
            quadratic: rho.quadratic_casimir(),
            rows,
            check,
        }
    }
}

impl Render for CasimirOutput {
    fn text(&self) -> String {
        let mut s = format!("rho = {}  quadratic = {}\n", self.rho, self.quadratic);
        for r in &self.rows {
            let _ = writeln!(s, "  q = {}  c = {}  c~ = {}", r.q, r.c, r.tilde_c);
        }
        match &self.check {
            Some(c) => {
                let _ = writeln!(
                    s,
                    "matrix check: {} passed, {} failed",
                    c.passed(),
                    c.failed()
                );
            }
            None => s.push_str("matrix check skipped: dimension over limit\n"),
        }
        s
    }

    fn latex(&self) -> Option<String> {
        let mut s = format!("$\\rho = {}$\n\n\\begin{{tabular}}{{ccc}}\n$q$ & $c_q$ & $\\tilde c_q$ \\\\\n\\hline\n", self.rho);
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{} & ${}$ & ${}$ \\\\",
                r.q,
                latex_rational(&r.c),
                latex_rational(&r.tilde_c)
            );
        }
        s.push_str("\\end{tabular}\n");
        Some(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub m_min: usize,
    pub m_max: usize,
    pub bound: i64,
    pub q_max: u32,
    pub suites: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub schema: String,
    pub family: FamilySpec,
    pub weights: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub report: VerificationReport,
}

impl Render for VerifyOutput {
    fn text(&self) -> String {
        format!("{}\n", self.report)
    }
}
