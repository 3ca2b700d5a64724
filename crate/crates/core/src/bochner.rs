//! Coefficients of the Bochner identities for Kählerian gradients, with
//! curvature and Laplacian terms carried as formal tokens, and the scalar
//! evaluators derived from them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::CliffordSystem;
use crate::envalg::k_negated;
use crate::linalg::{binomial, Rational, RationalMatrix};
use crate::report::VerificationReport;
use crate::weights::{
    casimir_eigenvalue, conformal_table, tilde_casimir_eigenvalue, ConformalWeightTable,
    HighestWeight, Sign, WeightError,
};

pub const IDENTITY_SCHEMA: &str = "kahlergrad.identity/1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BochnerError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("highest weight {0} has rho^1 = rho^m: the bundle has rank 1 and the Weitzenboeck formula needs rank at least 2")]
    RankOne(HighestWeight),
    #[error("no gradient D_-{index} on {rho}: the shifted weight is not dominant")]
    NoGradient { rho: HighestWeight, index: usize },
    #[error("degree p = {p} out of range 0..={m}")]
    DegreeOutOfRange { p: usize, m: usize },
    #[error("m must be at least {min}, got {m}")]
    DimensionTooSmall { m: usize, min: usize },
    #[error("cannot combine identities on different weights {0} and {1}")]
    WeightMismatch(HighestWeight, HighestWeight),
    #[error("unknown token '{0}'")]
    UnknownToken(String),
}

/// Formal operator or endomorphism symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    /// `nabla^* nabla`
    ConnectionLaplacian,
    /// `nabla^{1,0 *} nabla^{1,0}`
    HolomorphicLaplacian,
    /// `nabla^{0,1 *} nabla^{0,1}`
    AntiholomorphicLaplacian,
    /// `dbar dbar^*`
    DbarDbarStar,
    /// `dbar^* dbar`
    DbarStarDbar,
    /// Curvature endomorphism `R^p`.
    Curvature(u32),
    /// Scalar curvature `kappa`.
    ScalarCurvature,
}

impl Token {
    pub fn latex(&self) -> String {
        match self {
            Token::ConnectionLaplacian => r"\nabla^{*}\nabla".into(),
            Token::HolomorphicLaplacian => r"\nabla^{1,0\,*}\nabla^{1,0}".into(),
            Token::AntiholomorphicLaplacian => r"\nabla^{0,1\,*}\nabla^{0,1}".into(),
            Token::DbarDbarStar => r"\bar\partial\bar\partial^{*}".into(),
            Token::DbarStarDbar => r"\bar\partial^{*}\bar\partial".into(),
            Token::Curvature(p) => format!("R^{{{p}}}"),
            Token::ScalarCurvature => r"\kappa".into(),
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::ConnectionLaplacian => f.write_str("nabla*nabla"),
            Token::HolomorphicLaplacian => f.write_str("nabla10*nabla10"),
            Token::AntiholomorphicLaplacian => f.write_str("nabla01*nabla01"),
            Token::DbarDbarStar => f.write_str("dbar dbar*"),
            Token::DbarStarDbar => f.write_str("dbar* dbar"),
            Token::Curvature(p) => write!(f, "R^{p}"),
            Token::ScalarCurvature => f.write_str("kappa"),
        }
    }
}

impl FromStr for Token {
    type Err = BochnerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "nabla*nabla" => Token::ConnectionLaplacian,
            "nabla10*nabla10" => Token::HolomorphicLaplacian,
            "nabla01*nabla01" => Token::AntiholomorphicLaplacian,
            "dbar dbar*" => Token::DbarDbarStar,
            "dbar* dbar" => Token::DbarStarDbar,
            "kappa" => Token::ScalarCurvature,
            _ => match s.strip_prefix("R^").and_then(|p| p.parse().ok()) {
                Some(p) => Token::Curvature(p),
                None => return Err(BochnerError::UnknownToken(s.to_string())),
            },
        })
    }
}

impl Serialize for Token {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Token {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub token: Token,
    pub coeff: Rational,
}

impl Term {
    pub fn new(token: Token, coeff: impl Into<Rational>) -> Self {
        Term {
            token,
            coeff: coeff.into(),
        }
    }
}

fn normalize_terms(terms: impl IntoIterator<Item = Term>) -> Vec<Term> {
    let mut acc: BTreeMap<Token, Rational> = BTreeMap::new();
    for t in terms {
        *acc.entry(t.token).or_default() += t.coeff;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(token, coeff)| Term { token, coeff })
        .collect()
}

/// A linear relation
/// `sum_i a_i D_{-i}^* D_{-i} + sum_i b_i D_{+i}^* D_{+i} + (operator terms) = (curvature terms)`.
///
/// Coefficients are indexed by `i - 1`. Entries at shifts that leave the
/// dominant chamber are kept; the corresponding operators vanish, which the
/// `*_valid` flags record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BochnerIdentity {
    pub label: String,
    pub rho: HighestWeight,
    /// Degree, for identities taken directly from the degree-`q` family.
    pub q: Option<u32>,
    pub minus_coeffs: Vec<Rational>,
    pub plus_coeffs: Vec<Rational>,
    pub minus_valid: Vec<bool>,
    pub plus_valid: Vec<bool>,
    /// Further operator tokens on the left side.
    pub operator_terms: Vec<Term>,
    /// Right side.
    pub curvature_terms: Vec<Term>,
}

impl BochnerIdentity {
    fn empty(label: &str, rho: &HighestWeight) -> Result<Self, BochnerError> {
        let m = rho.m();
        let minus = conformal_table(rho, Sign::Minus)?;
        let plus = conformal_table(rho, Sign::Plus)?;
        Ok(BochnerIdentity {
            label: label.to_string(),
            rho: rho.clone(),
            q: None,
            minus_coeffs: vec![Rational::ZERO; m],
            plus_coeffs: vec![Rational::ZERO; m],
            minus_valid: minus.valid,
            plus_valid: plus.valid,
            operator_terms: Vec::new(),
            curvature_terms: Vec::new(),
        })
    }

    pub fn m(&self) -> usize {
        self.rho.m()
    }

    pub fn coeffs(&self, sign: Sign) -> &[Rational] {
        match sign {
            Sign::Minus => &self.minus_coeffs,
            Sign::Plus => &self.plus_coeffs,
        }
    }

    fn coeffs_mut(&mut self, sign: Sign) -> &mut Vec<Rational> {
        match sign {
            Sign::Minus => &mut self.minus_coeffs,
            Sign::Plus => &mut self.plus_coeffs,
        }
    }

    pub fn valid(&self, sign: Sign) -> &[bool] {
        match sign {
            Sign::Minus => &self.minus_valid,
            Sign::Plus => &self.plus_valid,
        }
    }

    /// Coefficient of `D_{sign i}^* D_{sign i}`, 1-based `i`.
    pub fn coeff(&self, sign: Sign, i: usize) -> &Rational {
        &self.coeffs(sign)[i - 1]
    }

    pub fn curvature(&self, token: Token) -> Rational {
        self.curvature_terms
            .iter()
            .find(|t| t.token == token)
            .map(|t| t.coeff.clone())
            .unwrap_or_default()
    }

    pub fn operator(&self, token: Token) -> Rational {
        self.operator_terms
            .iter()
            .find(|t| t.token == token)
            .map(|t| t.coeff.clone())
            .unwrap_or_default()
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    /// `sum_j s_j * identity_j`, all on the same weight.
    pub fn combine(
        label: &str,
        parts: &[(Rational, &BochnerIdentity)],
    ) -> Result<Self, BochnerError> {
        let rho = &parts.first().expect("at least one identity").1.rho;
        let mut out = Self::empty(label, rho)?;
        let mut ops = Vec::new();
        let mut curv = Vec::new();
        for (s, id) in parts {
            if id.rho != *rho {
                return Err(BochnerError::WeightMismatch(rho.clone(), id.rho.clone()));
            }
            for sign in [Sign::Minus, Sign::Plus] {
                for (a, b) in out.coeffs_mut(sign).iter_mut().zip(id.coeffs(sign)) {
                    *a += s * b;
                }
            }
            ops.extend(
                id.operator_terms
                    .iter()
                    .map(|t| Term::new(t.token, s * &t.coeff)),
            );
            curv.extend(
                id.curvature_terms
                    .iter()
                    .map(|t| Term::new(t.token, s * &t.coeff)),
            );
        }
        out.operator_terms = normalize_terms(ops);
        out.curvature_terms = normalize_terms(curv);
        Ok(out)
    }

    /// Simultaneous substitution of right-side tokens.
    pub fn substitute(&self, rule: impl Fn(Token) -> Option<Vec<Term>>) -> Self {
        let mut out = self.clone();
        let mut terms = Vec::new();
        for t in &self.curvature_terms {
            match rule(t.token) {
                Some(rep) => terms.extend(
                    rep.into_iter()
                        .map(|r| Term::new(r.token, &r.coeff * &t.coeff)),
                ),
                None => terms.push(t.clone()),
            }
        }
        out.curvature_terms = normalize_terms(terms);
        out
    }

    /// Drops the coefficients of operators that vanish.
    pub fn restrict_to_valid(mut self) -> Self {
        for sign in [Sign::Minus, Sign::Plus] {
            let valid = self.valid(sign).to_vec();
            for (c, v) in self.coeffs_mut(sign).iter_mut().zip(valid) {
                if !v {
                    *c = Rational::ZERO;
                }
            }
        }
        self
    }

    /// Rewrites `D_{sign i}^* D_{sign i}` as `token / factor`, where
    /// `token = factor * D_{sign i}^* D_{sign i}`.
    pub fn identify(mut self, sign: Sign, i: usize, token: Token, factor: &Rational) -> Self {
        let c = std::mem::take(&mut self.coeffs_mut(sign)[i - 1]);
        let mut ops = std::mem::take(&mut self.operator_terms);
        ops.push(Term::new(token, c / factor));
        self.operator_terms = normalize_terms(ops);
        self
    }

    /// LaTeX for the identity alone, without math delimiters.
    pub fn to_latex(&self) -> String {
        let mut lhs = Vec::new();
        for sign in [Sign::Minus, Sign::Plus] {
            for (i, c) in self.coeffs(sign).iter().enumerate() {
                let s = sign.symbol();
                lhs.push((
                    c.clone(),
                    format!("D_{{{s}{}}}^{{*}}D_{{{s}{}}}", i + 1, i + 1),
                ));
            }
        }
        lhs.extend(
            self.operator_terms
                .iter()
                .map(|t| (t.coeff.clone(), t.token.latex())),
        );
        let rhs: Vec<_> = self
            .curvature_terms
            .iter()
            .map(|t| (t.coeff.clone(), t.token.latex()))
            .collect();
        format!("{} = {}", latex_sum(&lhs), latex_sum(&rhs))
    }
}

fn latex_coeff(c: &Rational) -> String {
    let a = c.abs();
    if a.is_one() {
        String::new()
    } else if a.is_integer() {
        format!("{a} ")
    } else {
        format!(r"\frac{{{}}}{{{}}} ", a.numer(), a.denom())
    }
}

fn latex_sum(terms: &[(Rational, String)]) -> String {
    let mut out = String::new();
    for (c, sym) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&latex_coeff(c));
        out.push_str(sym);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn text_sum(terms: &[(Rational, String)]) -> String {
    let mut out = String::new();
    for (c, sym) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let a = c.abs();
        if a.is_integer() && !a.is_one() {
            out.push_str(&format!("{a} "));
        } else if !a.is_integer() {
            out.push_str(&format!("({a}) "));
        }
        out.push_str(sym);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for BochnerIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lhs = Vec::new();
        for sign in [Sign::Minus, Sign::Plus] {
            for (i, c) in self.coeffs(sign).iter().enumerate() {
                let s = sign.symbol();
                lhs.push((c.clone(), format!("D{s}{}*D{s}{}", i + 1, i + 1)));
            }
        }
        lhs.extend(
            self.operator_terms
                .iter()
                .map(|t| (t.coeff.clone(), t.token.to_string())),
        );
        let rhs: Vec<_> = self
            .curvature_terms
            .iter()
            .map(|t| (t.coeff.clone(), t.token.to_string()))
            .collect();
        write!(f, "{}: {} = {}", self.label, text_sum(&lhs), text_sum(&rhs))
    }
}

fn tilde_casimirs(rho: &HighestWeight, q: u32) -> Result<Vec<Rational>, BochnerError> {
    Ok((0..=q)
        .map(|p| tilde_casimir_eigenvalue(rho, p))
        .collect::<Result<_, _>>()?)
}

/// The degree-`q` identity:
///
/// ```text
/// sum_i (w_{-i} - m)^q D_{-i}^*D_{-i}
///   + (-1)^{q+1} sum_i (sum_p K_{q-p}(-c~) w_{+i}^p) D_{+i}^*D_{+i}
///   = sum_p C(q,p) (-m)^{q-p} R^p
/// ```
pub fn bochner_identity(rho: &HighestWeight, q: u32) -> Result<BochnerIdentity, BochnerError> {
    let m = rho.m() as i64;
    let mut id = BochnerIdentity::empty(&format!("degree-{q}"), rho)?;
    id.q = Some(q);
    let minus = conformal_table(rho, Sign::Minus)?;
    let plus = conformal_table(rho, Sign::Plus)?;
    let k = k_negated(q, &tilde_casimirs(rho, q)?);
    let sign = Rational::sign_pow(q + 1);
    for i in 1..=rho.m() {
        id.minus_coeffs[i - 1] = Rational::from_int(minus.w(i) - m).pow(q);
        let w = Rational::from_int(plus.w(i));
        let s: Rational = (0..=q).map(|p| &k[(q - p) as usize] * w.pow(p)).sum();
        id.plus_coeffs[i - 1] = &sign * s;
    }
    id.curvature_terms = normalize_terms((0..=q).map(|p| {
        Term::new(
            Token::Curvature(p),
            binomial(q, p) * Rational::from_int(-m).pow(q - p),
        )
    }));
    Ok(id)
}

fn unit_sums(
    rho: &HighestWeight,
    label: &str,
    minus: i64,
    plus: i64,
) -> Result<BochnerIdentity, BochnerError> {
    let mut id = BochnerIdentity::empty(label, rho)?;
    id.minus_coeffs.fill(Rational::from_int(minus));
    id.plus_coeffs.fill(Rational::from_int(plus));
    Ok(id)
}

/// The four degree-0 relations: the holomorphic and antiholomorphic parts of
/// the connection Laplacian, their sum, and their difference `R^0`.
pub fn degree_zero_identities(rho: &HighestWeight) -> Result<Vec<BochnerIdentity>, BochnerError> {
    let mut hol = unit_sums(rho, "holomorphic-part", 1, 0)?;
    hol.curvature_terms = vec![Term::new(Token::HolomorphicLaplacian, 1)];
    let mut anti = unit_sums(rho, "antiholomorphic-part", 0, 1)?;
    anti.curvature_terms = vec![Term::new(Token::AntiholomorphicLaplacian, 1)];
    let mut sum = unit_sums(rho, "sum", 1, 1)?;
    sum.curvature_terms = vec![Term::new(Token::ConnectionLaplacian, 1)];
    let diff = bochner_identity(rho, 0)?.with_label("difference");
    Ok(vec![hol, anti, sum, diff])
}

/// `sum_i w_{-i} D_{-i}^*D_{-i} + w_{+i} D_{+i}^*D_{+i} = R^1`, obtained from the
/// degree-1 identity plus `m` times the degree-0 one.
pub fn degree_one_identity(rho: &HighestWeight) -> Result<BochnerIdentity, BochnerError> {
    let q1 = bochner_identity(rho, 1)?;
    let q0 = bochner_identity(rho, 0)?;
    BochnerIdentity::combine(
        "weighted",
        &[(Rational::ONE, &q1), (Rational::from(rho.m()), &q0)],
    )
}

/// Identities emitted for one degree: the four degree-0 forms at `q = 0`, the
/// general and weighted forms at `q = 1`, the general form otherwise.
pub fn identity_lines(rho: &HighestWeight, q: u32) -> Result<Vec<BochnerIdentity>, BochnerError> {
    match q {
        0 => degree_zero_identities(rho),
        1 => Ok(vec![bochner_identity(rho, 1)?, degree_one_identity(rho)?]),
        _ => Ok(vec![bochner_identity(rho, q)?]),
    }
}

/// The combination of the degree-0 and degree-1 identities in which the top
/// operator `D_{+1}` and the bottom operator `D_{-m}` cancel:
///
/// ```text
/// sum_{i<m} 2(rho^i - rho^m + m - i)/(rho^1 - rho^m) D_{-i}^*D_{-i}
///   + sum_{i>1} 2(rho^1 - rho^i + i - 1)/(rho^1 - rho^m) D_{+i}^*D_{+i}
///   = nabla^*nabla + 2/(rho^1 - rho^m) R^1 - (rho^1 + rho^m)/(rho^1 - rho^m) R^0
/// ```
pub fn weitzenboeck(rho: &HighestWeight) -> Result<BochnerIdentity, BochnerError> {
    let e = rho.entries();
    let m = e.len();
    let (top, bottom) = (e[0], e[m - 1]);
    if top == bottom {
        return Err(BochnerError::RankOne(rho.clone()));
    }
    let d = top - bottom;
    let mut id = BochnerIdentity::empty("weitzenboeck", rho)?;
    for i in 1..m {
        id.minus_coeffs[i - 1] = Rational::new(2 * (e[i - 1] - bottom + (m - i) as i64), d);
    }
    for i in 2..=m {
        id.plus_coeffs[i - 1] = Rational::new(2 * (top - e[i - 1] + i as i64 - 1), d);
    }
    id.curvature_terms = normalize_terms([
        Term::new(Token::ConnectionLaplacian, 1),
        Term::new(Token::Curvature(1), Rational::new(2, d)),
        Term::new(Token::Curvature(0), Rational::new(-(top + bottom), d)),
    ]);
    Ok(id)
}

/// Scalar by which `R^q` acts on a bundle over a manifold of constant
/// holomorphic sectional curvature `r`: `(r/2)(c_q c_1 + c_{q+1})`.
pub fn constant_curvature_scalar(
    rho: &HighestWeight,
    q: u32,
    r: &Rational,
) -> Result<Rational, BochnerError> {
    let c = |p| casimir_eigenvalue(rho, p);
    Ok(r * Rational::new(1, 2) * (c(q)? * c(1)? + c(q + 1)?))
}

/// Eigenvalue of `D_{-i}^*D_{-i}` on holomorphic sections over complex
/// projective space with holomorphic sectional curvature `r`:
/// `(r/2) gamma_{-i} (w_{-i} + sum rho)`.
pub fn cpm_holomorphic_eigenvalue(
    rho: &HighestWeight,
    i: usize,
    r: &Rational,
) -> Result<Rational, BochnerError> {
    let t = conformal_table(rho, Sign::Minus)?;
    if i == 0 || i > rho.m() {
        return Err(WeightError::IndexOutOfRange {
            index: i,
            m: rho.m(),
        }
        .into());
    }
    if !t.is_valid(i) {
        return Err(BochnerError::NoGradient {
            rho: rho.clone(),
            index: i,
        });
    }
    Ok(r * Rational::new(1, 2) * t.gamma(i) * Rational::from_int(t.w(i) + rho.sum()))
}

/// Lower bound `lambda^2 >= (kappa_0 / 4) * bound_coefficient` for the square
/// of a Dirac eigenvalue on a closed spin Kähler manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueBound {
    pub m: usize,
    pub bound_coefficient: Rational,
    /// First `p` attaining the minimum.
    pub witness_p: usize,
}

/// `min_{0 <= p < m} max{(2p+2)/(2p+1), (2m-2p)/(2m-2p-1)}`.
pub fn kirchberg_bound(m: usize) -> Result<EigenvalueBound, BochnerError> {
    if m < 2 {
        return Err(BochnerError::DimensionTooSmall { m, min: 2 });
    }
    let mi = m as i64;
    let mut best: Option<(Rational, usize)> = None;
    for p in 0..m {
        let pi = p as i64;
        let a = Rational::new(2 * pi + 2, 2 * pi + 1);
        let b = Rational::new(2 * mi - 2 * pi, 2 * mi - 2 * pi - 1);
        let v = a.max(b);
        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, p));
        }
    }
    let (bound_coefficient, witness_p) = best.expect("m >= 2");
    Ok(EigenvalueBound {
        m,
        bound_coefficient,
        witness_p,
    })
}

/// `m/(m-1)` for even `m`, `(m+1)/m` for odd `m`.
pub fn kirchberg_closed_form(m: usize) -> Rational {
    let mi = m as i64;
    if m.is_multiple_of(2) {
        Rational::new(mi, mi - 1)
    } else {
        Rational::new(mi + 1, mi)
    }
}

/// Ranks of the coefficient family of degrees `0..=q_max`: over the nonzero
/// gradients alone, and with the curvature tokens appended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRank {
    pub gradients: usize,
    pub operator_rank: usize,
    pub full_rank: usize,
}

pub fn family_rank(rho: &HighestWeight, q_max: u32) -> Result<FamilyRank, BochnerError> {
    let ids = (0..=q_max)
        .map(|q| bochner_identity(rho, q))
        .collect::<Result<Vec<_>, _>>()?;
    let first = &ids[0];
    let cols: Vec<(Sign, usize)> = [Sign::Minus, Sign::Plus]
        .into_iter()
        .flat_map(|s| {
            (1..=rho.m())
                .filter(move |&i| first.valid(s)[i - 1])
                .map(move |i| (s, i))
        })
        .collect();
    let ops = RationalMatrix::from_fn(ids.len(), cols.len(), |r, c| {
        ids[r].coeff(cols[c].0, cols[c].1).clone()
    });
    let full = RationalMatrix::from_fn(ids.len(), cols.len() + ids.len(), |r, c| {
        if c < cols.len() {
            ids[r].coeff(cols[c].0, cols[c].1).clone()
        } else {
            ids[r].curvature(Token::Curvature((c - cols.len()) as u32))
        }
    });
    Ok(FamilyRank {
        gradients: cols.len(),
        operator_rank: ops.rank(),
        full_rank: full.rank(),
    })
}

/// Replaces `R^0` by its scalar value `k kappa / 2` on the line bundle of weight `(k, ..., k)`.
fn line_bundle_curvature(rho: &HighestWeight) -> impl Fn(Token) -> Option<Vec<Term>> + '_ {
    let e = rho.entries();
    let scalar = e.iter().all(|&x| x == e[0]);
    move |t| match t {
        Token::Curvature(0) if scalar => Some(vec![Term::new(
            Token::ScalarCurvature,
            Rational::new(e[0], 2),
        )]),
        _ => None,
    }
}

/// Identities on `Lambda^{0,p}` and on `Lambda^{0,p} (x) sqrt(K)`.
///
/// The plain lines use `R^1 = R^0`; the spin lines add the twist by the
/// square root of the canonical bundle, `R^0 -> R^0 - kappa/4` and
/// `R^1 -> R^1 - R^0/2`. The gradients `D_{-p}` and `D_{+(p+1)}` are then
/// traded for `dbar dbar^* = (m-p+1) D_{-p}^*D_{-p}` and
/// `dbar^* dbar = (p+1) D_{+(p+1)}^*D_{+(p+1)}`.
pub fn dolbeault_identities(m: usize, p: usize) -> Result<Vec<BochnerIdentity>, BochnerError> {
    if p > m {
        return Err(BochnerError::DegreeOutOfRange { p, m });
    }
    let rho = HighestWeight::exterior(m, p);
    let r1_is_r0 = |t| match t {
        Token::Curvature(1) => Some(vec![Term::new(Token::Curvature(0), 1)]),
        _ => None,
    };
    let spin_twist = |t| match t {
        Token::Curvature(0) => Some(vec![
            Term::new(Token::Curvature(0), 1),
            Term::new(Token::ScalarCurvature, Rational::new(-1, 4)),
        ]),
        Token::Curvature(1) => Some(vec![
            Term::new(Token::Curvature(1), 1),
            Term::new(Token::Curvature(0), Rational::new(-1, 2)),
        ]),
        _ => None,
    };
    let to_dbar = |id: BochnerIdentity| {
        let mut id = id;
        if p >= 1 {
            id = id.identify(
                Sign::Minus,
                p,
                Token::DbarDbarStar,
                &Rational::from((m - p + 1) as i64),
            );
        }
        if p < m {
            id = id.identify(
                Sign::Plus,
                p + 1,
                Token::DbarStarDbar,
                &Rational::from((p + 1) as i64),
            );
        }
        id
    };

    let zero = degree_zero_identities(&rho)?;
    let sum = zero[2].clone().restrict_to_valid();
    let diff = zero[3].clone().restrict_to_valid();
    let one = degree_one_identity(&rho)?.restrict_to_valid();
    let (one_r, two, neg) = (Rational::ONE, Rational::from_int(2), Rational::from_int(-1));

    let plain = |id: &BochnerIdentity, label: &str| {
        id.substitute(r1_is_r0)
            .substitute(line_bundle_curvature(&rho))
            .with_label(label)
    };
    let d_sum = plain(&sum, "dolbeault-sum");
    let d_diff = plain(&diff, "dolbeault-difference");
    let d_one = plain(&one, "dolbeault-weighted");
    let d_w = BochnerIdentity::combine(
        "dolbeault-weitzenboeck",
        &[
            (one_r.clone(), &d_sum),
            (two.clone(), &d_one),
            (neg.clone(), &d_diff),
        ],
    )?;
    let d_lap = to_dbar(d_w.clone()).with_label("dolbeault-laplacian");

    let spin = |id: &BochnerIdentity, label: &str| {
        id.substitute(spin_twist)
            .substitute(r1_is_r0)
            .substitute(line_bundle_curvature(&rho))
            .with_label(label)
    };
    let s_sum = spin(&sum, "spin-sum");
    let s_diff = spin(&diff, "spin-difference");
    let s_one = spin(&one, "spin-weighted");
    let s_lich = BochnerIdentity::combine(
        "spin-lichnerowicz",
        &[
            (one_r, &s_sum),
            (two.clone(), &s_one),
            (neg.clone(), &s_diff),
        ],
    )?;
    let s_split = to_dbar(BochnerIdentity::combine(
        "spin-dbar-split",
        &[(two, &s_one), (neg, &s_diff)],
    )?);

    Ok(vec![
        d_sum, d_diff, d_one, d_w, d_lap, s_sum, s_diff, s_one, s_lich, s_split,
    ])
}

/// Checks on the identities for one weight: the Weitzenboeck formula is the
/// stated combination of the degree-0 and degree-1 lines with nonnegative
/// coefficients, and, when Clifford systems are given, every degree-`q`
/// identity with `q <= q_max` holds at the symbol level:
/// `sum_i a_i p_{-i}^*p_{-i}(k,l) + sum_i b_i p_{+i}^*p_{+i}(l,k) = 0`.
pub fn verify_bochner(
    rho: &HighestWeight,
    systems: Option<(&CliffordSystem, &CliffordSystem)>,
    q_max: u32,
) -> Result<VerificationReport, BochnerError> {
    let mut rep = VerificationReport::new();
    let params = format!("rho={rho}");
    let e = rho.entries();
    let m = e.len();
    if e[0] != e[m - 1] {
        let w = weitzenboeck(rho)?;
        let neg = w
            .minus_coeffs
            .iter()
            .chain(&w.plus_coeffs)
            .find(|c| c.is_negative())
            .cloned();
        rep.check(
            "weitzenboeck-nonnegative",
            params.clone(),
            neg.is_none(),
            || format!("coefficient {}", neg.clone().unwrap()),
        );
        let top = conformal_table(rho, Sign::Plus)?.w(1);
        let bottom = conformal_table(rho, Sign::Minus)?.w(m);
        let s = Rational::from_int(top + bottom);
        let zero = degree_zero_identities(rho)?;
        let one = degree_one_identity(rho)?;
        let c = BochnerIdentity::combine(
            "weitzenboeck",
            &[
                (Rational::ONE, &zero[2]),
                (Rational::from_int(-2) / &s, &one),
                (-Rational::from_int(top - bottom) / &s, &zero[3]),
            ],
        )?;
        rep.check("weitzenboeck-combination", params.clone(), c == w, || {
            format!("got {c}, expected {w}")
        });
    }
    if let Some((plus, minus)) = systems {
        let n = plus.source.dim();
        for q in 0..=q_max {
            let id = bochner_identity(rho, q)?;
            let mut bad = None;
            for k in 0..m {
                for l in 0..m {
                    let mut acc = RationalMatrix::zeros(n, n);
                    for i in 1..=m {
                        acc.add_scaled(id.coeff(Sign::Minus, i), &minus.pstar_p(i, k, l));
                        acc.add_scaled(id.coeff(Sign::Plus, i), &plus.pstar_p(i, l, k));
                    }
                    if !acc.is_zero() {
                        bad.get_or_insert((k, l));
                    }
                }
            }
            rep.check(
                "identity-symbol",
                format!("{params} q={q}"),
                bad.is_none(),
                || {
                    let (k, l) = bad.unwrap();
                    format!("k={} l={}", k + 1, l + 1)
                },
            );
        }
    }
    let r = family_rank(rho, q_max.max(m as u32))?;
    rep.info(
        "family-rank",
        format!("{params} q<={}", q_max.max(m as u32)),
        format!(
            "gradients={} operator-rank={} full-rank={}",
            r.gradients, r.operator_rank, r.full_rank
        ),
    );
    Ok(rep)
}

/// Checks for one `m >= 2`: the eigenvalue bound against its closed form, and
/// the Lichnerowicz pattern `2(m-p+1) D_{-p}^*D_{-p} + 2(p+1) D_{+(p+1)}^*D_{+(p+1)}
/// = nabla^*nabla + kappa/4` on every `Lambda^{0,p} (x) sqrt(K)`.
pub fn verify_dolbeault(m: usize) -> Result<VerificationReport, BochnerError> {
    let mut rep = VerificationReport::new();
    let b = kirchberg_bound(m)?;
    let want = kirchberg_closed_form(m);
    rep.check(
        "kirchberg-closed-form",
        format!("m={m}"),
        b.bound_coefficient == want,
        || format!("got {} expected {want}", b.bound_coefficient),
    );
    for p in 0..=m {
        let ids = dolbeault_identities(m, p)?;
        let lich = ids
            .iter()
            .find(|i| i.label == "spin-lichnerowicz")
            .expect("emitted");
        let mut want = BochnerIdentity::empty("spin-lichnerowicz", &lich.rho)?;
        if p >= 1 {
            want.minus_coeffs[p - 1] = Rational::from((2 * (m - p + 1)) as i64);
        }
        if p < m {
            want.plus_coeffs[p] = Rational::from((2 * (p + 1)) as i64);
        }
        want.curvature_terms = vec![
            Term::new(Token::ConnectionLaplacian, 1),
            Term::new(Token::ScalarCurvature, Rational::new(1, 4)),
        ];
        rep.check(
            "spin-lichnerowicz",
            format!("m={m} p={p}"),
            *lich == want,
            || lich.to_string(),
        );
    }
    Ok(rep)
}

/// Conformal weight tables for both signs, for renderers.
pub fn weight_tables(
    rho: &HighestWeight,
) -> Result<(ConformalWeightTable, ConformalWeightTable), BochnerError> {
    Ok((
        conformal_table(rho, Sign::Minus)?,
        conformal_table(rho, Sign::Plus)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw(e: &[i64]) -> HighestWeight {
        HighestWeight::new(e.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn degree_one_on_natural_rep() {
        let id = degree_one_identity(&hw(&[1, 0])).unwrap();
        assert_eq!(id.minus_coeffs, ints(&[2, 0]));
        assert_eq!(id.plus_coeffs, ints(&[-1, 1]));
        assert_eq!(id.curvature_terms, vec![Term::new(Token::Curvature(1), 1)]);
    }

    #[test]
    fn degree_zero_general_form_is_difference() {
        let rho = hw(&[2, 0, -1]);
        let id = bochner_identity(&rho, 0).unwrap();
        assert_eq!(id.minus_coeffs, ints(&[1, 1, 1]));
        assert_eq!(id.plus_coeffs, ints(&[-1, -1, -1]));
        assert_eq!(id.curvature_terms, vec![Term::new(Token::Curvature(0), 1)]);
    }

    #[test]
    fn degree_one_plus_coefficient() {
        let rho = hw(&[2, 1, 0]);
        let id = bochner_identity(&rho, 1).unwrap();
        let plus = conformal_table(&rho, Sign::Plus).unwrap();
        for i in 1..=3 {
            assert_eq!(*id.coeff(Sign::Plus, i), Rational::from_int(3 + plus.w(i)));
        }
    }

    #[test]
    fn weitzenboeck_natural_rep() {
        let id = weitzenboeck(&hw(&[1, 0])).unwrap();
        assert_eq!(id.minus_coeffs, ints(&[4, 0]));
        assert_eq!(id.plus_coeffs, ints(&[0, 4]));
        assert_eq!(
            id.curvature_terms,
            vec![
                Term::new(Token::ConnectionLaplacian, 1),
                Term::new(Token::Curvature(0), -1),
                Term::new(Token::Curvature(1), 2),
            ]
        );
        assert!(matches!(
            weitzenboeck(&hw(&[1, 1])),
            Err(BochnerError::RankOne(_))
        ));
    }

    #[test]
    fn weitzenboeck_is_a_combination() {
        for rho in crate::weights::dominant_weights(3, -1, 2) {
            let Ok(w) = weitzenboeck(&rho) else { continue };
            let t = conformal_table(&rho, Sign::Plus).unwrap().w(1);
            let b = conformal_table(&rho, Sign::Minus).unwrap().w(3);
            let s = Rational::from_int(t + b);
            let zero = degree_zero_identities(&rho).unwrap();
            let one = degree_one_identity(&rho).unwrap();
            let c = BochnerIdentity::combine(
                "weitzenboeck",
                &[
                    (Rational::ONE, &zero[2]),
                    (Rational::from_int(-2) / &s, &one),
                    (-Rational::from_int(t - b) / &s, &zero[3]),
                ],
            )
            .unwrap();
            assert_eq!(c, w, "{rho}");
        }
    }

    #[test]
    fn dolbeault_lines() {
        let (m, p) = (4usize, 2usize);
        let ids = dolbeault_identities(m, p).unwrap();
        let by = |l: &str| ids.iter().find(|i| i.label == l).unwrap().clone();
        let w = by("dolbeault-weitzenboeck");
        assert_eq!(
            *w.coeff(Sign::Minus, p),
            Rational::from((2 * (m - p + 1)) as i64)
        );
        assert_eq!(
            *w.coeff(Sign::Plus, p + 1),
            Rational::from((2 * (p + 1)) as i64)
        );
        assert_eq!(
            w.curvature_terms,
            vec![
                Term::new(Token::ConnectionLaplacian, 1),
                Term::new(Token::Curvature(0), 1)
            ]
        );
        let lap = by("dolbeault-laplacian");
        assert_eq!(lap.operator(Token::DbarDbarStar), Rational::from_int(2));
        assert_eq!(lap.operator(Token::DbarStarDbar), Rational::from_int(2));
        assert!(lap
            .minus_coeffs
            .iter()
            .chain(&lap.plus_coeffs)
            .all(Rational::is_zero));

        let lich = by("spin-lichnerowicz");
        assert_eq!(
            lich.curvature_terms,
            vec![
                Term::new(Token::ConnectionLaplacian, 1),
                Term::new(Token::ScalarCurvature, Rational::new(1, 4))
            ]
        );
        let split = by("spin-dbar-split");
        assert_eq!(
            split.operator(Token::DbarDbarStar),
            Rational::new(2 * 4 - 4 + 1, 4 - 2 + 1)
        );
        assert_eq!(split.operator(Token::DbarStarDbar), Rational::new(5, 3));
        assert_eq!(*split.coeff(Sign::Minus, m), Rational::from_int(-1));
        assert_eq!(*split.coeff(Sign::Plus, 1), Rational::from_int(-1));
        assert_eq!(
            split.curvature_terms,
            vec![Term::new(Token::ScalarCurvature, Rational::new(1, 4))]
        );
    }

    #[test]
    fn spin_split_at_the_ends() {
        let m = 3;
        let ids = dolbeault_identities(m, 0).unwrap();
        let s = ids.iter().find(|i| i.label == "spin-dbar-split").unwrap();
        assert_eq!(s.operator_terms, vec![Term::new(Token::DbarStarDbar, 1)]);
        assert_eq!(*s.coeff(Sign::Minus, m), Rational::from_int(-1));
        assert_eq!(
            s.curvature_terms,
            vec![Term::new(Token::ScalarCurvature, Rational::new(1, 4))]
        );

        let ids = dolbeault_identities(m, m).unwrap();
        let s = ids.iter().find(|i| i.label == "spin-dbar-split").unwrap();
        assert_eq!(s.operator_terms, vec![Term::new(Token::DbarDbarStar, 1)]);
        assert_eq!(*s.coeff(Sign::Plus, 1), Rational::from_int(-1));
        assert_eq!(
            s.curvature_terms,
            vec![Term::new(Token::ScalarCurvature, Rational::new(1, 4))]
        );
        assert!(dolbeault_identities(m, m + 1).is_err());
    }

    #[test]
    fn scalar_evaluators() {
        let rho = hw(&[1, 0]);
        assert_eq!(
            constant_curvature_scalar(&rho, 0, &Rational::from_int(2)).unwrap(),
            Rational::from_int(3)
        );
        assert_eq!(
            cpm_holomorphic_eigenvalue(&rho, 1, &Rational::ONE).unwrap(),
            Rational::new(3, 4)
        );
        // (1,0) - mu_2 = (1,-1) is dominant, so D_{-2} exists
        assert_eq!(
            cpm_holomorphic_eigenvalue(&rho, 2, &Rational::ONE).unwrap(),
            Rational::new(3, 4)
        );
        assert!(matches!(
            cpm_holomorphic_eigenvalue(&hw(&[1, 1]), 1, &Rational::ONE),
            Err(BochnerError::NoGradient { index: 1, .. })
        ));
        assert!(cpm_holomorphic_eigenvalue(&rho, 1, &Rational::ZERO)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn suites_pass_on_small_weights() {
        use crate::clifford::build_clifford_system;
        use crate::gtrep::build_representation;
        for rho in [hw(&[1, 0]), hw(&[1, 0, -1]), hw(&[2, 2, 0])] {
            let src = build_representation(&rho, crate::Budget::default()).unwrap();
            let plus = build_clifford_system(&src, Sign::Plus).unwrap();
            let minus = build_clifford_system(&src, Sign::Minus).unwrap();
            let rep = verify_bochner(&rho, Some((&plus, &minus)), 3).unwrap();
            assert!(rep.all_pass(), "{rep}");
        }
        for m in 2..=5 {
            let rep = verify_dolbeault(m).unwrap();
            assert!(rep.all_pass(), "{rep}");
        }
    }

    #[test]
    fn kirchberg_small() {
        let b = kirchberg_bound(3).unwrap();
        assert_eq!((b.bound_coefficient, b.witness_p), (Rational::new(4, 3), 1));
        assert_eq!(
            kirchberg_bound(2).unwrap().bound_coefficient,
            Rational::from_int(2)
        );
        assert_eq!(
            kirchberg_bound(12).unwrap().bound_coefficient,
            Rational::new(12, 11)
        );
        assert!(kirchberg_bound(1).is_err());
    }

    #[test]
    fn family_rank_is_bounded_by_gradients() {
        let r = family_rank(&hw(&[1, 0, 0]), 4).unwrap();
        assert_eq!(r.gradients, 4);
        assert!(r.operator_rank <= r.gradients);
        assert_eq!(r.full_rank, 5);
    }

    #[test]
    fn latex_and_text() {
        let id = degree_one_identity(&hw(&[1, 0])).unwrap();
        assert_eq!(
            id.to_latex(),
            "2 D_{-1}^{*}D_{-1} - D_{+1}^{*}D_{+1} + D_{+2}^{*}D_{+2} = R^{1}"
        );
        assert_eq!(
            id.to_string(),
            "weighted: 2 D-1*D-1 - D+1*D+1 + D+2*D+2 = R^1"
        );
    }

    #[test]
    fn json_round_trip() {
        let id = weitzenboeck(&hw(&[2, 0, -1])).unwrap();
        let s = serde_json::to_string(&id).unwrap();
        let back: BochnerIdentity = serde_json::from_str(&s).unwrap();
        assert_eq!(back, id);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
