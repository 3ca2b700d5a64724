//! Irreducible representations of gl(m) in the Gelfand-Tsetlin basis, with an
//! invariant (diagonal, positive) Gram matrix.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::envalg::{Generator, PbwElement};
use crate::linalg::{gram_adjoint, LinalgError, Rational, RationalMatrix};
use crate::report::VerificationReport;
use crate::weights::{casimir_eigenvalue, tilde_casimir_eigenvalue, HighestWeight, WeightError};
use crate::Budget;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GtError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("representation of dimension {dim} exceeds the dimension budget {budget}")]
    DimensionOverBudget { dim: String, budget: u64 },
    #[error("no invariant positive gram: {0}")]
    Gram(String),
    #[error("representation data is inconsistent: {0}")]
    Malformed(String),
    #[error("PBW element of gl({element}) evaluated on a gl({rep}) representation")]
    AlgebraMismatch { element: usize, rep: usize },
}

/// Gelfand-Tsetlin pattern; `rows[r]` has `r + 1` entries and the last row is
/// the highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GtPattern {
    pub rows: Vec<Vec<i64>>,
}

impl GtPattern {
    /// Entry `lambda_{k i}` with 1-based row `k` and 1-based position `i`.
    pub fn entry(&self, k: usize, i: usize) -> i64 {
        self.rows[k - 1][i - 1]
    }

    /// Eigenvalue of `e_kk` (1-based `k`): row sum of `k` minus row sum of `k - 1`.
    pub fn weight(&self, k: usize) -> i64 {
        let s = |r: usize| {
            if r == 0 {
                0
            } else {
                self.rows[r - 1].iter().sum::<i64>()
            }
        };
        s(k) - s(k - 1)
    }

    fn shifted(&self, k: usize, i: usize, delta: i64) -> GtPattern {
        let mut p = self.clone();
        p.rows[k - 1][i - 1] += delta;
        p
    }

    fn is_valid(&self) -> bool {
        (1..self.rows.len()).all(|r| {
            let (lo, hi) = (&self.rows[r - 1], &self.rows[r]);
            (0..lo.len()).all(|i| hi[i] >= lo[i] && lo[i] >= hi[i + 1])
        })
    }
}

impl fmt::Display for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .rev()
            .map(|r| {
                r.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

/// All patterns with top row `rho`, the highest-weight pattern first.
pub fn enumerate_patterns(rho: &HighestWeight) -> Vec<GtPattern> {
    fn rec(rows: &mut Vec<Vec<i64>>, out: &mut Vec<GtPattern>) {
        let upper = rows.last().expect("top row present").clone();
        if upper.len() == 1 {
            let mut r = rows.clone();
            r.reverse();
            out.push(GtPattern { rows: r });
            return;
        }
        let n = upper.len() - 1;
        let mut cur = vec![0; n];
        fn fill(
            i: usize,
            upper: &[i64],
            cur: &mut Vec<i64>,
            rows: &mut Vec<Vec<i64>>,
            out: &mut Vec<GtPattern>,
        ) {
            if i == cur.len() {
                rows.push(cur.clone());
                rec(rows, out);
                rows.pop();
                return;
            }
            let mut v = upper[i];
            while v >= upper[i + 1] {
                cur[i] = v;
                fill(i + 1, upper, cur, rows, out);
                v -= 1;
            }
        }
        fill(0, &upper, &mut cur, rows, out);
    }
    let mut out = Vec::new();
    rec(&mut vec![rho.entries().to_vec()], &mut out);
    out
}

/// A finite-dimensional representation of gl(m) with a diagonal positive
/// invariant Gram matrix, i.e. `gram_adjoint(pi(e_kl)) = pi(e_lk)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    m: usize,
    highest_weight: Option<HighestWeight>,
    gens: Vec<RationalMatrix>,
    gram: Vec<Rational>,
    basis: Option<Vec<GtPattern>>,
}

impl Representation {
    /// Assembles a representation from generator matrices (indexed `k * m + l`)
    /// and a diagonal gram, checking shapes and positivity only.
    pub fn from_parts(
        m: usize,
        highest_weight: Option<HighestWeight>,
        gens: Vec<RationalMatrix>,
        gram: Vec<Rational>,
    ) -> Result<Self, GtError> {
        let n = gram.len();
        if gens.len() != m * m {
            return Err(GtError::Malformed(format!(
                "expected {} generators, got {}",
                m * m,
                gens.len()
            )));
        }
        if let Some(g) = gens.iter().find(|g| g.rows() != n || g.cols() != n) {
            return Err(GtError::Malformed(format!(
                "generator of shape {}x{} in dimension {n}",
                g.rows(),
                g.cols()
            )));
        }
        if let Some((i, v)) = gram.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(GtError::Gram(format!("entry {i} is {v}")));
        }
        Ok(Representation {
            m,
            highest_weight,
            gens,
            gram,
            basis: None,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn highest_weight(&self) -> Option<&HighestWeight> {
        self.highest_weight.as_ref()
    }

    /// `pi(e_kl)`, 0-based.
    pub fn gen(&self, k: usize, l: usize) -> &RationalMatrix {
        &self.gens[k * self.m + l]
    }

    pub fn gens(&self) -> &[RationalMatrix] {
        &self.gens
    }

    pub fn gram_diag(&self) -> &[Rational] {
        &self.gram
    }

    pub fn gram(&self) -> RationalMatrix {
        RationalMatrix::diagonal(&self.gram)
    }

    pub fn basis(&self) -> Option<&[GtPattern]> {
        self.basis.as_deref()
    }

    /// Adjoint of `a: self -> target` with respect to both grams.
    pub fn adjoint_to(
        &self,
        a: &RationalMatrix,
        target: &Representation,
    ) -> Result<RationalMatrix, LinalgError> {
        gram_adjoint(a, &self.gram(), &target.gram())
    }
}

/// Ratio of the products in the Gelfand-Tsetlin matrix elements, in
/// shifted coordinates `l_ki = lambda_ki - i + 1`.
fn gt_ratio(p: &GtPattern, k: usize, i: usize, other_row: usize) -> Rational {
    let l = |r: usize, j: usize| p.entry(r, j) - j as i64 + 1;
    let lki = l(k, i);
    let num: Rational = (1..=other_row)
        .map(|j| Rational::from_int(lki - l(other_row, j)))
        .product();
    let den: Rational = (1..=k)
        .filter(|&j| j != i)
        .map(|j| Rational::from_int(lki - l(k, j)))
        .product();
    num / den
}

/// Builds the irreducible representation with highest weight `rho` in the
/// Gelfand-Tsetlin basis, together with its invariant Gram matrix normalized
/// to 1 on the highest-weight vector.
pub fn build_representation(
    rho: &HighestWeight,
    budget: Budget,
) -> Result<Representation, GtError> {
    let m = rho.m();
    let dim = rho.weyl_dimension();
    if dim > Rational::from_int(budget.max_dim as i64) {
        return Err(GtError::DimensionOverBudget {
            dim: dim.to_string(),
            budget: budget.max_dim,
        });
    }
    let patterns = enumerate_patterns(rho);
    let n = patterns.len();
    if Rational::from(n) != dim {
        return Err(GtError::Malformed(format!(
            "{n} patterns but dimension {dim}"
        )));
    }
    let index: HashMap<&GtPattern, usize> =
        patterns.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let mut gens = vec![RationalMatrix::zeros(n, n); m * m];
    for (a, p) in patterns.iter().enumerate() {
        for k in 1..=m {
            gens[(k - 1) * m + (k - 1)].set(a, a, Rational::from_int(p.weight(k)));
        }
        for k in 1..m {
            let up = (k - 1) * m + k;
            let down = k * m + (k - 1);
            for i in 1..=k {
                let raised = p.shifted(k, i, 1);
                if raised.is_valid() {
                    let c = -gt_ratio(p, k, i, k + 1);
                    if !c.is_zero() {
                        gens[up].set(index[&raised], a, c);
                    }
                }
                let lowered = p.shifted(k, i, -1);
                if lowered.is_valid() {
                    let c = gt_ratio(p, k, i, k - 1);
                    if !c.is_zero() {
                        gens[down].set(index[&lowered], a, c);
                    }
                }
            }
        }
    }
    for d in 2..m {
        for k in 0..m - d {
            let l = k + d;
            gens[k * m + l] = gens[k * m + l - 1].commutator(&gens[(l - 1) * m + l]);
            gens[l * m + k] = gens[l * m + l - 1].commutator(&gens[(l - 1) * m + k]);
        }
    }

    let gram = invariant_gram(m, n, &gens)?;
    Ok(Representation {
        m,
        highest_weight: Some(rho.clone()),
        gens,
        gram,
        basis: Some(patterns),
    })
}

/// Diagonal gram with `g_0 = 1` making every simple raising operator adjoint to
/// the matching lowering operator, propagated along the basis graph and then
/// checked on all generators.
pub fn invariant_gram(
    m: usize,
    n: usize,
    gens: &[RationalMatrix],
) -> Result<Vec<Rational>, GtError> {
    let mut g: Vec<Option<Rational>> = vec![None; n];
    g[0] = Some(Rational::ONE);
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        let ga = g[a].clone().expect("queued entries are set");
        for k in 0..m.saturating_sub(1) {
            let up = &gens[k * m + k + 1];
            let down = &gens[(k + 1) * m + k];
            for b in 0..n {
                // g_b up[b][a] = g_a down[a][b]
                if g[b].is_none() && !up.get(b, a).is_zero() {
                    g[b] = Some(&ga * down.get(a, b) / up.get(b, a));
                    queue.push_back(b);
                }
                if g[b].is_none() && !down.get(b, a).is_zero() {
                    g[b] = Some(&ga * up.get(a, b) / down.get(b, a));
                    queue.push_back(b);
                }
            }
        }
    }
    let g: Vec<Rational> = g
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| GtError::Gram(format!("basis vector {i} unreachable"))))
        .collect::<Result<_, _>>()?;
    if let Some((i, v)) = g.iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(GtError::Gram(format!("entry {i} is {v}")));
    }
    let gm = RationalMatrix::diagonal(&g);
    for k in 0..m {
        for l in 0..m {
            if gram_adjoint(&gens[k * m + l], &gm, &gm)? != gens[l * m + k] {
                return Err(GtError::Gram(format!(
                    "e{}{} is not adjoint to e{}{}",
                    k + 1,
                    l + 1,
                    l + 1,
                    k + 1
                )));
            }
        }
    }
    Ok(g)
}

/// `pi(x)` for a PBW element, sharing products along common word prefixes.
pub fn evaluate(rep: &Representation, x: &PbwElement) -> Result<RationalMatrix, GtError> {
    if x.m() != rep.m {
        return Err(GtError::AlgebraMismatch {
            element: x.m(),
            rep: rep.m,
        });
    }
    let n = rep.dim();
    let mut out = RationalMatrix::zeros(n, n);
    let mut stack: Vec<(u16, RationalMatrix)> = Vec::new();
    for (mono, c) in x.terms() {
        let common = stack
            .iter()
            .zip(mono)
            .take_while(|((g, _), h)| g == *h)
            .count();
        stack.truncate(common);
        for &g in &mono[common..] {
            let Generator { k, l } = Generator::from_index(g, rep.m);
            let next = match stack.last() {
                Some((_, prev)) => prev.mul(rep.gen(k, l)),
                None => rep.gen(k, l).clone(),
            };
            stack.push((g, next));
        }
        match stack.last() {
            Some((_, prod)) => out.add_scaled(c, prod),
            None => out.add_scaled(c, &RationalMatrix::identity(n)),
        }
    }
    Ok(out)
}

/// `pi(e^q_kl)` (or `pi(e~^q_kl)` when `tilde`) for `q <= q_max`, indexed
/// `[q][k][l]`, computed by matrix recursion without passing through PBW form.
pub fn power_matrices(
    rep: &Representation,
    q_max: u32,
    tilde: bool,
) -> Vec<Vec<Vec<RationalMatrix>>> {
    let (m, n) = (rep.m, rep.dim());
    let id = RationalMatrix::identity(n);
    let zero = RationalMatrix::zeros(n, n);
    let first: Vec<Vec<RationalMatrix>> = (0..m)
        .map(|k| {
            (0..m)
                .map(|l| if k == l { id.clone() } else { zero.clone() })
                .collect()
        })
        .collect();
    let mut out = vec![first];
    for q in 1..=q_max as usize {
        let prev = &out[q - 1];
        let next: Vec<Vec<RationalMatrix>> = (0..m)
            .map(|k| {
                (0..m)
                    .map(|l| {
                        let mut acc = RationalMatrix::zeros(n, n);
                        for (i, p) in prev[k].iter().enumerate() {
                            if p.is_zero() {
                                continue;
                            }
                            if tilde {
                                acc = acc.sub(&p.mul(rep.gen(l, i)));
                            } else {
                                acc = acc.add(&p.mul(rep.gen(i, l)));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        out.push(next);
    }
    out
}

/// Checks the representation axioms: commutation relations, invariance of the
/// gram, the trace of the Cartan part, the highest-weight vector and the Weyl
/// dimension.
pub fn check_representation(rep: &Representation) -> VerificationReport {
    let mut report = VerificationReport::new();
    let m = rep.m;
    let n = rep.dim();
    let params = match &rep.highest_weight {
        Some(w) => format!("rho={w}"),
        None => format!("dim={n}"),
    };

    let mut bad = None;
    'outer: for k in 0..m {
        for l in 0..m {
            for s in 0..m {
                for t in 0..m {
                    let lhs = rep.gen(k, l).commutator(rep.gen(s, t));
                    let mut rhs = RationalMatrix::zeros(n, n);
                    if l == s {
                        rhs = rhs.add(rep.gen(k, t));
                    }
                    if t == k {
                        rhs = rhs.sub(rep.gen(s, l));
                    }
                    if lhs != rhs {
                        bad = Some(format!("[e{}{}, e{}{}]", k + 1, l + 1, s + 1, t + 1));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.check(
        "commutation-relations",
        params.clone(),
        bad.is_none(),
        || bad.clone().unwrap(),
    );

    let g = rep.gram();
    let mut bad = None;
    for k in 0..m {
        for l in 0..m {
            match gram_adjoint(rep.gen(k, l), &g, &g) {
                Ok(a) if a == *rep.gen(l, k) => {}
                _ => {
                    bad.get_or_insert(format!("e{}{}", k + 1, l + 1));
                }
            }
        }
    }
    report.check("gram-invariance", params.clone(), bad.is_none(), || {
        bad.clone().unwrap()
    });

    if let Some(rho) = &rep.highest_weight {
        let mut trace = RationalMatrix::zeros(n, n);
        for k in 0..m {
            trace = trace.add(rep.gen(k, k));
        }
        let expect = RationalMatrix::scalar(n, &Rational::from_int(rho.sum()));
        report.check("cartan-trace", params.clone(), trace == expect, || {
            "sum of e_kk is not scalar".into()
        });

        let mut ok = true;
        for k in (0..m).filter(|_| rep.basis.is_some()) {
            let col = rep.gen(k, k).column(0);
            let expect: Vec<Rational> = (0..n)
                .map(|i| {
                    if i == 0 {
                        Rational::from_int(rho.entries()[k])
                    } else {
                        Rational::ZERO
                    }
                })
                .collect();
            ok &= col == expect;
            for l in k + 1..m {
                ok &= rep.gen(k, l).column(0).iter().all(Rational::is_zero);
            }
        }
        report.check("highest-weight-vector", params.clone(), ok, || {
            "first basis vector is not highest".into()
        });

        let dim = rho.weyl_dimension();
        report.check("weyl-dimension", params, Rational::from(n) == dim, || {
            format!("dim {n} vs {dim}")
        });
    }
    report
}

/// Compares `pi(c_q)` and `pi(c~_q)`, built as traces of matrix powers, with the
/// scalar eigenvalues from the conformal weights, for `q <= q_max`.
pub fn check_casimir_scalars(
    rep: &Representation,
    q_max: u32,
) -> Result<VerificationReport, GtError> {
    let rho = rep
        .highest_weight
        .clone()
        .ok_or_else(|| GtError::Malformed("Casimir check needs a highest weight".into()))?;
    let mut report = VerificationReport::new();
    let n = rep.dim();
    for (tilde, name) in [
        (false, "casimir-eigenvalue"),
        (true, "tilde-casimir-eigenvalue"),
    ] {
        let pw = power_matrices(rep, q_max, tilde);
        for q in 0..=q_max {
            let mut tr = RationalMatrix::zeros(n, n);
            for k in 0..rep.m {
                tr = tr.add(&pw[q as usize][k][k]);
            }
            let expect = if tilde {
                tilde_casimir_eigenvalue(&rho, q)?
            } else {
                casimir_eigenvalue(&rho, q)?
            };
            let ok = tr == RationalMatrix::scalar(n, &expect);
            report.check(name, format!("rho={rho} q={q}"), ok, || {
                format!(
                    "expected {expect}, diagonal {:?}",
                    tr.diagonal_entries().first()
                )
            });
        }
    }
    Ok(report)
}

/// The natural representation on `C^m` (`sign = Plus`, `e_kl -> E_kl`) or its
/// dual (`sign = Minus`, `e_kl -> -E_lk`), in the standard basis with identity gram.
pub fn vector_representation(m: usize, plus: bool) -> Representation {
    let unit = |r: usize, c: usize| {
        RationalMatrix::from_fn(m, m, |i, j| {
            if (i, j) == (r, c) {
                Rational::ONE
            } else {
                Rational::ZERO
            }
        })
    };
    let mut gens = Vec::with_capacity(m * m);
    for k in 0..m {
        for l in 0..m {
            gens.push(if plus { unit(k, l) } else { unit(l, k).neg() });
        }
    }
    let hw = if plus {
        HighestWeight::natural(m)
    } else {
        HighestWeight::conatural(m)
    };
    Representation {
        m,
        highest_weight: Some(hw),
        gens,
        gram: vec![Rational::ONE; m],
        basis: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envalg::Gl;
    use crate::weights::dominant_weights;

    fn hw(v: &[i64]) -> HighestWeight {
        HighestWeight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn natural_rep_of_gl2() {
        let rep = build_representation(&hw(&[1, 0]), Budget::default()).unwrap();
        assert_eq!(rep.dim(), 2);
        assert_eq!(rep.gram_diag(), &[Rational::ONE, Rational::ONE]);
        assert_eq!(rep.gen(0, 1).get(0, 1), &Rational::ONE);
        assert_eq!(rep.gen(1, 0).get(1, 0), &Rational::ONE);
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(enumerate_patterns(&hw(&[2, 1, 0])).len(), 8);
        assert_eq!(enumerate_patterns(&hw(&[1, 1, 0, 0])).len(), 6);
        let first = &enumerate_patterns(&hw(&[2, 0, -1]))[0];
        assert_eq!(first.rows, vec![vec![2], vec![2, 0], vec![2, 0, -1]]);
    }

    #[test]
    fn axioms_hold_on_small_family() {
        for m in 1..=3 {
            for rho in dominant_weights(m, -1, 2) {
                let rep = build_representation(&rho, Budget::default()).unwrap();
                let report = check_representation(&rep);
                assert!(report.all_pass(), "{rho}: {report}");
            }
        }
    }

    #[test]
    fn vector_reps_satisfy_axioms() {
        for m in 1..=4 {
            for plus in [true, false] {
                assert!(check_representation(&vector_representation(m, plus)).all_pass());
            }
        }
    }

    #[test]
    fn evaluate_matches_power_matrices() {
        let rep = build_representation(&hw(&[2, 0, -1]), Budget::default()).unwrap();
        let pw = power_matrices(&rep, 3, false);
        let pwt = power_matrices(&rep, 3, true);
        let mut gl = Gl::new(3, Budget::default()).unwrap();
        for q in 0..=3 {
            for (k, l) in [(0, 0), (0, 2), (2, 1)] {
                let e = gl.e_power(k, l, q).unwrap();
                assert_eq!(evaluate(&rep, &e).unwrap(), pw[q as usize][k][l]);
                let et = gl.tilde_e_power(k, l, q).unwrap();
                assert_eq!(evaluate(&rep, &et).unwrap(), pwt[q as usize][k][l]);
            }
        }
    }

    #[test]
    fn dimension_budget() {
        let b = Budget {
            max_dim: 10,
            ..Budget::default()
        };
        assert!(matches!(
            build_representation(&hw(&[2, 0, -2]), b),
            Err(GtError::DimensionOverBudget { .. })
        ));
    }
}
