use serde::{Deserialize, Serialize};

use super::{build_clifford_system, verify_adjoint_pair, verify_system, CliffordError};
use crate::gtrep::build_representation;
use crate::linalg::{Rational, RationalMatrix};
use crate::report::VerificationReport;
use crate::weights::{conformal_table, HighestWeight, Sign};
use crate::Budget;

/// One of the (at most four) Clifford homomorphisms on `Lambda^{0,p}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorRow {
    pub p: usize,
    pub sign: Sign,
    /// 1-based shift index.
    pub i: usize,
    pub w: i64,
    pub gamma: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorTable {
    pub m: usize,
    pub rows: Vec<SpinorRow>,
}

/// Shift indices carrying a nonzero map on `Lambda^{0,p}`, with the closed forms
/// for `w` and `gamma`. At `p = 0` the index `+1` is `+(p+1)`, and at `p = m`
/// the index `-m` is `-p`; the coinciding entry appears once.
fn closed_forms(m: usize, p: usize) -> Vec<(Sign, usize, i64, Rational)> {
    let (mi, pi) = (m as i64, p as i64);
    let mut rows = Vec::new();
    if p >= 1 {
        rows.push((Sign::Plus, 1, -1, Rational::new(pi * (mi + 1), pi + 1)));
    }
    if p < m {
        rows.push((Sign::Plus, p + 1, pi, Rational::new(mi - pi, pi + 1)));
        rows.push((
            Sign::Minus,
            m,
            0,
            Rational::new((mi + 1) * (mi - pi), mi - pi + 1),
        ));
    }
    if p >= 1 {
        rows.push((Sign::Minus, p, mi - pi + 1, Rational::new(pi, mi - pi + 1)));
    }
    rows
}

/// Conformal weights and `gamma` of the Clifford homomorphisms on each
/// `Lambda^{0,p}`, `p = 0..=m`, computed from the general formulas.
pub fn spinor_table(m: usize) -> Result<SpinorTable, CliffordError> {
    let mut rows = Vec::new();
    for p in 0..=m {
        let rho = HighestWeight::exterior(m, p);
        for sign in [Sign::Plus, Sign::Minus] {
            let t = conformal_table(&rho, sign)?;
            for i in t.valid_indices() {
                rows.push(SpinorRow {
                    p,
                    sign,
                    i,
                    w: t.w(i),
                    gamma: t.gamma(i).clone(),
                });
            }
        }
    }
    Ok(SpinorTable { m, rows })
}

/// Checks the spinor model for `m`: the weight table against its closed forms,
/// the Clifford relation, the contraction identity, the creation identity,
/// the full Clifford suite (which includes the projection formulas) and the
/// adjoint relation between creation and contraction.
pub fn verify_spinor_model(m: usize, budget: Budget) -> Result<VerificationReport, CliffordError> {
    let mut rep = VerificationReport::new();
    for p in 0..=m {
        let rho = HighestWeight::exterior(m, p);
        let params = format!("m={m} p={p}");

        let expected = closed_forms(m, p);
        let mut table_ok = true;
        let mut witness = String::new();
        for sign in [Sign::Plus, Sign::Minus] {
            let t = conformal_table(&rho, sign)?;
            for i in 1..=m {
                match expected.iter().find(|e| e.0 == sign && e.1 == i) {
                    Some((_, _, w, g)) => {
                        if t.w(i) != *w || t.gamma(i) != g {
                            table_ok = false;
                            witness =
                                format!("{}{i}: w={} gamma={}", sign.symbol(), t.w(i), t.gamma(i));
                        }
                    }
                    None => {
                        if !t.gamma(i).is_zero() {
                            table_ok = false;
                            witness =
                                format!("{}{i}: gamma={} should vanish", sign.symbol(), t.gamma(i));
                        }
                    }
                }
            }
        }
        rep.check("spinor-table", params.clone(), table_ok, || witness);

        let src = build_representation(&rho, budget)?;
        let plus = build_clifford_system(&src, Sign::Plus)?;
        let minus = build_clifford_system(&src, Sign::Minus)?;
        let n = src.dim();
        let zero = RationalMatrix::zeros(n, n);
        let (mi, pi) = (m as i64, p as i64);
        let creation = |k: usize, l: usize| {
            if p < m {
                plus.pstar_p(p + 1, k, l)
            } else {
                zero.clone()
            }
        };
        let contraction = |k: usize, l: usize| {
            if p >= 1 {
                minus.pstar_p(p, k, l)
            } else {
                zero.clone()
            }
        };

        // (p+1) p_{+(p+1)}^*(k) p_{+(p+1)}(l) + (m-p+1) p_{-p}^*(l) p_{-p}(k) = delta_kl
        let mut bad = None;
        for k in 0..m {
            for l in 0..m {
                let lhs = creation(k, l)
                    .scale(&Rational::from_int(pi + 1))
                    .add(&contraction(l, k).scale(&Rational::from_int(mi - pi + 1)));
                let want = if k == l {
                    RationalMatrix::identity(n)
                } else {
                    zero.clone()
                };
                if lhs != want {
                    bad.get_or_insert((k, l));
                }
            }
        }
        rep.check(
            "spinor-clifford-relation",
            params.clone(),
            bad.is_none(),
            || {
                let (k, l) = bad.unwrap();
                format!("k={} l={}", k + 1, l + 1)
            },
        );

        // (m-p+1) p_{-p}^*(k) p_{-p}(l) = pi(e_kl)
        let mut bad = None;
        for k in 0..m {
            for l in 0..m {
                if contraction(k, l).scale(&Rational::from_int(mi - pi + 1)) != *src.gen(k, l) {
                    bad.get_or_insert((k, l));
                }
            }
        }
        rep.check("spinor-contraction", params.clone(), bad.is_none(), || {
            let (k, l) = bad.unwrap();
            format!("k={} l={}", k + 1, l + 1)
        });

        // -p_{+1}^*p_{+1}(k,l) + p p_{+(p+1)}^*p_{+(p+1)}(k,l) = -pi(e_lk), for p >= 1
        if p >= 1 {
            let mut bad = None;
            for k in 0..m {
                for l in 0..m {
                    let lhs = creation(k, l)
                        .scale(&Rational::from_int(pi))
                        .sub(&plus.pstar_p(1, k, l));
                    if lhs != src.gen(l, k).neg() {
                        bad.get_or_insert((k, l));
                    }
                }
            }
            rep.check("spinor-creation", params.clone(), bad.is_none(), || {
                let (k, l) = bad.unwrap();
                format!("k={} l={}", k + 1, l + 1)
            });
        }

        rep.extend(verify_system(&plus, 1)?);
        rep.extend(verify_system(&minus, 1)?);
        if p < m {
            rep.extend(verify_adjoint_pair(&plus, p + 1)?);
        }
        if p >= 1 {
            rep.extend(verify_adjoint_pair(&minus, p)?);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_cover_valid_shifts() {
        let t = spinor_table(3).unwrap();
        for p in 0..=3 {
            let got: Vec<(Sign, usize)> = t
                .rows
                .iter()
                .filter(|r| r.p == p)
                .map(|r| (r.sign, r.i))
                .collect();
            let mut want: Vec<(Sign, usize)> =
                closed_forms(3, p).iter().map(|e| (e.0, e.1)).collect();
            want.sort();
            let mut got = got;
            got.sort();
            assert_eq!(got, want, "p = {p}");
        }
    }

    #[test]
    fn spinor_model_m2() {
        let rep = verify_spinor_model(2, Budget::default()).unwrap();
        assert!(rep.all_pass(), "{rep}");
    }
}
