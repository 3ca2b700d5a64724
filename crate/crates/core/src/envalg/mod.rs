//! The universal enveloping algebra of gl(m): PBW normal forms, the matrix
//! power elements `e^q`, `e~^q`, Casimir elements and the `K` polynomials that
//! relate them.

mod kpoly;
mod pbw;

pub use kpoly::{k_negated, k_recursive, transform_coefficients, KPolynomial};
pub use pbw::{Generator, Gl, Monomial, PbwElement};

use crate::linalg::{binomial, Rational};
use crate::report::VerificationReport;
use crate::Budget;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnvAlgError {
    #[error("gl({0}) is not supported")]
    Rank(usize),
    #[error("generator e({k},{l}) out of range for gl({m}) (0-based)")]
    GeneratorIndex { k: usize, l: usize, m: usize },
    #[error("elements of gl({left}) and gl({right}) cannot be combined")]
    AlgebraMismatch { left: usize, right: usize },
    #[error("term budget of {budget} exceeded; raise it with --budget or KAHLERGRAD_BUDGET")]
    BudgetExceeded { budget: u64 },
}

/// `e^q_kl` in gl(m), 0-based `k`, `l`.
pub fn e_power(
    k: usize,
    l: usize,
    q: u32,
    m: usize,
    budget: Budget,
) -> Result<PbwElement, EnvAlgError> {
    Gl::new(m, budget)?.e_power(k, l, q)
}

/// `e~^q_kl` in gl(m), 0-based `k`, `l`.
pub fn tilde_e_power(
    k: usize,
    l: usize,
    q: u32,
    m: usize,
    budget: Budget,
) -> Result<PbwElement, EnvAlgError> {
    Gl::new(m, budget)?.tilde_e_power(k, l, q)
}

/// Central elements needed to state the transpose relations up to degree
/// `q_max`: the Casimirs and the `K_n` evaluated on them.
pub struct CentralData {
    pub casimir: Vec<PbwElement>,
    pub tilde_casimir: Vec<PbwElement>,
    /// `K_n(-c)` for `n <= q_max + 1`.
    pub k_plain: Vec<PbwElement>,
    /// `K_n(-c~)` for `n <= q_max + 1`.
    pub k_tilde: Vec<PbwElement>,
}

fn k_central(
    gl: &mut Gl,
    cas: &[PbwElement],
    n_max: usize,
) -> Result<Vec<PbwElement>, EnvAlgError> {
    // K_n(-c) = sum_{p<n} K_p(-c) c_{n-p-1}
    let m = gl.m();
    let mut k = vec![PbwElement::one(m)];
    for n in 1..=n_max {
        let mut acc = PbwElement::zero(m);
        for p in 0..n {
            let t = gl.mul(&k[p], &cas[n - p - 1])?;
            acc.add_assign_scaled(&t, &Rational::ONE);
        }
        k.push(acc);
    }
    Ok(k)
}

impl CentralData {
    pub fn new(
        gl: &mut Gl,
        e: &[Vec<Vec<PbwElement>>],
        et: &[Vec<Vec<PbwElement>>],
    ) -> Result<Self, EnvAlgError> {
        let m = gl.m();
        let trace = |t: &Vec<Vec<PbwElement>>| {
            let mut acc = PbwElement::zero(m);
            for (k, row) in t.iter().enumerate() {
                acc.add_assign_scaled(&row[k], &Rational::ONE);
            }
            acc
        };
        let casimir: Vec<PbwElement> = e.iter().map(trace).collect();
        let tilde_casimir: Vec<PbwElement> = et.iter().map(trace).collect();
        let n_max = casimir.len();
        let k_plain = k_central(gl, &casimir, n_max)?;
        let k_tilde = k_central(gl, &tilde_casimir, n_max)?;
        Ok(CentralData {
            casimir,
            tilde_casimir,
            k_plain,
            k_tilde,
        })
    }
}

fn minus_m_pow(m: usize, e: u32) -> Rational {
    Rational::from_int(-(m as i64)).pow(e)
}

/// Symbolic check, in the PBW basis, of the relations between the `e~^q` and
/// the transposed `e^q`, their involuted form, the Casimir relations, the
/// solved form for `e~^q` and `c~_q`, and the supporting recursions, for all
/// `q <= q_max` and all `k, l`.
pub fn verify_transpose_relations(
    m: usize,
    q_max: u32,
    budget: Budget,
) -> Result<VerificationReport, EnvAlgError> {
    let mut gl = Gl::new(m, budget)?;
    let mut rep = VerificationReport::new();
    let e = gl.e_power_table(q_max + 1, false)?;
    let et = gl.e_power_table(q_max + 1, true)?;
    let central = CentralData::new(&mut gl, &e, &et)?;
    let one = Rational::ONE;

    // Casimirs commute with every generator.
    for (name, cas) in [
        ("casimir-central", &central.casimir),
        ("tilde-casimir-central", &central.tilde_casimir),
    ] {
        for (q, c) in cas.iter().enumerate().take(q_max as usize + 1) {
            let mut ok = true;
            let mut witness = String::new();
            'gens: for k in 0..m {
                for l in 0..m {
                    let g = gl.generator(k, l)?;
                    let br = gl.commutator(c, &g)?;
                    if !br.is_zero() {
                        ok = false;
                        witness = format!("[c_{q}, e{}{}] = {br}", k + 1, l + 1);
                        break 'gens;
                    }
                }
            }
            rep.check(name, format!("m={m} q={q}"), ok, || witness);
        }
    }

    for q in 0..=q_max {
        let qi = q as usize;
        let params = format!("m={m} q={q}");

        // The automorphism e_kl -> -e_lk sends e^q to e~^q.
        let mut bad = None;
        for k in 0..m {
            for l in 0..m {
                if gl.involution(&e[qi][k][l])? != et[qi][k][l] {
                    bad.get_or_insert((k, l));
                }
            }
        }
        rep.check(
            "involution-maps-powers",
            params.clone(),
            bad.is_none(),
            || {
                let (k, l) = bad.unwrap();
                format!("k={} l={}", k + 1, l + 1)
            },
        );

        // sum_i e^q_il e_ki = e^{q+1}_kl - m e^q_kl + delta_kl c_q, and the tilde analogue.
        for (name, t, cas) in [
            ("power-recursion", &e, &central.casimir),
            ("tilde-power-recursion", &et, &central.tilde_casimir),
        ] {
            let mut bad = None;
            for k in 0..m {
                for l in 0..m {
                    let mut lhs = PbwElement::zero(m);
                    for i in 0..m {
                        lhs.add_assign_scaled(&gl.mul(&t[qi][i][l], &t[1][k][i])?, &one);
                    }
                    let mut rhs = t[qi + 1][k][l].clone();
                    rhs.add_assign_scaled(&t[qi][k][l], &Rational::from_int(-(m as i64)));
                    if k == l {
                        rhs.add_assign_scaled(&cas[qi], &one);
                    }
                    if lhs != rhs {
                        bad.get_or_insert((k, l, lhs.sub(&rhs)));
                    }
                }
            }
            rep.check(name, params.clone(), bad.is_none(), || {
                let (k, l, d) = bad.clone().unwrap();
                format!("k={} l={} difference {d}", k + 1, l + 1)
            });
        }

        // sum_p C(q,p)(-m)^{q-p} e~^p_kl = (-1)^q sum_p K_{q-p}(-c) e^p_lk and the
        // involuted form with c, e swapped for c~, e~.
        for (name, lhs_t, rhs_t, kk) in [
            ("transpose-expansion", &et, &e, &central.k_plain),
            ("transpose-expansion-involuted", &e, &et, &central.k_tilde),
        ] {
            let mut bad = None;
            for k in 0..m {
                for l in 0..m {
                    let mut lhs = PbwElement::zero(m);
                    let mut rhs = PbwElement::zero(m);
                    for p in 0..=q {
                        let pi = p as usize;
                        lhs.add_assign_scaled(
                            &lhs_t[pi][k][l],
                            &(binomial(q, p) * minus_m_pow(m, q - p)),
                        );
                        let t = gl.mul(&kk[qi - pi], &rhs_t[pi][l][k])?;
                        rhs.add_assign_scaled(&t, &Rational::sign_pow(q));
                    }
                    if lhs != rhs {
                        bad.get_or_insert((k, l, lhs.sub(&rhs)));
                    }
                }
            }
            rep.check(name, params.clone(), bad.is_none(), || {
                let (k, l, d) = bad.clone().unwrap();
                format!("k={} l={} difference {d}", k + 1, l + 1)
            });
        }

        // sum_p C(q,p)(-m)^{q-p} c~_p = (-1)^q K_{q+1}(-c), and symmetrically.
        for (name, cas, kk) in [
            (
                "casimir-transform",
                &central.tilde_casimir,
                &central.k_plain,
            ),
            (
                "casimir-transform-involuted",
                &central.casimir,
                &central.k_tilde,
            ),
        ] {
            let mut lhs = PbwElement::zero(m);
            for p in 0..=q {
                lhs.add_assign_scaled(&cas[p as usize], &(binomial(q, p) * minus_m_pow(m, q - p)));
            }
            let rhs = kk[qi + 1].scale(&Rational::sign_pow(q));
            let ok = lhs == rhs;
            rep.check(name, params.clone(), ok, || {
                format!("difference {}", lhs.sub(&rhs))
            });
        }

        // e~^q_kl = (-1)^q sum_p [sum_{s=p}^q C(q,s)(-m)^{q-s} K_{s-p}(-c)] e^p_lk.
        let mut bad = None;
        for k in 0..m {
            for l in 0..m {
                let mut rhs = PbwElement::zero(m);
                for p in 0..=q {
                    let mut coeff = PbwElement::zero(m);
                    for s in p..=q {
                        coeff.add_assign_scaled(
                            &central.k_plain[(s - p) as usize],
                            &(binomial(q, s) * minus_m_pow(m, q - s)),
                        );
                    }
                    let t = gl.mul(&coeff, &e[p as usize][l][k])?;
                    rhs.add_assign_scaled(&t, &Rational::sign_pow(q));
                }
                if rhs != et[qi][k][l] {
                    bad.get_or_insert((k, l, et[qi][k][l].sub(&rhs)));
                }
            }
        }
        rep.check("tilde-solved-form", params.clone(), bad.is_none(), || {
            let (k, l, d) = bad.clone().unwrap();
            format!("k={} l={} difference {d}", k + 1, l + 1)
        });

        // c~_q = (-1)^q sum_p C(q,p)(-m)^{q-p} K_{p+1}(-c).
        let mut rhs = PbwElement::zero(m);
        for p in 0..=q {
            rhs.add_assign_scaled(
                &central.k_plain[p as usize + 1],
                &(Rational::sign_pow(q) * binomial(q, p) * minus_m_pow(m, q - p)),
            );
        }
        let lhs = &central.tilde_casimir[qi];
        let ok = *lhs == rhs;
        rep.check("tilde-casimir-solved-form", params, ok, || {
            format!("difference {}", lhs.sub(&rhs))
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn casimir_two_of_gl2() {
        let mut gl = Gl::new(2, Budget::default()).unwrap();
        let c1 = gl.casimir(1).unwrap();
        assert_eq!(c1.to_string(), "e11 + e22");
        let c0 = gl.casimir(0).unwrap();
        assert_eq!(c0.as_scalar(), Some(Rational::from_int(2)));
    }

    #[test]
    fn relations_hold_for_gl2() {
        let rep = verify_transpose_relations(2, 3, Budget::default()).unwrap();
        assert!(rep.all_pass(), "{rep}");
    }

    #[test]
    fn free_functions_match_context() {
        let a = tilde_e_power(0, 0, 2, 2, Budget::default()).unwrap();
        let b = Gl::new(2, Budget::default())
            .unwrap()
            .tilde_e_power(0, 0, 2)
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(
            e_power(0, 1, 1, 2, Budget::default()).unwrap().to_string(),
            "e12"
        );
    }
}
