use super::{build_clifford_system, CliffordError, CliffordSystem};
use crate::envalg::k_negated;
use crate::gtrep::{check_representation, power_matrices};
use crate::linalg::{Rational, RationalMatrix};
use crate::report::VerificationReport;
use crate::weights::{casimir_eigenvalue, tilde_casimir_eigenvalue, Sign};

/// Inverse of the Vandermonde matrix `V[j][i] = w_i^j` in closed form:
/// entry `(i, j)` is `(-1)^{m-j} S_{m-j}(w without w_i) / prod_{j' != i} (w_i - w_j')`
/// with 1-based `j`, where `S_k` is the k-th elementary symmetric polynomial.
pub fn vandermonde_inverse(w: &[i64]) -> RationalMatrix {
    let m = w.len();
    RationalMatrix::from_fn(m, m, |i, j| {
        // elementary symmetric polynomials of the other m - 1 values
        let mut e = vec![Rational::ZERO; m];
        e[0] = Rational::ONE;
        for (jj, &x) in w.iter().enumerate() {
            if jj == i {
                continue;
            }
            for d in (1..m).rev() {
                let prev = e[d - 1].clone();
                e[d] += prev * Rational::from_int(x);
            }
        }
        let k = m - 1 - j;
        let denom: Rational = (0..m)
            .filter(|&jj| jj != i)
            .map(|jj| Rational::from_int(w[i] - w[jj]))
            .product();
        Rational::sign_pow(k as u32) * &e[k] / denom
    })
}

fn sign_tag(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

/// Checks the relations satisfied by one Clifford system: completeness,
/// intertwining with the conformal weights, the moment identities up to
/// `q_max` (and at least `m - 1`), the closed-form Vandermonde inversion,
/// traces, target completeness, the projection formula, equivariance,
/// projector ranks and the target representation axioms.
pub fn verify_system(
    sys: &CliffordSystem,
    q_max: u32,
) -> Result<VerificationReport, CliffordError> {
    let mut rep = VerificationReport::new();
    let m = sys.m();
    let n = sys.source.dim();
    let rho = sys.rho().clone();
    let s = sign_tag(sys.sign);
    let base = format!("rho={rho} sign={s}");
    let id = RationalMatrix::identity(n);
    let zero = RationalMatrix::zeros(n, n);
    let powers_needed = q_max.max(m as u32 - 1);
    let powers = power_matrices(&sys.source, powers_needed, sys.sign == Sign::Plus);
    let pp: Vec<Vec<Vec<RationalMatrix>>> = (1..=m)
        .map(|i| {
            (0..m)
                .map(|k| (0..m).map(|l| sys.pstar_p(i, k, l)).collect())
                .collect()
        })
        .collect();

    // sum_i p_i(u_k)^* p_i(u_l) = delta_kl
    let mut bad = None;
    for k in 0..m {
        for l in 0..m {
            let mut acc = zero.clone();
            for row in &pp {
                acc = acc.add(&row[k][l]);
            }
            if acc != if k == l { id.clone() } else { zero.clone() } {
                bad.get_or_insert((k, l));
            }
        }
    }
    rep.check("completeness", base.clone(), bad.is_none(), || {
        let (k, l) = bad.unwrap();
        format!("k={} l={}", k + 1, l + 1)
    });

    // Moment identities: sum_i w_i^q p^*p(k,l) = pi(e~^q_kl) or pi(e^q_kl).
    let name = match sys.sign {
        Sign::Plus => "moment-identity-tilde",
        Sign::Minus => "moment-identity",
    };
    for q in 0..=q_max {
        let mut bad = None;
        for k in 0..m {
            for l in 0..m {
                let mut acc = zero.clone();
                for (i, row) in pp.iter().enumerate() {
                    acc.add_scaled(&Rational::from_int(sys.table.weights[i]).pow(q), &row[k][l]);
                }
                if acc != powers[q as usize][k][l] {
                    bad.get_or_insert((k, l));
                }
            }
        }
        rep.check(name, format!("{base} q={q}"), bad.is_none(), || {
            let (k, l) = bad.unwrap();
            format!("k={} l={}", k + 1, l + 1)
        });
        let mut tr = zero.clone();
        for (i, row) in pp.iter().enumerate() {
            let wq = Rational::from_int(sys.table.weights[i]).pow(q);
            for (k, rk) in row.iter().enumerate() {
                tr.add_scaled(&wq, &rk[k]);
            }
        }
        let c = match sys.sign {
            Sign::Plus => tilde_casimir_eigenvalue(&rho, q)?,
            Sign::Minus => casimir_eigenvalue(&rho, q)?,
        };
        let ok = tr == RationalMatrix::scalar(n, &c);
        rep.check("moment-trace", format!("{base} q={q}"), ok, || {
            format!("expected scalar {c}")
        });
    }

    // Intertwining: w_{+i} p(e_k) = -sum_l p(e_l) pi(e_kl); w_{-i} p(e_k) = sum_l p(e_l) pi(e_lk).
    for c in sys.components() {
        let mut bad = None;
        for k in 0..m {
            let lhs = c.maps[k].scale(&Rational::from_int(c.weight));
            let mut rhs = RationalMatrix::zeros(c.target.dim(), n);
            for l in 0..m {
                match sys.sign {
                    Sign::Plus => rhs = rhs.sub(&c.maps[l].mul(sys.source.gen(k, l))),
                    Sign::Minus => rhs = rhs.add(&c.maps[l].mul(sys.source.gen(l, k))),
                }
            }
            if lhs != rhs {
                bad.get_or_insert(k);
            }
        }
        rep.check(
            "intertwining",
            format!("{base} i={}", c.index),
            bad.is_none(),
            || format!("k={}", bad.unwrap() + 1),
        );
    }

    // Closed-form Vandermonde inverse against elimination, then each product
    // as a combination of the first m powers.
    let w = &sys.table.weights;
    let vinv = vandermonde_inverse(w);
    let v = RationalMatrix::from_fn(m, m, |j, i| Rational::from_int(w[i]).pow(j as u32));
    let elim = v.inverse()?;
    rep.check("vandermonde-inverse", base.clone(), vinv == elim, || {
        "closed form differs from elimination".into()
    });
    for i in 0..m {
        let mut bad = None;
        for k in 0..m {
            for l in 0..m {
                let mut acc = zero.clone();
                for j in 0..m {
                    acc.add_scaled(vinv.get(i, j), &powers[j][k][l]);
                }
                if acc != pp[i][k][l] {
                    bad.get_or_insert((k, l));
                }
            }
        }
        rep.check(
            "power-expansion",
            format!("{base} i={}", i + 1),
            bad.is_none(),
            || {
                let (k, l) = bad.unwrap();
                format!("k={} l={}", k + 1, l + 1)
            },
        );
    }

    // sum_k p_i^* p_i(k,k) = gamma_i, for valid and invalid i alike.
    for i in 1..=m {
        let mut acc = zero.clone();
        for k in 0..m {
            acc = acc.add(&pp[i - 1][k][k]);
        }
        let g = sys.table.gamma(i);
        rep.check(
            "trace-gamma",
            format!("{base} i={i}"),
            acc == RationalMatrix::scalar(n, g),
            || format!("expected {g}"),
        );
    }

    for c in sys.components() {
        let params = format!("{base} i={}", c.index);
        let r = c.target.dim();

        let mut acc = RationalMatrix::zeros(r, r);
        for k in 0..m {
            acc = acc.add(&c.maps[k].mul(&c.adjoints[k]));
        }
        rep.check(
            "target-completeness",
            params.clone(),
            acc.is_identity(),
            || "sum p p^* is not 1".into(),
        );

        // P[(psi,k),(phi,l)] = (p^*(u_k) p(u_l))[psi,phi]
        let assembled = RationalMatrix::from_fn(n * m, n * m, |x, y| {
            pp[c.index - 1][x % m][y % m].get(x / m, y / m).clone()
        });
        let ok = assembled == c.projector;
        rep.check("projection-formula", params.clone(), ok, || {
            let d = assembled.first_difference(&c.projector).unwrap();
            format!("entry ({},{}): {} vs {}", d.0, d.1, d.2, d.3)
        });

        let mut bad = None;
        for st in 0..m * m {
            let (s_, t_) = (st / m, st % m);
            for k in 0..m {
                let lhs = c
                    .target
                    .gen(s_, t_)
                    .mul(&c.maps[k])
                    .sub(&c.maps[k].mul(sys.source.gen(s_, t_)));
                let mut rhs = RationalMatrix::zeros(r, n);
                for j in 0..m {
                    rhs.add_scaled(sys.aux.gen(s_, t_).get(j, k), &c.maps[j]);
                }
                if lhs != rhs {
                    bad.get_or_insert((s_, t_, k));
                }
            }
        }
        rep.check("equivariance", params.clone(), bad.is_none(), || {
            let (s_, t_, k) = bad.unwrap();
            format!("e{}{} on u{}", s_ + 1, t_ + 1, k + 1)
        });

        let rank = c.projector.rank();
        let dim = c
            .target
            .highest_weight()
            .map(|h| h.weyl_dimension())
            .unwrap_or_default();
        rep.check(
            "projector-rank",
            params.clone(),
            Rational::from(rank) == dim,
            || format!("rank {rank}, expected {dim}"),
        );

        let eig = Rational::from_int(-2 * c.weight);
        let ok = sys.casimir_cross.mul(&c.projector) == c.projector.scale(&eig);
        rep.check("cross-casimir-eigenvalue", params.clone(), ok, || {
            format!("expected {eig}")
        });

        let target_rho = c.target.highest_weight().expect("targets carry weights");
        let aux_c2 = sys
            .aux
            .highest_weight()
            .expect("aux carries weight")
            .quadratic_casimir();
        let predicted = target_rho.quadratic_casimir() - rho.quadratic_casimir() - aux_c2;
        rep.check(
            "cross-casimir-formula",
            params.clone(),
            predicted == -2 * c.weight,
            || format!("c2 difference {predicted}, -2w = {}", -2 * c.weight),
        );

        let sub = check_representation(&c.target);
        for mut res in sub.results {
            res.identity = format!("target-{}", res.identity);
            res.params = format!("{params} {}", res.params);
            rep.results.push(res);
        }
    }
    Ok(rep)
}

/// Cross-sign relations: for `q <= q_max`,
/// `sum_i (w_{+i} - m)^q p_{+i}^*p_{+i}(k,l) = (-1)^q sum_i (sum_p K_{q-p}(-c) w_{-i}^p) p_{-i}^*p_{-i}(l,k)`
/// and the same with signs exchanged and `c` replaced by `c~`. Also reports
/// the rank of the coefficient family.
pub fn verify_cross_relations(
    plus: &CliffordSystem,
    minus: &CliffordSystem,
    q_max: u32,
) -> Result<VerificationReport, CliffordError> {
    let mut rep = VerificationReport::new();
    let rho = plus.rho().clone();
    let m = plus.m();
    let n = plus.source.dim();
    let mi = m as i64;
    let c: Vec<Rational> = (0..=q_max)
        .map(|q| casimir_eigenvalue(&rho, q))
        .collect::<Result<_, _>>()?;
    let ct: Vec<Rational> = (0..=q_max)
        .map(|q| tilde_casimir_eigenvalue(&rho, q))
        .collect::<Result<_, _>>()?;
    let kc = k_negated(q_max, &c);
    let kct = k_negated(q_max, &ct);
    let mut coeff_rows: Vec<Vec<Rational>> = Vec::new();

    for (name, left, right, kk) in [
        ("cross-sign-plus", plus, minus, &kc),
        ("cross-sign-minus", minus, plus, &kct),
    ] {
        for q in 0..=q_max {
            let lc: Vec<Rational> = left
                .table
                .weights
                .iter()
                .map(|&w| Rational::from_int(w - mi).pow(q))
                .collect();
            let rc: Vec<Rational> = right
                .table
                .weights
                .iter()
                .map(|&w| {
                    let s: Rational = (0..=q)
                        .map(|p| &kk[(q - p) as usize] * Rational::from_int(w).pow(p))
                        .sum();
                    Rational::sign_pow(q) * s
                })
                .collect();
            let mut bad = None;
            for k in 0..m {
                for l in 0..m {
                    let mut lhs = RationalMatrix::zeros(n, n);
                    let mut rhs = RationalMatrix::zeros(n, n);
                    for i in 1..=m {
                        lhs.add_scaled(&lc[i - 1], &left.pstar_p(i, k, l));
                        rhs.add_scaled(&rc[i - 1], &right.pstar_p(i, l, k));
                    }
                    if lhs != rhs {
                        bad.get_or_insert((k, l));
                    }
                }
            }
            rep.check(name, format!("rho={rho} q={q}"), bad.is_none(), || {
                let (k, l) = bad.unwrap();
                format!("k={} l={}", k + 1, l + 1)
            });
            // Coefficients over (plus products, minus products), valid shifts only.
            let (pc, mc) = if left.sign == Sign::Plus {
                (&lc, &rc)
            } else {
                (&rc, &lc)
            };
            let sgn = if left.sign == Sign::Plus {
                Rational::ONE
            } else {
                -Rational::ONE
            };
            let mut row = Vec::new();
            for i in plus.table.valid_indices() {
                row.push(&sgn * &pc[i - 1]);
            }
            for i in minus.table.valid_indices() {
                row.push(-&sgn * &mc[i - 1]);
            }
            coeff_rows.push(row);
        }
    }
    let rank = RationalMatrix::from_rows(coeff_rows)?.rank();
    let components = plus.table.valid_indices().len();
    rep.info(
        "cross-sign-rank",
        format!("rho={rho} q<={q_max}"),
        format!("rank {rank} with {components} components per sign"),
    );
    Ok(rep)
}

/// For the component `V_{rho +- mu_i}`, builds the opposite-sign system on it and
/// checks that the map back to `V_rho` is a rescaled adjoint:
/// `p'(u_k)^* p'(u_l) = (1/gamma_i) p(u_k) p(u_l)^*` for all `k, l`.
pub fn verify_adjoint_pair(
    sys: &CliffordSystem,
    i: usize,
) -> Result<VerificationReport, CliffordError> {
    let mut rep = VerificationReport::new();
    let comp = sys.component(i).ok_or(CliffordError::NoComponent {
        sign: sys.sign.symbol(),
        index: i,
    })?;
    let back = build_clifford_system(&comp.target, sys.sign.opposite())?;
    let m = sys.m();
    let params = format!("rho={} sign={} i={i}", sys.rho(), sign_tag(sys.sign));
    let back_ok = back
        .component(i)
        .map(|c| c.target.highest_weight() == Some(sys.rho()))
        .unwrap_or(false);
    rep.check("adjoint-pair-target", params.clone(), back_ok, || {
        "back map does not reach V_rho".into()
    });
    if !back_ok {
        return Ok(rep);
    }
    let lambda = comp.gamma.recip();
    let mut bad = None;
    let mut ratio: Option<Rational> = None;
    for k in 0..m {
        for l in 0..m {
            let lhs = back.pstar_p(i, k, l);
            let rhs = comp.maps[k].mul(&comp.adjoints[l]);
            if lhs != rhs.scale(&lambda) {
                bad.get_or_insert((k, l));
            }
            if ratio.is_none() {
                // first nonzero entry gives the observed |a|^2
                if let Some(pos) = (0..rhs.rows() * rhs.cols())
                    .find(|&x| !rhs.get(x / rhs.cols(), x % rhs.cols()).is_zero())
                {
                    let (r_, c_) = (pos / rhs.cols(), pos % rhs.cols());
                    ratio = Some(lhs.get(r_, c_) / rhs.get(r_, c_));
                }
            }
        }
    }
    rep.check("adjoint-pair", params.clone(), bad.is_none(), || {
        let (k, l) = bad.unwrap();
        format!("k={} l={} expected ratio {lambda}", k + 1, l + 1)
    });
    if let Some(r) = ratio {
        rep.info("adjoint-pair-ratio-squared", params, r.to_string());
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtrep::build_representation;
    use crate::weights::HighestWeight;
    use crate::Budget;

    #[test]
    fn vandermonde_closed_form() {
        let w = [3, -1, 0, 5];
        let v = RationalMatrix::from_fn(4, 4, |j, i| Rational::from_int(w[i]).pow(j as u32));
        assert!(vandermonde_inverse(&w).mul(&v).is_identity());
    }

    #[test]
    fn full_suite_on_small_weight() {
        let rho = HighestWeight::new(vec![1, 0, -1]).unwrap();
        let src = build_representation(&rho, Budget::default()).unwrap();
        let plus = build_clifford_system(&src, Sign::Plus).unwrap();
        let minus = build_clifford_system(&src, Sign::Minus).unwrap();
        let mut rep = verify_system(&plus, 3).unwrap();
        rep.extend(verify_system(&minus, 3).unwrap());
        rep.extend(verify_cross_relations(&plus, &minus, 2).unwrap());
        for sys in [&plus, &minus] {
            for c in sys.components() {
                rep.extend(verify_adjoint_pair(sys, c.index).unwrap());
            }
        }
        assert!(rep.all_pass(), "{rep}");
    }
}
