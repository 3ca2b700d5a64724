#![allow(clippy::needless_range_loop)]

use kahlergrad::bochner::{
    bochner_identity, degree_zero_identities, kirchberg_bound, kirchberg_closed_form, weitzenboeck,
};
use kahlergrad::cli::{IdentityOutput, Render, WeightsOutput};
use kahlergrad::envalg::{k_negated, k_recursive, transform_coefficients, KPolynomial};
use kahlergrad::gtrep::{build_representation, evaluate, power_matrices};
use kahlergrad::linalg::{gram_adjoint, spectral_projectors};
use kahlergrad::weights::{
    casimir_eigenvalue, conformal_table, tilde_casimir_eigenvalue, HighestWeight, Sign,
};
use kahlergrad::{Budget, Rational, RationalMatrix};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn any_rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        3 => small_rational(),
        1 => (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d)),
        1 => (i64::MIN..=i64::MIN + 4, prop_oneof![Just(-1i64), Just(1), Just(3)]).prop_map(|(n, d)| Rational::new(n, d)),
    ]
}

fn dominant(max_m: usize, bound: i64) -> impl Strategy<Value = HighestWeight> {
    (1..=max_m).prop_flat_map(move |m| {
        prop::collection::vec(-bound..=bound, m).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            HighestWeight::new(v).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn rational_field_laws(a in any_rational(), b in any_rational(), c in any_rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, Rational::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(&a * a.recip(), Rational::ONE);
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a.clone());
        prop_assert_eq!((&a - &b).is_negative(), a < b);
    }

    #[test]
    fn spectral_projectors_decompose(
        seed in prop::collection::vec(-3i64..=3, 9),
        eig in prop::collection::vec(-2i64..=2, 3),
    ) {
        let s = RationalMatrix::from_fn(3, 3, |i, j| Rational::from_int(seed[3 * i + j] + if i == j { 7 } else { 0 }));
        let Ok(si) = s.inverse() else { return Ok(()) };
        let d = RationalMatrix::diagonal(&eig.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>());
        let a = s.mul(&d).mul(&si);
        let mut values: Vec<Rational> = eig.iter().map(|&x| Rational::from_int(x)).collect();
        values.sort();
        values.dedup();
        let ps = spectral_projectors(&a, &values).unwrap();
        let mut sum = RationalMatrix::zeros(3, 3);
        for p in &ps {
            prop_assert_eq!(p.mul(p), p.clone());
            prop_assert_eq!(a.mul(p), p.mul(&a));
            sum = sum.add(p);
        }
        prop_assert!(sum.is_identity());
    }

    #[test]
    fn gram_adjoint_is_an_involution(
        entries in prop::collection::vec(small_rational(), 6),
        gs in prop::collection::vec(1i64..=9, 3),
        gt in prop::collection::vec(1i64..=9, 2),
    ) {
        let a = RationalMatrix::from_fn(2, 3, |i, j| entries[3 * i + j].clone());
        let gs = RationalMatrix::diagonal(&gs.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>());
        let gt = RationalMatrix::diagonal(&gt.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>());
        let adj = gram_adjoint(&a, &gs, &gt).unwrap();
        prop_assert_eq!(gram_adjoint(&adj, &gt, &gs).unwrap(), a);
    }

    #[test]
    fn contragredient_casimirs(rho in dominant(6, 3)) {
        let dual = rho.dual();
        for q in 0..=2 * rho.m() as u32 {
            prop_assert_eq!(casimir_eigenvalue(&dual, q).unwrap(), tilde_casimir_eigenvalue(&rho, q).unwrap());
        }
    }

    #[test]
    fn gamma_sums(rho in dominant(6, 3)) {
        let m = Rational::from(rho.m());
        for sign in [Sign::Plus, Sign::Minus] {
            let t = conformal_table(&rho, sign).unwrap();
            prop_assert_eq!(t.gammas.iter().sum::<Rational>(), m.clone());
            for i in 1..=rho.m() {
                prop_assert_eq!(t.gamma(i).is_zero(), !t.is_valid(i));
                prop_assert_eq!(t.is_valid(i), rho.shift(sign, i).unwrap().is_some());
            }
        }
        let t = conformal_table(&rho, Sign::Minus).unwrap();
        let first: Rational = t.weights.iter().zip(&t.gammas).map(|(&w, g)| Rational::from_int(w) * g).sum();
        prop_assert_eq!(first, Rational::from_int(rho.sum()));
    }

    #[test]
    fn tensor_dimension_count(rho in dominant(6, 3)) {
        let m = Rational::from(rho.m());
        for sign in [Sign::Plus, Sign::Minus] {
            let total: Rational = (1..=rho.m())
                .filter_map(|i| rho.shift(sign, i).unwrap())
                .map(|s| s.weyl_dimension())
                .sum();
            prop_assert_eq!(total, &m * rho.weyl_dimension());
        }
    }

    #[test]
    fn k_recursion_matches_table(x in prop::collection::vec(small_rational(), 8), n in 0u32..=8) {
        let rec = k_recursive(n, &x);
        prop_assert_eq!(KPolynomial::new(n).eval(&x), rec[n as usize].clone());
        // K_n(x_1, -x_2, x_3, ...) = (-1)^n K_n(-x)
        let alt: Vec<Rational> = x.iter().enumerate().map(|(j, v)| if j % 2 == 0 { v.clone() } else { -v }).collect();
        let neg: Vec<Rational> = x.iter().map(|v| -v).collect();
        prop_assert_eq!(KPolynomial::new(n).eval(&alt), Rational::sign_pow(n) * KPolynomial::new(n).eval(&neg));
    }

    #[test]
    fn transform_coefficients_closed_form(c in prop::collection::vec(small_rational(), 8), q_max in 0u32..=7) {
        let a = transform_coefficients(q_max, &c);
        let k = k_negated(q_max, &c);
        for q in 0..=q_max as usize {
            for p in 0..=q {
                prop_assert_eq!(&a[q][p], &(Rational::sign_pow(q as u32) * &k[q - p]));
                prop_assert_eq!(&a[q][p], &(Rational::sign_pow(p as u32) * &a[q - p][0]));
            }
        }
    }

    #[test]
    fn weitzenboeck_coefficients_nonnegative(rho in dominant(6, 3)) {
        let e = rho.entries();
        match weitzenboeck(&rho) {
            Ok(w) => {
                prop_assert!(e[0] > e[e.len() - 1]);
                prop_assert!(w.minus_coeffs.iter().chain(&w.plus_coeffs).all(|c| !c.is_negative()));
                prop_assert!(w.coeff(Sign::Minus, rho.m()).is_zero());
                prop_assert!(w.coeff(Sign::Plus, 1).is_zero());
            }
            Err(_) => prop_assert_eq!(e[0], e[e.len() - 1]),
        }
    }

    #[test]
    fn degree_zero_is_the_difference(rho in dominant(5, 3)) {
        let zero = degree_zero_identities(&rho).unwrap();
        let mut general = bochner_identity(&rho, 0).unwrap();
        general.label = zero[3].label.clone();
        prop_assert_eq!(&zero[3], &general);
    }

    #[test]
    fn kirchberg_closed_form_holds(m in 2usize..=200) {
        let b = kirchberg_bound(m).unwrap();
        prop_assert_eq!(&b.bound_coefficient, &kirchberg_closed_form(m));
        prop_assert!(b.bound_coefficient > Rational::ONE);
    }

    #[test]
    fn json_round_trips(rho in dominant(4, 3), q in 0u32..=3) {
        let w = WeightsOutput::new(&rho).unwrap();
        let s = w.json();
        let back: WeightsOutput = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back.json(), s);
        let id = IdentityOutput::new(&rho, "degree", Some(q), None, vec![bochner_identity(&rho, q).unwrap()]);
        let s = id.json();
        let back: IdentityOutput = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back.json(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn matrix_power_composition(rho in dominant(3, 2), p in 0u32..=2, q in 0u32..=2) {
        let rep = build_representation(&rho, Budget::default()).unwrap();
        let m = rho.m();
        for tilde in [false, true] {
            let pw = power_matrices(&rep, p + q, tilde);
            for k in 0..m {
                for l in 0..m {
                    let mut acc = RationalMatrix::zeros(rep.dim(), rep.dim());
                    for i in 0..m {
                        acc = acc.add(&pw[p as usize][k][i].mul(&pw[q as usize][i][l]));
                    }
                    prop_assert_eq!(&acc, &pw[(p + q) as usize][k][l]);
                }
            }
        }
        let pbw = kahlergrad::envalg::e_power(0, m - 1, p + q, m, Budget::default()).unwrap();
        prop_assert_eq!(evaluate(&rep, &pbw).unwrap(), power_matrices(&rep, p + q, false)[(p + q) as usize][0][m - 1].clone());
    }

    #[test]
    fn contragredient_matrix_scalars(rho in dominant(3, 2), q in 0u32..=4) {
        let rep = build_representation(&rho, Budget::default()).unwrap();
        let dual = build_representation(&rho.dual(), Budget::default()).unwrap();
        let trace = |r: &kahlergrad::gtrep::Representation, tilde: bool| {
            let pw = power_matrices(r, q, tilde);
            let mut acc = RationalMatrix::zeros(r.dim(), r.dim());
            for k in 0..r.m() {
                acc = acc.add(&pw[q as usize][k][k]);
            }
            acc
        };
        let c = trace(&rep, false);
        let t = trace(&dual, true);
        prop_assert!(c.is_diagonal() && t.is_diagonal());
        prop_assert_eq!(c.get(0, 0), t.get(0, 0));
    }
}
