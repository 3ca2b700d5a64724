use serde::{Deserialize, Serialize};

use crate::linalg::Rational;

/// The polynomial `K_n(x_1, ..., x_n)`, the coefficient of `z^n` in
/// `1 / (1 + x_1 z + x_2 z^2 + ...)`, stored as its multinomial expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KPolynomial {
    pub n: u32,
    /// `(exponents, coefficient)` where `exponents[j]` is the power of `x_{j+1}`.
    pub terms: Vec<(Vec<u32>, Rational)>,
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).map(Rational::from_int).product()
}

fn partitions(n: u32, part: u32, exps: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    // Distribute the remaining weight `n` over parts of size `part..`.
    if n == 0 {
        out.push(exps.clone());
        return;
    }
    if part as usize > exps.len() {
        return;
    }
    let mut k = 0;
    while k * part <= n {
        exps[part as usize - 1] = k;
        partitions(n - k * part, part + 1, exps, out);
        k += 1;
    }
    exps[part as usize - 1] = 0;
}

impl KPolynomial {
    /// Expansion `sum (i_1 + ... + i_n)! / (i_1! ... i_n!) (-x_1)^{i_1} ... (-x_n)^{i_n}`
    /// over `i_1 + 2 i_2 + ... + n i_n = n`.
    pub fn new(n: u32) -> Self {
        let mut exps_list = Vec::new();
        partitions(n, 1, &mut vec![0; n as usize], &mut exps_list);
        let terms = exps_list
            .into_iter()
            .map(|exps| {
                let total: u32 = exps.iter().sum();
                let denom: Rational = exps.iter().map(|&i| factorial(i)).product();
                (exps, Rational::sign_pow(total) * factorial(total) / denom)
            })
            .collect();
        KPolynomial { n, terms }
    }

    /// Evaluates at `x = (x_1, x_2, ...)`; missing entries count as zero.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(exps, c)| {
                let mut v = c.clone();
                for (j, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        v *= x.get(j).cloned().unwrap_or_default().pow(e);
                    }
                }
                v
            })
            .sum()
    }

    /// `K_n(-c)`, that is `x_p = -c_{p-1}`, with `c = (c_0, c_1, ...)`.
    pub fn eval_negated(&self, c: &[Rational]) -> Rational {
        let x: Vec<Rational> = c.iter().map(|v| -v).collect();
        self.eval(&x)
    }
}

/// `K_0, ..., K_{n_max}` at `x` through `K_q = -sum_{p<q} K_p x_{q-p}`.
pub fn k_recursive(n_max: u32, x: &[Rational]) -> Vec<Rational> {
    let xv = |p: usize| x.get(p - 1).cloned().unwrap_or_default();
    let mut k = vec![Rational::ONE];
    for q in 1..=n_max as usize {
        let v: Rational = (0..q).map(|p| &k[p] * &xv(q - p)).sum();
        k.push(-v);
    }
    k
}

/// `K_0(-c), ..., K_{n_max}(-c)`.
pub fn k_negated(n_max: u32, c: &[Rational]) -> Vec<Rational> {
    let x: Vec<Rational> = c.iter().map(|v| -v).collect();
    k_recursive(n_max, &x)
}

/// Coefficients `a[q][p]` of the binomial transform of `e~` in terms of
/// transposed `e` powers, by the recursion `a_{0,0} = 1`,
/// `a_{q,p} = -a_{q-1,p-1}` and `a_{q,0} = -sum_p a_{q-1,p} c_p`.
pub fn transform_coefficients(q_max: u32, c: &[Rational]) -> Vec<Vec<Rational>> {
    let cv = |p: usize| c.get(p).cloned().unwrap_or_default();
    let mut a: Vec<Vec<Rational>> = vec![vec![Rational::ONE]];
    for q in 1..=q_max as usize {
        let prev = &a[q - 1];
        let mut row = vec![Rational::ZERO; q + 1];
        row[0] = -prev
            .iter()
            .enumerate()
            .map(|(p, v)| v * &cv(p))
            .sum::<Rational>();
        for p in 1..=q {
            row[p] = -&prev[p - 1];
        }
        a.push(row);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn first_polynomials() {
        let x = [r(2), r(3), r(5)];
        let (x1, x2, x3) = (r(2), r(3), r(5));
        assert_eq!(KPolynomial::new(0).eval(&x), r(1));
        assert_eq!(KPolynomial::new(1).eval(&x), -&x1);
        assert_eq!(KPolynomial::new(2).eval(&x), &x1 * &x1 - &x2);
        assert_eq!(
            KPolynomial::new(3).eval(&x),
            -(&x1 * &x1 * &x1) + r(2) * &x1 * &x2 - &x3
        );
    }

    #[test]
    fn table_matches_recursion() {
        let x = [r(1), r(-2), Rational::new(1, 3), r(4), r(-1), r(7)];
        let rec = k_recursive(6, &x);
        for n in 0..=6 {
            assert_eq!(KPolynomial::new(n).eval(&x), rec[n as usize], "n = {n}");
        }
    }

    #[test]
    fn negated_is_positive_multinomial() {
        // K_1(-c) = c_0, K_2(-c) = c_0^2 + c_1.
        let c = [r(3), r(5)];
        let k = KPolynomial::new(2);
        assert_eq!(KPolynomial::new(1).eval_negated(&c), r(3));
        assert_eq!(k.eval_negated(&c), r(14));
    }

    #[test]
    fn term_counts_are_partition_numbers() {
        let counts: Vec<usize> = (0..=7).map(|n| KPolynomial::new(n).terms.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
    }
}
