//! Highest weights of gl(m), conformal weights and Casimir eigenvalues.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::Rational;

/// Which family of shifts `rho -> rho + mu_i` (plus) or `rho -> rho - mu_i`
/// (minus) is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("a highest weight needs at least one entry")]
    Empty,
    #[error("weight {0:?} is not dominant (entries must be non-increasing)")]
    NotDominant(Vec<i64>),
    #[error("shift index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("integer overflow in weight arithmetic")]
    Overflow,
    #[error("cannot parse weight `{0}`; expected comma separated integers like 2,1,0")]
    Parse(String),
}

/// Dominant integral weight `rho^1 >= ... >= rho^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct HighestWeight(Vec<i64>);

impl TryFrom<Vec<i64>> for HighestWeight {
    type Error = WeightError;
    fn try_from(v: Vec<i64>) -> Result<Self, WeightError> {
        HighestWeight::new(v)
    }
}

impl From<HighestWeight> for Vec<i64> {
    fn from(w: HighestWeight) -> Vec<i64> {
        w.0
    }
}

pub fn is_dominant(entries: &[i64]) -> bool {
    entries.windows(2).all(|w| w[0] >= w[1])
}

impl HighestWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self, WeightError> {
        if entries.is_empty() {
            return Err(WeightError::Empty);
        }
        if !is_dominant(&entries) {
            return Err(WeightError::NotDominant(entries));
        }
        Ok(HighestWeight(entries))
    }

    /// Weight of the trivial representation of gl(m).
    pub fn trivial(m: usize) -> Self {
        HighestWeight(vec![0; m.max(1)])
    }

    /// Weight `(1, 0, ..., 0)` of the natural representation.
    pub fn natural(m: usize) -> Self {
        let mut v = vec![0; m.max(1)];
        v[0] = 1;
        HighestWeight(v)
    }

    /// Weight `(0, ..., 0, -1)` of the dual of the natural representation.
    pub fn conatural(m: usize) -> Self {
        let mut v = vec![0; m.max(1)];
        let last = v.len() - 1;
        v[last] = -1;
        HighestWeight(v)
    }

    /// `(1, ..., 1, 0, ..., 0)` with `p` ones; the weight of the `p`-th exterior power.
    pub fn exterior(m: usize, p: usize) -> Self {
        HighestWeight((0..m.max(1)).map(|i| if i < p { 1 } else { 0 }).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// The shifted weight for 1-based index `i`, or `None` if it is not dominant.
    pub fn shift(&self, sign: Sign, i: usize) -> Result<Option<HighestWeight>, WeightError> {
        let m = self.m();
        if i == 0 || i > m {
            return Err(WeightError::IndexOutOfRange { index: i, m });
        }
        let mut v = self.0.clone();
        v[i - 1] = v[i - 1]
            .checked_add(sign.as_i64())
            .ok_or(WeightError::Overflow)?;
        Ok(is_dominant(&v).then_some(HighestWeight(v)))
    }

    /// Highest weight of the dual representation, `(-rho^m, ..., -rho^1)`.
    pub fn dual(&self) -> HighestWeight {
        HighestWeight(self.0.iter().rev().map(|x| -x).collect())
    }

    /// Dimension of the irreducible representation, by the Weyl formula.
    pub fn weyl_dimension(&self) -> Rational {
        let m = self.m();
        let mut acc = Rational::ONE;
        for i in 0..m {
            for j in i + 1..m {
                let d = (j - i) as i64;
                acc *= Rational::new(self.0[i] - self.0[j] + d, d);
            }
        }
        acc
    }

    /// Quadratic Casimir eigenvalue `sum_i rho^i (rho^i + m - 2i + 1)`.
    pub fn quadratic_casimir(&self) -> i64 {
        let m = self.m() as i64;
        self.0
            .iter()
            .enumerate()
            .map(|(k, &r)| r * (r + m - 2 * (k as i64 + 1) + 1))
            .sum()
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for HighestWeight {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, WeightError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries: Result<Vec<i64>, _> = t.split(',').map(|p| p.trim().parse::<i64>()).collect();
        HighestWeight::new(entries.map_err(|_| WeightError::Parse(s.to_string()))?)
    }
}

/// Conformal weight for the shift `rho +- mu_i`, with 1-based `i`:
/// `w_{-i} = rho^i + m - i` and `w_{+i} = -rho^i + i - 1`.
pub fn conformal_weight(rho: &HighestWeight, sign: Sign, i: usize) -> Result<i64, WeightError> {
    let m = rho.m();
    if i == 0 || i > m {
        return Err(WeightError::IndexOutOfRange { index: i, m });
    }
    let r = rho.0[i - 1];
    let (m, i) = (m as i64, i as i64);
    let w = match sign {
        Sign::Minus => r.checked_add(m - i),
        Sign::Plus => r.checked_neg().and_then(|x| x.checked_add(i - 1)),
    };
    w.ok_or(WeightError::Overflow)
}

/// Conformal weights with their interpolation coefficients
/// `gamma_i = prod_{j != i} (1 - 1/(w_i - w_j))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformalWeightTable {
    pub rho: HighestWeight,
    pub sign: Sign,
    pub weights: Vec<i64>,
    pub gammas: Vec<Rational>,
    pub valid: Vec<bool>,
}

impl ConformalWeightTable {
    pub fn m(&self) -> usize {
        self.weights.len()
    }

    /// Conformal weight at 1-based index `i`.
    pub fn w(&self, i: usize) -> i64 {
        self.weights[i - 1]
    }

    pub fn gamma(&self, i: usize) -> &Rational {
        &self.gammas[i - 1]
    }

    pub fn is_valid(&self, i: usize) -> bool {
        self.valid[i - 1]
    }

    /// 1-based indices of the shifts that stay dominant.
    pub fn valid_indices(&self) -> Vec<usize> {
        (1..=self.m()).filter(|&i| self.is_valid(i)).collect()
    }
}

pub fn conformal_table(
    rho: &HighestWeight,
    sign: Sign,
) -> Result<ConformalWeightTable, WeightError> {
    let m = rho.m();
    let weights: Vec<i64> = (1..=m)
        .map(|i| conformal_weight(rho, sign, i))
        .collect::<Result<_, _>>()?;
    let gammas = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i)
                .map(|j| Rational::ONE - Rational::new(1, weights[i] - weights[j]))
                .product()
        })
        .collect();
    let valid = (1..=m)
        .map(|i| rho.shift(sign, i).map(|s| s.is_some()))
        .collect::<Result<_, _>>()?;
    Ok(ConformalWeightTable {
        rho: rho.clone(),
        sign,
        weights,
        gammas,
        valid,
    })
}

fn power_sum(table: &ConformalWeightTable, q: u32) -> Rational {
    table
        .weights
        .iter()
        .zip(&table.gammas)
        .map(|(&w, g)| Rational::from_int(w).pow(q) * g)
        .sum()
}

/// Eigenvalue `c_q = sum_i w_{-i}^q gamma_{-i}` of the Casimir element built from
/// the matrix powers `e^q`.
pub fn casimir_eigenvalue(rho: &HighestWeight, q: u32) -> Result<Rational, WeightError> {
    Ok(power_sum(&conformal_table(rho, Sign::Minus)?, q))
}

/// Eigenvalue `c~_q = sum_i w_{+i}^q gamma_{+i}` of the Casimir element built
/// from the transposed matrix powers.
pub fn tilde_casimir_eigenvalue(rho: &HighestWeight, q: u32) -> Result<Rational, WeightError> {
    Ok(power_sum(&conformal_table(rho, Sign::Plus)?, q))
}

/// All dominant weights of length `m` with entries in `lo..=hi`, in descending
/// lexicographic order.
pub fn dominant_weights(m: usize, lo: i64, hi: i64) -> Vec<HighestWeight> {
    fn rec(m: usize, hi: i64, lo: i64, cur: &mut Vec<i64>, out: &mut Vec<HighestWeight>) {
        if cur.len() == m {
            out.push(HighestWeight(cur.clone()));
            return;
        }
        let top = cur.last().copied().unwrap_or(hi).min(hi);
        let mut v = top;
        while v >= lo {
            cur.push(v);
            rec(m, hi, lo, cur, out);
            cur.pop();
            v -= 1;
        }
    }
    let mut out = Vec::new();
    if m > 0 && lo <= hi {
        rec(m, hi, lo, &mut Vec::with_capacity(m), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw(v: &[i64]) -> HighestWeight {
        HighestWeight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conformal_weights_of_natural_rep() {
        let t = conformal_table(&hw(&[1, 0]), Sign::Minus).unwrap();
        assert_eq!(t.weights, vec![2, 0]);
        let t = conformal_table(&hw(&[1, 0]), Sign::Plus).unwrap();
        assert_eq!(t.weights, vec![-1, 1]);
    }

    #[test]
    fn gamma_vanishes_exactly_on_invalid_shifts() {
        for m in 1..=4 {
            for rho in dominant_weights(m, -2, 2) {
                for sign in [Sign::Plus, Sign::Minus] {
                    let t = conformal_table(&rho, sign).unwrap();
                    for i in 1..=m {
                        assert_eq!(t.is_valid(i), !t.gamma(i).is_zero(), "{rho} {sign:?} {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_dominant_and_bad_index() {
        assert!(matches!(
            HighestWeight::new(vec![0, 1]),
            Err(WeightError::NotDominant(_))
        ));
        assert_eq!(HighestWeight::new(vec![]), Err(WeightError::Empty));
        assert_eq!(
            conformal_weight(&hw(&[1, 0]), Sign::Plus, 3),
            Err(WeightError::IndexOutOfRange { index: 3, m: 2 })
        );
        assert!("2,x".parse::<HighestWeight>().is_err());
        assert_eq!("(2, 1,0)".parse::<HighestWeight>().unwrap(), hw(&[2, 1, 0]));
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(hw(&[1, 0]).weyl_dimension(), Rational::from_int(2));
        assert_eq!(hw(&[2, 1, 0]).weyl_dimension(), Rational::from_int(8));
        assert_eq!(hw(&[2, 0, -2]).weyl_dimension(), Rational::from_int(27));
        assert_eq!(hw(&[1, 1, 0, 0]).weyl_dimension(), Rational::from_int(6));
    }

    #[test]
    fn dominant_weight_count() {
        // Multisets of size m from 5 values.
        assert_eq!(dominant_weights(1, -2, 2).len(), 5);
        assert_eq!(dominant_weights(2, -2, 2).len(), 15);
        assert_eq!(dominant_weights(3, -2, 2).len(), 35);
        assert_eq!(dominant_weights(2, -2, 2)[0], hw(&[2, 2]));
    }

    #[test]
    fn quadratic_casimir_of_2_1() {
        assert_eq!(hw(&[2, 1]).quadratic_casimir(), 6);
        assert_eq!(
            casimir_eigenvalue(&hw(&[2, 1]), 2).unwrap(),
            Rational::from_int(6)
        );
    }
}
