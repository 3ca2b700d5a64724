use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::EnvAlgError;
use crate::linalg::Rational;
use crate::Budget;

/// Basis element `e_kl` of gl(m), 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub k: usize,
    pub l: usize,
}

impl Generator {
    pub fn new(k: usize, l: usize) -> Self {
        Generator { k, l }
    }

    pub fn index(self, m: usize) -> u16 {
        (self.k * m + self.l) as u16
    }

    pub fn from_index(g: u16, m: usize) -> Self {
        let g = g as usize;
        Generator { k: g / m, l: g % m }
    }

    pub fn transposed(self) -> Self {
        Generator {
            k: self.l,
            l: self.k,
        }
    }
}

/// A PBW monomial: generator indices in non-decreasing order.
pub type Monomial = Vec<u16>;

/// Element of U(gl(m)) in PBW normal form with respect to the order
/// `e_11 < e_12 < ... < e_1m < e_21 < ... < e_mm`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwElement {
    m: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl PbwElement {
    pub fn zero(m: usize) -> Self {
        PbwElement {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(m: usize, c: Rational) -> Self {
        let mut e = Self::zero(m);
        e.add_term(Vec::new(), c);
        e
    }

    pub fn one(m: usize) -> Self {
        Self::scalar(m, Rational::ONE)
    }

    pub fn generator(m: usize, k: usize, l: usize) -> Self {
        let mut e = Self::zero(m);
        e.add_term(vec![Generator::new(k, l).index(m)], Rational::ONE);
        e
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &[u16]) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Highest word length among the terms; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    /// Coefficient of the empty word, when the element is a scalar.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::ZERO),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::ONE);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Rational::ONE);
        out
    }

    pub fn add_assign_scaled(&mut self, other: &Self, s: &Rational) {
        assert_eq!(self.m, other.m, "elements of different algebras");
        for (mono, c) in &other.terms {
            self.add_term(mono.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.m);
        }
        PbwElement {
            m: self.m,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect(),
        }
    }

    fn fmt_generator(&self, g: u16) -> String {
        let Generator { k, l } = Generator::from_index(g, self.m);
        if self.m <= 9 {
            format!("e{}{}", k + 1, l + 1)
        } else {
            format!("e({},{})", k + 1, l + 1)
        }
    }

    /// Terms sorted by degree, highest first, then by word.
    pub fn graded_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
        t
    }

    pub fn word_string(&self, mono: &[u16]) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < mono.len() {
            let mut j = i;
            while j < mono.len() && mono[j] == mono[i] {
                j += 1;
            }
            let g = self.fmt_generator(mono[i]);
            parts.push(if j - i > 1 {
                format!("{g}^{}", j - i)
            } else {
                g
            });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (mono, c)) in self.graded_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", self.word_string(mono))?;
            } else {
                write!(f, "{a} {}", self.word_string(mono))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

type Expansion = Vec<(Monomial, Rational)>;

/// Multiplication context for U(gl(m)) with a memo of monomial-times-generator
/// products and a work budget counted in produced terms.
pub struct Gl {
    m: usize,
    budget: Budget,
    work: u64,
    memo: HashMap<(Monomial, u16), Expansion>,
}

impl Gl {
    pub fn new(m: usize, budget: Budget) -> Result<Self, EnvAlgError> {
        if m == 0 || m * m > u16::MAX as usize {
            return Err(EnvAlgError::Rank(m));
        }
        Ok(Gl {
            m,
            budget,
            work: 0,
            memo: HashMap::new(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Terms produced so far, as counted against the budget.
    pub fn work(&self) -> u64 {
        self.work
    }

    fn charge(&mut self, n: usize) -> Result<(), EnvAlgError> {
        self.work += n as u64;
        if self.work > self.budget.max_terms {
            return Err(EnvAlgError::BudgetExceeded {
                budget: self.budget.max_terms,
            });
        }
        Ok(())
    }

    fn check_generator(&self, k: usize, l: usize) -> Result<(), EnvAlgError> {
        if k >= self.m || l >= self.m {
            return Err(EnvAlgError::GeneratorIndex { k, l, m: self.m });
        }
        Ok(())
    }

    pub fn generator(&self, k: usize, l: usize) -> Result<PbwElement, EnvAlgError> {
        self.check_generator(k, l)?;
        Ok(PbwElement::generator(self.m, k, l))
    }

    /// `[e_a, e_b] = delta_jk e_il - delta_li e_kj` for `a = (i,j)`, `b = (k,l)`.
    fn bracket(&self, a: u16, b: u16) -> Vec<(u16, Rational)> {
        let (x, y) = (
            Generator::from_index(a, self.m),
            Generator::from_index(b, self.m),
        );
        let mut out = Vec::with_capacity(2);
        if x.l == y.k {
            out.push((Generator::new(x.k, y.l).index(self.m), Rational::ONE));
        }
        if y.l == x.k {
            out.push((Generator::new(y.k, x.l).index(self.m), -Rational::ONE));
        }
        out
    }

    fn mono_times_gen(&mut self, u: &[u16], g: u16) -> Result<Expansion, EnvAlgError> {
        match u.last() {
            None => return Ok(vec![(vec![g], Rational::ONE)]),
            Some(&last) if last <= g => {
                let mut v = u.to_vec();
                v.push(g);
                return Ok(vec![(v, Rational::ONE)]);
            }
            _ => {}
        }
        let key = (u.to_vec(), g);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let (rest, last) = (&u[..u.len() - 1], u[u.len() - 1]);
        let mut acc = PbwElement::zero(self.m);
        // u g = (rest g) last + rest [last, g]
        for (mono, c) in self.mono_times_gen(rest, g)? {
            for (mono2, c2) in self.mono_times_gen(&mono, last)? {
                acc.add_term(mono2, &c * &c2);
            }
        }
        for (h, ch) in self.bracket(last, g) {
            for (mono2, c2) in self.mono_times_gen(rest, h)? {
                acc.add_term(mono2, &ch * &c2);
            }
        }
        self.charge(acc.len())?;
        let out: Expansion = acc.terms.into_iter().collect();
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    fn check_algebra(&self, x: &PbwElement) -> Result<(), EnvAlgError> {
        if x.m != self.m {
            return Err(EnvAlgError::AlgebraMismatch {
                left: x.m,
                right: self.m,
            });
        }
        Ok(())
    }

    /// `x * e_kl` in normal form.
    pub fn mul_generator(
        &mut self,
        x: &PbwElement,
        k: usize,
        l: usize,
    ) -> Result<PbwElement, EnvAlgError> {
        self.check_algebra(x)?;
        self.check_generator(k, l)?;
        let g = Generator::new(k, l).index(self.m);
        let mut out = PbwElement::zero(self.m);
        for (mono, c) in &x.terms {
            for (mono2, c2) in self.mono_times_gen(mono, g)? {
                out.add_term(mono2, c * &c2);
            }
        }
        self.charge(out.len())?;
        Ok(out)
    }

    pub fn mul(&mut self, x: &PbwElement, y: &PbwElement) -> Result<PbwElement, EnvAlgError> {
        self.check_algebra(x)?;
        self.check_algebra(y)?;
        let mut out = PbwElement::zero(self.m);
        for (mono_y, cy) in &y.terms {
            let mut cur = x.scale(cy);
            for &g in mono_y {
                let Generator { k, l } = Generator::from_index(g, self.m);
                cur = self.mul_generator(&cur, k, l)?;
            }
            out.add_assign_scaled(&cur, &Rational::ONE);
        }
        Ok(out)
    }

    pub fn commutator(
        &mut self,
        x: &PbwElement,
        y: &PbwElement,
    ) -> Result<PbwElement, EnvAlgError> {
        let xy = self.mul(x, y)?;
        let yx = self.mul(y, x)?;
        Ok(xy.sub(&yx))
    }

    /// Normal form of `coeff * e_{w_1} e_{w_2} ...`.
    pub fn normalize_word(
        &mut self,
        coeff: &Rational,
        word: &[Generator],
    ) -> Result<PbwElement, EnvAlgError> {
        let mut cur = PbwElement::scalar(self.m, coeff.clone());
        for g in word {
            cur = self.mul_generator(&cur, g.k, g.l)?;
        }
        Ok(cur)
    }

    /// `e^q_kl = sum e_{k i_1} e_{i_1 i_2} ... e_{i_{q-1} l}`, computed through
    /// `e^q_kl = sum_i e^{q-1}_ki e_il`.
    pub fn e_power(&mut self, k: usize, l: usize, q: u32) -> Result<PbwElement, EnvAlgError> {
        self.check_generator(k, l)?;
        let row = self.e_power_row(k, q)?;
        Ok(row.into_iter().nth(l).expect("row has m entries"))
    }

    /// `e^q_kl` for every `l`.
    pub fn e_power_row(&mut self, k: usize, q: u32) -> Result<Vec<PbwElement>, EnvAlgError> {
        self.check_generator(k, 0)?;
        let m = self.m;
        let mut row: Vec<PbwElement> = (0..m)
            .map(|l| {
                if l == k {
                    PbwElement::one(m)
                } else {
                    PbwElement::zero(m)
                }
            })
            .collect();
        for _ in 0..q {
            let mut next = vec![PbwElement::zero(m); m];
            for (i, prev) in row.iter().enumerate() {
                if prev.is_zero() {
                    continue;
                }
                for (l, slot) in next.iter_mut().enumerate() {
                    let t = self.mul_generator(prev, i, l)?;
                    slot.add_assign_scaled(&t, &Rational::ONE);
                }
            }
            row = next;
        }
        Ok(row)
    }

    /// `e~^q_kl = (-1)^q sum e_{i_1 k} e_{i_2 i_1} ... e_{l i_{q-1}}`, computed
    /// through `e~^q_kl = -sum_i e~^{q-1}_ki e_li`.
    pub fn tilde_e_power(&mut self, k: usize, l: usize, q: u32) -> Result<PbwElement, EnvAlgError> {
        self.check_generator(k, l)?;
        let row = self.tilde_e_power_row(k, q)?;
        Ok(row.into_iter().nth(l).expect("row has m entries"))
    }

    pub fn tilde_e_power_row(&mut self, k: usize, q: u32) -> Result<Vec<PbwElement>, EnvAlgError> {
        self.check_generator(k, 0)?;
        let m = self.m;
        let minus = -Rational::ONE;
        let mut row: Vec<PbwElement> = (0..m)
            .map(|l| {
                if l == k {
                    PbwElement::one(m)
                } else {
                    PbwElement::zero(m)
                }
            })
            .collect();
        for _ in 0..q {
            let mut next = vec![PbwElement::zero(m); m];
            for (i, prev) in row.iter().enumerate() {
                if prev.is_zero() {
                    continue;
                }
                for (l, slot) in next.iter_mut().enumerate() {
                    let t = self.mul_generator(prev, l, i)?;
                    slot.add_assign_scaled(&t, &minus);
                }
            }
            row = next;
        }
        Ok(row)
    }

    /// All `e^p_kl` for `p <= q_max`, indexed `[p][k][l]`.
    pub fn e_power_table(
        &mut self,
        q_max: u32,
        tilde: bool,
    ) -> Result<Vec<Vec<Vec<PbwElement>>>, EnvAlgError> {
        let m = self.m;
        let mut table = Vec::with_capacity(q_max as usize + 1);
        let mut rows: Vec<Vec<PbwElement>> = (0..m)
            .map(|k| {
                (0..m)
                    .map(|l| {
                        if l == k {
                            PbwElement::one(m)
                        } else {
                            PbwElement::zero(m)
                        }
                    })
                    .collect()
            })
            .collect();
        table.push(rows.clone());
        let s = if tilde { -Rational::ONE } else { Rational::ONE };
        for _ in 0..q_max {
            let mut next = vec![vec![PbwElement::zero(m); m]; m];
            for (k, row) in rows.iter().enumerate() {
                for (i, prev) in row.iter().enumerate() {
                    if prev.is_zero() {
                        continue;
                    }
                    for l in 0..m {
                        let t = if tilde {
                            self.mul_generator(prev, l, i)?
                        } else {
                            self.mul_generator(prev, i, l)?
                        };
                        next[k][l].add_assign_scaled(&t, &s);
                    }
                }
            }
            rows = next;
            table.push(rows.clone());
        }
        Ok(table)
    }

    /// Casimir element `c_q = sum_k e^q_kk`.
    pub fn casimir(&mut self, q: u32) -> Result<PbwElement, EnvAlgError> {
        let mut out = PbwElement::zero(self.m);
        for k in 0..self.m {
            out.add_assign_scaled(&self.e_power(k, k, q)?, &Rational::ONE);
        }
        Ok(out)
    }

    /// `c~_q = sum_k e~^q_kk`.
    pub fn tilde_casimir(&mut self, q: u32) -> Result<PbwElement, EnvAlgError> {
        let mut out = PbwElement::zero(self.m);
        for k in 0..self.m {
            out.add_assign_scaled(&self.tilde_e_power(k, k, q)?, &Rational::ONE);
        }
        Ok(out)
    }

    /// The automorphism `e_kl -> -e_lk`, applied word by word and renormalized.
    pub fn involution(&mut self, x: &PbwElement) -> Result<PbwElement, EnvAlgError> {
        self.check_algebra(x)?;
        let mut out = PbwElement::zero(self.m);
        for (mono, c) in &x.terms {
            let word: Vec<Generator> = mono
                .iter()
                .map(|&g| Generator::from_index(g, self.m).transposed())
                .collect();
            let coeff = c * Rational::sign_pow(mono.len() as u32);
            let t = self.normalize_word(&coeff, &word)?;
            out.add_assign_scaled(&t, &Rational::ONE);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(m: usize) -> Gl {
        Gl::new(m, Budget::default()).unwrap()
    }

    #[test]
    fn reorders_with_commutator() {
        let mut a = gl(2);
        let x = a
            .normalize_word(
                &Rational::ONE,
                &[Generator::new(1, 0), Generator::new(0, 1)],
            )
            .unwrap();
        assert_eq!(x.to_string(), "e12 e21 - e11 + e22");
    }

    #[test]
    fn tilde_square_normal_form() {
        let mut a = gl(2);
        let x = a.tilde_e_power(0, 0, 2).unwrap();
        assert_eq!(x.to_string(), "e11^2 + e12 e21 - e11 + e22");
    }

    #[test]
    fn low_powers() {
        let mut a = gl(3);
        assert_eq!(a.e_power(0, 1, 0).unwrap(), PbwElement::zero(3));
        assert_eq!(a.e_power(2, 2, 0).unwrap(), PbwElement::one(3));
        assert_eq!(a.e_power(0, 1, 1).unwrap(), PbwElement::generator(3, 0, 1));
        assert_eq!(
            a.tilde_e_power(0, 1, 1).unwrap(),
            PbwElement::generator(3, 1, 0).scale(&-Rational::ONE)
        );
    }

    #[test]
    fn budget_is_enforced() {
        let mut a = Gl::new(
            3,
            Budget {
                max_terms: 50,
                ..Budget::default()
            },
        )
        .unwrap();
        assert!(matches!(
            a.casimir(4),
            Err(EnvAlgError::BudgetExceeded { budget: 50 })
        ));
    }

    #[test]
    fn rejects_bad_generator() {
        let a = gl(2);
        assert_eq!(
            a.generator(2, 0),
            Err(EnvAlgError::GeneratorIndex { k: 2, l: 0, m: 2 })
        );
    }
}
