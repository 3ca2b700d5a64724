//! Exact rational linear algebra.

mod matrix;
mod rational;

pub use matrix::RationalMatrix;
pub use rational::{binomial, ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("gram matrix is not diagonal")]
    NonDiagonalGram,
    #[error("gram matrix has non-positive entry {value} at {index}")]
    NonPositiveGram { index: usize, value: Rational },
    #[error("eigenvalue {0} listed more than once")]
    RepeatedEigenvalue(Rational),
    #[error("eigenvalue list is empty")]
    EmptySpectrum,
    #[error("index {index} out of range for {len} eigenvalues")]
    EigenvalueIndex { index: usize, len: usize },
    #[error("listed eigenvalues do not exhaust the spectrum (annihilator has {nonzero} nonzero entries)")]
    IncompleteSpectrum { nonzero: usize },
}

fn checked_gram_diagonal(g: &RationalMatrix) -> Result<Vec<Rational>, LinalgError> {
    if !g.is_diagonal() {
        return Err(LinalgError::NonDiagonalGram);
    }
    let d = g.diagonal_entries();
    if let Some((index, value)) = d.iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(LinalgError::NonPositiveGram {
            index,
            value: value.clone(),
        });
    }
    Ok(d)
}

/// Adjoint of `a: source -> target` with respect to diagonal positive grams,
/// i.e. `G_source^{-1} a^T G_target`.
pub fn gram_adjoint(
    a: &RationalMatrix,
    gram_source: &RationalMatrix,
    gram_target: &RationalMatrix,
) -> Result<RationalMatrix, LinalgError> {
    let gs = checked_gram_diagonal(gram_source)?;
    let gt = checked_gram_diagonal(gram_target)?;
    if gs.len() != a.cols() || gt.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            left: (a.rows(), a.cols()),
            right: (gt.len(), gs.len()),
        });
    }
    Ok(RationalMatrix::from_fn(a.cols(), a.rows(), |i, j| {
        let v = a.get(j, i);
        if v.is_zero() {
            Rational::ZERO
        } else {
            v * &gt[j] / &gs[i]
        }
    }))
}

/// Spectral projectors of a diagonalizable `a` with the listed distinct
/// eigenvalues, by Lagrange interpolation. Fails unless the listed values
/// annihilate `a`.
pub fn spectral_projectors(
    a: &RationalMatrix,
    eigenvalues: &[Rational],
) -> Result<Vec<RationalMatrix>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if eigenvalues.is_empty() {
        return Err(LinalgError::EmptySpectrum);
    }
    for (i, x) in eigenvalues.iter().enumerate() {
        if eigenvalues[..i].contains(x) {
            return Err(LinalgError::RepeatedEigenvalue(x.clone()));
        }
    }
    let n = a.rows();
    let shifted: Vec<RationalMatrix> = eigenvalues
        .iter()
        .map(|l| a.sub(&RationalMatrix::scalar(n, l)))
        .collect();
    let mut annihilator = shifted[0].clone();
    for s in &shifted[1..] {
        annihilator = annihilator.mul(s);
    }
    if !annihilator.is_zero() {
        return Err(LinalgError::IncompleteSpectrum {
            nonzero: annihilator.nonzero_count(),
        });
    }
    Ok((0..eigenvalues.len())
        .map(|t| {
            let mut p = RationalMatrix::identity(n);
            for (j, s) in shifted.iter().enumerate() {
                if j != t {
                    let d = (&eigenvalues[t] - &eigenvalues[j]).recip();
                    p = p.mul(s).scale(&d);
                }
            }
            p
        })
        .collect())
}

/// `prod_{j != t} (a - l_j) / (l_t - l_j)` with the spectrum checks of
/// [`spectral_projectors`].
pub fn lagrange_projector(
    a: &RationalMatrix,
    eigenvalues: &[Rational],
    t: usize,
) -> Result<RationalMatrix, LinalgError> {
    if t >= eigenvalues.len() {
        return Err(LinalgError::EigenvalueIndex {
            index: t,
            len: eigenvalues.len(),
        });
    }
    Ok(spectral_projectors(a, eigenvalues)?.swap_remove(t))
}

/// Gram-Schmidt with respect to a diagonal gram. Returns orthogonal vectors
/// spanning the same space as `vectors`, dropping dependent ones.
pub fn gram_schmidt(vectors: &[Vec<Rational>], gram_diag: &[Rational]) -> Vec<Vec<Rational>> {
    let inner = |u: &[Rational], v: &[Rational]| -> Rational {
        u.iter()
            .zip(v)
            .zip(gram_diag)
            .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
            .map(|((a, b), g)| a * b * g)
            .sum()
    };
    let mut out: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (b, nb) in &out {
            let c = inner(&w, b) / nb;
            if !c.is_zero() {
                for (x, y) in w.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        let n = inner(&w, &w);
        if !n.is_zero() {
            out.push((w, n));
        }
    }
    out.into_iter().map(|(w, _)| w).collect()
}
