//! Clifford homomorphisms `p_{+-i}(u): V_rho -> V_{rho +- mu_i}`, obtained by
//! projecting `V_rho (x) C^m` (or its conjugate) onto irreducible components.

mod spinor;
mod verify;

pub use spinor::{spinor_table, verify_spinor_model, SpinorRow, SpinorTable};
pub use verify::{vandermonde_inverse, verify_adjoint_pair, verify_cross_relations, verify_system};

use crate::gtrep::{vector_representation, GtError, Representation};
use crate::linalg::{gram_schmidt, spectral_projectors, LinalgError, Rational, RationalMatrix};
use crate::weights::{conformal_table, ConformalWeightTable, HighestWeight, Sign, WeightError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Rep(#[from] GtError),
    #[error("source representation has no highest weight")]
    NoHighestWeight,
    #[error("shift {sign}{index} is not a component of this system")]
    NoComponent { sign: char, index: usize },
    #[error("image of the projector onto {target} has rank {rank}, expected {expected}")]
    RankMismatch {
        target: HighestWeight,
        rank: usize,
        expected: String,
    },
}

/// One irreducible component `V_{rho +- mu_i}` and the maps into it.
#[derive(Debug, Clone)]
pub struct CliffordComponent {
    /// 1-based shift index `i`.
    pub index: usize,
    pub weight: i64,
    pub gamma: Rational,
    /// Orthogonal projector on the tensor space.
    pub projector: RationalMatrix,
    /// Columns are an orthogonal basis of the image of the projector.
    pub embedding: RationalMatrix,
    /// The component as a representation on that basis.
    pub target: Representation,
    /// `p_i(u_k)` for each basis vector `u_k` of `C^m` (or its conjugate).
    pub maps: Vec<RationalMatrix>,
    /// Adjoints `p_i(u_k)^*`.
    pub adjoints: Vec<RationalMatrix>,
}

/// All Clifford homomorphisms of one sign on one source representation.
#[derive(Debug, Clone)]
pub struct CliffordSystem {
    pub sign: Sign,
    pub source: Representation,
    /// `C^m` for `Plus`, its conjugate for `Minus`.
    pub aux: Representation,
    pub table: ConformalWeightTable,
    /// `2 sum_kl pi(e_kl) (x) aux(e_lk)` on the tensor space.
    pub casimir_cross: RationalMatrix,
    /// Tensor representation generators, indexed `s * m + t`.
    pub tensor_gens: Vec<RationalMatrix>,
    components: Vec<Option<CliffordComponent>>,
}

impl CliffordSystem {
    pub fn m(&self) -> usize {
        self.source.m()
    }

    pub fn rho(&self) -> &HighestWeight {
        &self.table.rho
    }

    /// Component for the 1-based shift index `i`, if the shifted weight is dominant.
    pub fn component(&self, i: usize) -> Option<&CliffordComponent> {
        self.components
            .get(i.wrapping_sub(1))
            .and_then(Option::as_ref)
    }

    pub fn components(&self) -> impl Iterator<Item = &CliffordComponent> {
        self.components.iter().flatten()
    }

    fn require(&self, i: usize) -> Result<&CliffordComponent, CliffordError> {
        self.component(i).ok_or(CliffordError::NoComponent {
            sign: self.sign.symbol(),
            index: i,
        })
    }

    /// `p_i(u_k)`, 1-based `i`, 0-based `k`.
    pub fn map(&self, i: usize, k: usize) -> Result<&RationalMatrix, CliffordError> {
        Ok(&self.require(i)?.maps[k])
    }

    /// `p_i(u_k)^*`.
    pub fn adjoint(&self, i: usize, k: usize) -> Result<&RationalMatrix, CliffordError> {
        Ok(&self.require(i)?.adjoints[k])
    }

    /// `p_i(u_k)^* p_i(u_l)` on the source; zero when the component is absent.
    pub fn pstar_p(&self, i: usize, k: usize, l: usize) -> RationalMatrix {
        match self.component(i) {
            Some(c) => c.adjoints[k].mul(&c.maps[l]),
            None => RationalMatrix::zeros(self.source.dim(), self.source.dim()),
        }
    }

    /// `p_i(u_k) p_i(u_l)^*` on the target.
    pub fn p_pstar(&self, i: usize, k: usize, l: usize) -> Result<RationalMatrix, CliffordError> {
        let c = self.require(i)?;
        Ok(c.maps[k].mul(&c.adjoints[l]))
    }
}

/// Builds the Clifford system of the given sign on `source`.
pub fn build_clifford_system(
    source: &Representation,
    sign: Sign,
) -> Result<CliffordSystem, CliffordError> {
    let rho = source
        .highest_weight()
        .cloned()
        .ok_or(CliffordError::NoHighestWeight)?;
    let m = source.m();
    let n = source.dim();
    let aux = vector_representation(m, sign == Sign::Plus);
    let table = conformal_table(&rho, sign)?;

    let id_n = RationalMatrix::identity(n);
    let id_m = RationalMatrix::identity(m);
    let mut tensor_gens = Vec::with_capacity(m * m);
    for s in 0..m {
        for t in 0..m {
            tensor_gens.push(source.gen(s, t).kron(&id_m).add(&id_n.kron(aux.gen(s, t))));
        }
    }
    let mut cross = RationalMatrix::zeros(n * m, n * m);
    for k in 0..m {
        for l in 0..m {
            cross.add_scaled(
                &Rational::from_int(2),
                &source.gen(k, l).kron(aux.gen(l, k)),
            );
        }
    }

    let valid = table.valid_indices();
    let eigen: Vec<Rational> = valid
        .iter()
        .map(|&i| Rational::from_int(-2 * table.w(i)))
        .collect();
    let projectors = spectral_projectors(&cross, &eigen)?;

    // gram of the tensor space: g_phi on index phi * m + k
    let tensor_gram: Vec<Rational> = source
        .gram_diag()
        .iter()
        .flat_map(|g| std::iter::repeat_n(g.clone(), m))
        .collect();

    let mut components: Vec<Option<CliffordComponent>> = vec![None; m];
    for (&i, projector) in valid.iter().zip(projectors) {
        let target_rho = rho.shift(sign, i)?.expect("valid shift is dominant");
        let (_, pivots) = projector.rref();
        let columns: Vec<Vec<Rational>> = pivots.iter().map(|&c| projector.column(c)).collect();
        let basis = gram_schmidt(&columns, &tensor_gram);
        let expected = target_rho.weyl_dimension();
        if Rational::from(basis.len()) != expected {
            return Err(CliffordError::RankMismatch {
                target: target_rho,
                rank: basis.len(),
                expected: expected.to_string(),
            });
        }
        let r = basis.len();
        let norms: Vec<Rational> = basis
            .iter()
            .map(|b| {
                b.iter()
                    .zip(&tensor_gram)
                    .filter(|(x, _)| !x.is_zero())
                    .map(|(x, g)| x * x * g)
                    .sum()
            })
            .collect();
        let embedding = RationalMatrix::from_columns(n * m, &basis);
        // D^{-1} B^T G, the coordinate map from the tensor space onto the basis
        let coords = RationalMatrix::from_fn(r, n * m, |a, x| {
            let b = embedding.get(x, a);
            if b.is_zero() {
                Rational::ZERO
            } else {
                b * &tensor_gram[x] / &norms[a]
            }
        });
        let target_gens: Vec<RationalMatrix> = tensor_gens
            .iter()
            .map(|t| coords.mul(&t.mul(&embedding)))
            .collect();
        let target = Representation::from_parts(m, Some(target_rho), target_gens, norms)?;

        let maps: Vec<RationalMatrix> = (0..m)
            .map(|k| RationalMatrix::from_fn(r, n, |a, phi| coords.get(a, phi * m + k).clone()))
            .collect();
        let adjoints = maps
            .iter()
            .map(|p| source.adjoint_to(p, &target))
            .collect::<Result<Vec<_>, _>>()?;
        components[i - 1] = Some(CliffordComponent {
            index: i,
            weight: table.w(i),
            gamma: table.gamma(i).clone(),
            projector,
            embedding,
            target,
            maps,
            adjoints,
        });
    }
    Ok(CliffordSystem {
        sign,
        source: source.clone(),
        aux,
        table,
        casimir_cross: cross,
        tensor_gens,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtrep::build_representation;
    use crate::Budget;

    fn system(rho: &[i64], sign: Sign) -> CliffordSystem {
        let rep = build_representation(
            &HighestWeight::new(rho.to_vec()).unwrap(),
            Budget::default(),
        )
        .unwrap();
        build_clifford_system(&rep, sign).unwrap()
    }

    #[test]
    fn natural_rep_components() {
        let plus = system(&[1, 0], Sign::Plus);
        let dims: Vec<usize> = plus.components().map(|c| c.target.dim()).collect();
        assert_eq!(dims, vec![3, 1]);
        let minus = system(&[1, 0], Sign::Minus);
        let dims: Vec<usize> = minus.components().map(|c| c.target.dim()).collect();
        assert_eq!(dims, vec![1, 3]);
    }

    #[test]
    fn interior_product_on_natural_rep() {
        // C^m (x) conj(C^m) -> trivial is the interior product up to a factor.
        let minus = system(&[1, 0, 0], Sign::Minus);
        let c = minus.component(1).unwrap();
        assert_eq!(c.target.dim(), 1);
        for k in 0..3 {
            let pp = minus.pstar_p(1, k, k);
            assert_eq!(pp.trace(), Rational::new(1, 3));
        }
    }

    #[test]
    fn missing_component_is_an_error() {
        let plus = system(&[0, 0], Sign::Plus);
        assert!(plus.component(2).is_none());
        assert!(matches!(
            plus.map(2, 0),
            Err(CliffordError::NoComponent {
                sign: '+',
                index: 2
            })
        ));
    }
}
