//! Verification over a family of weights, fanned out over a thread pool.

use clap::ValueEnum;
use rayon::prelude::*;

use super::output::{FamilySpec, VerifyOutput, VERIFY_SCHEMA};
use crate::bochner::{verify_bochner, verify_dolbeault};
use crate::clifford::{
    build_clifford_system, verify_adjoint_pair, verify_cross_relations, verify_spinor_model,
    verify_system, CliffordError,
};
use crate::envalg::{verify_transpose_relations, EnvAlgError};
use crate::gtrep::{build_representation, check_casimir_scalars, check_representation, GtError};
use crate::report::VerificationReport;
use crate::weights::{casimir_eigenvalue, dominant_weights, HighestWeight, Sign};
use crate::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    All,
    /// Representation axioms, invariant gram, highest weight.
    Gtrep,
    /// Casimir elements act by the predicted scalars.
    Casimir,
    /// Symbolic identities in the enveloping algebra.
    Envalg,
    /// Clifford homomorphism relations.
    Clifford,
    /// The model on (0,p)-forms.
    Spinor,
    /// Bochner identity coefficients.
    Bochner,
}

impl Suite {
    const CONCRETE: [Suite; 6] = [
        Suite::Gtrep,
        Suite::Casimir,
        Suite::Envalg,
        Suite::Clifford,
        Suite::Spinor,
        Suite::Bochner,
    ];

    /// Replaces `All` by every suite and removes duplicates.
    pub fn expand(list: &[Suite]) -> Vec<Suite> {
        let mut out: Vec<Suite> = if list.contains(&Suite::All) {
            Self::CONCRETE.to_vec()
        } else {
            list.to_vec()
        };
        out.sort();
        out.dedup();
        out
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Gtrep => "gtrep",
            Suite::Casimir => "casimir",
            Suite::Envalg => "envalg",
            Suite::Clifford => "clifford",
            Suite::Spinor => "spinor",
            Suite::Bochner => "bochner",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub m_min: usize,
    pub m_max: usize,
    pub bound: i64,
    pub q_max: u32,
}

impl Family {
    pub fn weights(&self) -> Vec<HighestWeight> {
        (self.m_min..=self.m_max)
            .flat_map(|m| dominant_weights(m, -self.bound, self.bound))
            .collect()
    }
}

enum Item {
    Weight(HighestWeight),
    Rank(usize),
}

#[derive(Debug, thiserror::Error)]
enum ItemError {
    #[error("{0}")]
    Skip(String),
    #[error("{0}")]
    Fail(String),
}

impl From<GtError> for ItemError {
    fn from(e: GtError) -> Self {
        match e {
            GtError::DimensionOverBudget { .. } => ItemError::Skip(e.to_string()),
            e => ItemError::Fail(e.to_string()),
        }
    }
}

impl From<EnvAlgError> for ItemError {
    fn from(e: EnvAlgError) -> Self {
        match e {
            EnvAlgError::BudgetExceeded { .. } => ItemError::Skip(e.to_string()),
            e => ItemError::Fail(e.to_string()),
        }
    }
}

impl From<CliffordError> for ItemError {
    fn from(e: CliffordError) -> Self {
        match e {
            CliffordError::Rep(g) => g.into(),
            e => ItemError::Fail(e.to_string()),
        }
    }
}

fn guard(
    rep: &mut VerificationReport,
    suite: &str,
    params: String,
    f: impl FnOnce() -> Result<VerificationReport, ItemError>,
) {
    match f() {
        Ok(r) => rep.extend(r),
        Err(ItemError::Skip(why)) => rep.skip(suite, params, why),
        Err(ItemError::Fail(why)) => {
            rep.check(suite, params, false, || why);
        }
    }
}

fn weight_item(
    rho: &HighestWeight,
    suites: &[Suite],
    family: &Family,
    budget: Budget,
) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let params = format!("rho={rho}");
    let needs_rep = suites.iter().any(|s| {
        matches!(
            s,
            Suite::Gtrep | Suite::Casimir | Suite::Clifford | Suite::Bochner
        )
    });
    if !needs_rep {
        return rep;
    }
    let src = match build_representation(rho, budget) {
        Ok(s) => s,
        Err(e) => {
            let tag = suites
                .iter()
                .find(|s| **s != Suite::Envalg && **s != Suite::Spinor)
                .unwrap()
                .name();
            guard(&mut rep, tag, params, || Err(e.into()));
            return rep;
        }
    };
    let m = rho.m();
    if suites.contains(&Suite::Gtrep) {
        rep.extend(check_representation(&src));
    }
    if suites.contains(&Suite::Casimir) {
        guard(&mut rep, "casimir", params.clone(), || {
            let mut r = check_casimir_scalars(&src, family.q_max.max(4))?;
            let c2 = casimir_eigenvalue(rho, 2).map_err(|e| ItemError::Fail(e.to_string()))?;
            let quad = rho.quadratic_casimir();
            r.check(
                "quadratic-casimir",
                params.clone(),
                c2 == quad.into(),
                || format!("c_2 = {c2}, formula {quad}"),
            );
            Ok(r)
        });
    }
    let wants_systems = suites.contains(&Suite::Clifford) || suites.contains(&Suite::Bochner);
    let systems = if wants_systems {
        match build_clifford_system(&src, Sign::Plus)
            .and_then(|p| Ok((p, build_clifford_system(&src, Sign::Minus)?)))
        {
            Ok(s) => Some(s),
            Err(e) => {
                guard(&mut rep, "clifford", params.clone(), || Err(e.into()));
                None
            }
        }
    } else {
        None
    };
    if suites.contains(&Suite::Clifford) {
        if let Some((plus, minus)) = &systems {
            guard(&mut rep, "clifford", params.clone(), || {
                let q = family.q_max.max(m as u32);
                let mut r = verify_system(plus, q)?;
                r.extend(verify_system(minus, q)?);
                r.extend(verify_cross_relations(plus, minus, family.q_max)?);
                for sys in [plus, minus] {
                    for i in sys.table.valid_indices() {
                        r.extend(verify_adjoint_pair(sys, i)?);
                    }
                }
                Ok(r)
            });
        }
    }
    if suites.contains(&Suite::Bochner) {
        let sys = systems.as_ref().map(|(p, mi)| (p, mi));
        guard(&mut rep, "bochner", params, || {
            verify_bochner(rho, sys, family.q_max).map_err(|e| ItemError::Fail(e.to_string()))
        });
    }
    rep
}

fn rank_item(m: usize, suites: &[Suite], family: &Family, budget: Budget) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let params = format!("m={m}");
    if suites.contains(&Suite::Envalg) {
        guard(&mut rep, "envalg", params.clone(), || {
            Ok(verify_transpose_relations(m, family.q_max.max(1), budget)?)
        });
    }
    if suites.contains(&Suite::Spinor) {
        guard(&mut rep, "spinor", params.clone(), || {
            Ok(verify_spinor_model(m, budget)?)
        });
    }
    if suites.contains(&Suite::Bochner) && m >= 2 {
        guard(&mut rep, "bochner", params, || {
            verify_dolbeault(m).map_err(|e| ItemError::Fail(e.to_string()))
        });
    }
    rep
}

/// Runs `suites` on every dominant weight of the family, and the per-rank
/// suites on every `m` in range. `jobs = 0` uses the default pool size.
pub fn run_family(family: &Family, suites: &[Suite], budget: Budget, jobs: usize) -> VerifyOutput {
    let weights = family.weights();
    let mut items: Vec<Item> = (family.m_min..=family.m_max).map(Item::Rank).collect();
    items.extend(weights.iter().cloned().map(Item::Weight));
    let work = || -> Vec<VerificationReport> {
        items
            .par_iter()
            .map(|it| match it {
                Item::Weight(rho) => weight_item(rho, suites, family, budget),
                Item::Rank(m) => rank_item(*m, suites, family, budget),
            })
            .collect()
    };
    let parts = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    let mut report = VerificationReport::new();
    for p in parts {
        report.extend(p);
    }
    VerifyOutput {
        schema: VERIFY_SCHEMA.into(),
        family: FamilySpec {
            m_min: family.m_min,
            m_max: family.m_max,
            bound: family.bound,
            q_max: family.q_max,
            suites: suites.iter().map(|s| s.name().to_string()).collect(),
        },
        weights: weights.len(),
        passed: report.passed(),
        failed: report.failed(),
        skipped: report.skipped(),
        report,
    }
}
