//! Exact verification of the algebraic relations satisfied by Clifford
//! homomorphisms of irreducible U(m)-modules, and of the Bochner identities for
//! Kählerian gradients that follow from them.
//!
//! Everything is computed over the rationals. Modules build on each other in
//! the order `linalg`, `weights`, `envalg`, `gtrep`, `clifford`, `bochner`,
//! with `cli` on top.

#![allow(clippy::needless_range_loop)]

pub mod bochner;
pub mod cli;
pub mod clifford;
pub mod envalg;
pub mod gtrep;
pub mod linalg;
pub mod report;
pub mod weights;

pub use linalg::{Rational, RationalMatrix};
pub use report::{Status, VerificationReport};
pub use weights::{HighestWeight, Sign};

/// Environment variable that overrides the default term budget.
pub const BUDGET_ENV: &str = "KAHLERGRAD_BUDGET";

/// Resource limits for symbolic expansion and representation construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of PBW terms produced while normalizing.
    pub max_terms: u64,
    /// Maximum dimension of a representation that will be built.
    pub max_dim: u64,
}

impl Budget {
    pub const DEFAULT_TERMS: u64 = 10_000_000;
    pub const DEFAULT_DIM: u64 = 512;

    /// Defaults, with `max_terms` taken from `KAHLERGRAD_BUDGET` when it parses.
    pub fn from_env() -> Self {
        let max_terms = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_TERMS);
        Budget {
            max_terms,
            max_dim: Self::DEFAULT_DIM,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: Self::DEFAULT_TERMS,
            max_dim: Self::DEFAULT_DIM,
        }
    }
}
