//! Floating-point verification layer: dense complex eigenvalues, leading
//! Puiseux-exponent fits, and holonomy loop tracing. Everything here is the
//! numeric cross-check for the exact tropical pipeline.

pub mod assign;
pub mod eigen;
pub mod holonomy;
pub mod splitting;

use thiserror::Error;

pub use assign::min_cost_assignment;
pub use eigen::{eigenvalues, polynomial_roots, EigenError};
pub use holonomy::{
    cycle_notation, cycle_type, cycles, holonomy_trace, HolonomyResult, LoopMode, LoopSpec,
};
pub use splitting::{splitting_exponent, DecadeRange, SplittingFit};

#[derive(Debug, Clone, Error)]
pub enum NumericsError {
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error("degenerate or constant spectrum: no v dependence in the splitting")]
    DegenerateSpectrum,
    #[error("eigenvalue matching ambiguous (cost gap {gap:.3e}); increase K")]
    AmbiguousMatching { gap: f64 },
    #[error("trajectory continuity check failed even at {steps} sample points")]
    ContinuityFailure { steps: usize },
    #[error("touching loop requires a degenerate eigenvalue at v = 0")]
    NoDegenerateEigenvalue,
    #[error("invalid numeric run specification: {0}")]
    BadSpec(String),
}
