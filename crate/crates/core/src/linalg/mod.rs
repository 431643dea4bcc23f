//! Dense complex matrix kernel: arithmetic, Hermitian eigendecomposition,
//! functional calculus, singular values, and seeded random factories.

mod eig;
mod mat;
mod rng;
mod svd;

pub use eig::{herm_eig, herm_funcalc, FunTag, HermEig};
pub use mat::CMat;
pub use rng::{random_contraction, random_positive_gapped, random_projection, random_unitary, SeedRng};
pub use svd::{op_norm, rank_with_cutoff, singular_values};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("non-finite entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("matrix not Hermitian: asymmetry {asym:.3e} exceeds {tol:.3e}")]
    NonHermitian { asym: f64, tol: f64 },
    #[error("eigenvalue {0:.3e} below the sqrt clamping window")]
    NegativeSpectrum(f64),
    #[error("rank {rank} out of range for dimension {dim}")]
    RankOutOfRange { rank: usize, dim: usize },
    #[error("iteration failed to converge")]
    NoConvergence,
}

pub type Result<V> = std::result::Result<V, LinalgError>;
