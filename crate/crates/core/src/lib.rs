//! Core library of the `nccell` operator-algebra workbench.
//!
//! The crate is organized around the pipeline
//! presentations → symbolic proofs → matrix representations → boundary maps:
//!
//! - [`presentations`]: DSL for universal C*-algebra presentations plus a
//!   registry of the named algebras shipped with the tool.
//! - [`symbolic`]: exact free *-algebra over Gaussian rationals with oriented
//!   rewriting, for proving *-polynomial identities.
//! - [`linalg`]: dense complex matrices, Hermitian eigendecomposition and
//!   functional calculus, seeded random factories.
//! - [`reps`]: concrete matrix representations, relation checking, generator
//!   maps, and homotopy families.
//! - [`toeplitz`]: the exact Toeplitz-plus-finite-rank model with the index
//!   boundary map.
//! - [`conegrid`]: grid models of cones/suspensions and the exponential
//!   boundary map.
//! - [`boundary`]: the generic cell-diagram boundary orchestration and its
//!   invariance suites.
//!
//! All numeric kernels are generic over the real scalar via [`scalar::Scalar`];
//! the aliases below fix the default `f64` instantiation.

pub mod boundary;
pub mod conegrid;
pub mod exact;
pub mod linalg;
pub mod presentations;
pub mod reps;
pub mod scalar;
pub mod symbolic;
pub mod toeplitz;

pub use scalar::Scalar;

/// Default complex scalar.
pub type C64 = num_complex::Complex<f64>;
/// Default dense complex matrix.
pub type Mat = linalg::CMat<f64>;
/// Default Hermitian eigendecomposition.
pub type Eig = linalg::HermEig<f64>;
