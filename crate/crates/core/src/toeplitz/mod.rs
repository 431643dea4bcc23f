//! Exact model of the index-map extension: Toeplitz operators with
//! matrix-valued Laurent-polynomial symbols plus finite-rank corner
//! corrections. Products are computed exactly (the Hankel-type correction of
//! two Laurent polynomials has finite rank), the symbol map is the quotient,
//! and the index boundary lifts a unitary symbol to a contraction.

mod boundary;
mod laurent;
mod op;
mod parser;

pub use boundary::{fredholm_oracle, index_boundary, index_boundary_with_lift, IndexBoundary, ToepG2Rep};
pub use laurent::LaurentPoly;
pub use op::ToepOp;
pub use parser::parse_symbol;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ToepError {
    #[error("block size mismatch: {0} vs {1}")]
    BlockMismatch(usize, usize),
    #[error("symbol is not unitary on the circle: residual {0:.3e}")]
    NonUnitarySymbol(f64),
    #[error("operator has nonzero symbol (norm {0:.3e}); not in the ideal")]
    NonZeroSymbol(f64),
    #[error("pre-rounding drift {0:.3e} exceeds the class tolerance")]
    DriftExceeded(f64),
    #[error("kernel rank did not stabilize between truncation sizes {0} and {1}")]
    NonStabilizedRank(usize, usize),
    #[error("symbol parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
}

pub type Result<V> = std::result::Result<V, ToepError>;

/// Circle samples used to test polynomial identities of bounded degree; at
/// 4× the band of every shipped symbol this is exact, not statistical.
pub const CIRCLE_SAMPLES: usize = 256;
pub(crate) const UNITARY_TOL: f64 = 1e-8;
