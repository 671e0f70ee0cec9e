use thiserror::Error;

use crate::io::ParseError;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The Jacobi sweep budget ran out before the off-diagonal mass
    /// dropped below the convergence threshold.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    /// A condition the algebra guarantees failed to hold at runtime.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
