use thiserror::Error;

use crate::operator::BipartiteOperator;

/// Errors raised by the operator, witness and oracle layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operator is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("operator is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("states coincide; no separating hyperplane exists")]
    ZeroDifference,

    #[error("state is PPT (min PT eigenvalue {0:.3e}); separable on this slice, distance 0")]
    AlreadyPpt(f64),

    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NotConverged {
        iterations: usize,
        residual: f64,
        last: Box<BipartiteOperator>,
    },

    #[error("malformed operator file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
