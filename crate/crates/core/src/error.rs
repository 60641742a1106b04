use thiserror::Error;

use crate::mps::MatrixProductState;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments violate a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The request would need a dense object too large to build.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// The requested extraction cannot be achieved.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The top Schmidt weight is degenerate, so its Schmidt vectors are not
    /// well defined.
    #[error("degenerate top Schmidt weight (gap {gap:.3e})")]
    Degenerate { gap: f64 },

    #[error("linear algebra backend failure: {0}")]
    Linalg(#[from] ndarray_linalg::error::LinalgError),

    /// Imaginary-time ground search ran out of schedule. Carries the lowest
    /// energy iterate seen.
    #[error("ground search did not converge after {steps} steps (best energy {best_energy})")]
    NotConverged { steps: usize, best_energy: f64, best: Box<MatrixProductState> },

    #[error("sample {index}: {source}")]
    Sample {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
