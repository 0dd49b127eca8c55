use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("profile error: {0}")]
    Profile(String),

    #[error("rejection sampler exhausted: {accepted} accepted out of {attempts} proposals")]
    RngExhausted { accepted: usize, attempts: usize },

    #[error("comparison parameters violated: {0}")]
    ComparisonParams(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("unbounded set must be windowed before covering: {0}")]
    Unbounded(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
