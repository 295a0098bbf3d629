use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is out of its admissible range or inconsistent with another.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The request would exceed a table bound or the memory budget.
    #[error("resource limit: {0}")]
    Resource(String),

    /// The quantity is undefined for this input (e.g. a zero normaliser).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A documented precondition does not hold for the given point.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The sampling grid is too coarse for the requested transform.
    #[error("insufficient resolution: {0}")]
    Resolution(String),

    #[error("malformed data: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
