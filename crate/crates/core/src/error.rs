use thiserror::Error;

/// Errors produced by the library.
///
/// The variants map onto the CLI exit codes: `Usage` is 2, `Resource` is 3,
/// everything else that escapes to the CLI is reported as a usage error.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a precondition (empty family, bad tolerance, point
    /// from another space, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation would exceed a configured cap (expansion size, work
    /// budget, brute-force size).
    #[error("resource limit: {0}")]
    Resource(String),

    /// The operation is not implemented for this space.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Malformed configuration or serialized input.
    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
