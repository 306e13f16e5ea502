use thiserror::Error;

/// Errors surfaced by the public API. Contract violations (invalid flows,
/// capacity overflow) panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a universe of {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("answer mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
