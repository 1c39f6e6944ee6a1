use thiserror::Error;

pub type Result<T> = std::result::Result<T, ForgeError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForgeError {
    /// Shape mismatch: wrong coordinate count, index out of range, non-bijective table.
    #[error("structural error: {0}")]
    Structural(String),

    /// Input data violates a documented constraint (e.g. a generator value of wrong order).
    #[error("validation error: {0}")]
    Validation(String),

    /// The extension data fails the divisibility conditions on |g|, r and n.
    #[error("ill-defined extension: {0}")]
    IllDefined(String),

    /// A size cap was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    /// An operation was called outside of its precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A result that should hold by construction did not. Always a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for ForgeError {
    fn from(e: std::io::Error) -> Self {
        ForgeError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for ForgeError {
    fn from(e: serde_json::Error) -> Self {
        ForgeError::Parse(e.to_string())
    }
}
