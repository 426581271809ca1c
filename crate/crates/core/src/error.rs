use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A bounded search ran out of budget without an answer.
    #[error("not found: {0}")]
    NotFound(String),

    #[error("unsupported degree: {0}")]
    UnsupportedDegree(String),

    /// Two independent evaluation routes disagreed. This is always a bug or
    /// a numerical-budget violation and must abort loudly.
    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
