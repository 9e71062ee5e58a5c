use thiserror::Error;

/// Errors raised by the arithmetic, bound and oracle layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The inputs are well formed but outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value violates the invariants of its type.
    #[error("validation error: {0}")]
    Validation(String),

    /// A finite-precision computation could not certify its answer.
    #[error("inconclusive precision: {0}")]
    InconclusivePrecision(String),

    /// Text did not match the descriptor grammar.
    #[error("parse error: {0}")]
    Parse(String),

    /// A brute-force oracle was asked for more work than it is allowed to do.
    #[error("refused: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
