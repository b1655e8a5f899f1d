use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller passed arguments outside an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),
    /// Operands live in different variable spaces.
    #[error("parameter space mismatch: {left} vs {right} variables")]
    SpaceMismatch { left: usize, right: usize },
    /// Division by the zero rational function.
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    /// Evaluation hit a vanishing denominator or an inexpressible root.
    #[error("evaluation error: {0}")]
    Evaluation(String),
    /// A tangent weight is trivial, so the fixed point is not isolated.
    #[error("degenerate weight: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
