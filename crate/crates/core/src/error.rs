use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size guard was exceeded.
    #[error("limit exceeded: {0}")]
    Limit(String),
    /// Malformed expression text.
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    /// Malformed input file.
    #[error("invalid input: {0}")]
    Input(String),
    /// An iterative method did not converge.
    #[error("no convergence: {0}")]
    NonConvergence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn limit(msg: impl Into<String>) -> Self {
        Error::Limit(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
