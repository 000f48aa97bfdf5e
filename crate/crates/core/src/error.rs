use thiserror::Error;

/// Errors raised by the partition and set-family machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A configurable resource guard would be exceeded.
    #[error("resource limit `{guard}` exceeded: requested {requested}, limit {limit}")]
    ResourceLimit {
        guard: &'static str,
        limit: u64,
        requested: String,
    },
    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A stated precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A result object does not match the input it claims to describe.
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn limit(guard: &'static str, limit: u64, requested: impl ToString) -> Self {
        Error::ResourceLimit {
            guard,
            limit,
            requested: requested.to_string(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
