use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed sequence or group text.
    #[error("parse error at {token:?}: {reason}")]
    Parse { token: String, reason: String },
    /// A precondition of an operation does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    /// A search or enumeration exceeds its configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// An outcome a proven theorem rules out; always an implementation bug.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
