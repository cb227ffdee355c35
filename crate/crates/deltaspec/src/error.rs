use std::fmt;

/// Library-wide error type. Every variant names the operation whose
/// precondition was violated so CLI messages stay actionable.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor or operation received inconsistent input.
    InvalidInput { op: &'static str, reason: String },
    /// A precondition on the mathematical domain failed (e.g. a potential
    /// that must be resonant is not).
    Domain { op: &'static str, reason: String },
    /// An iterative solver exhausted its iteration budget.
    NoConvergence { op: &'static str, detail: String },
}

impl Error {
    pub fn invalid(op: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            op,
            reason: reason.into(),
        }
    }

    pub fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    pub fn no_convergence(op: &'static str, detail: impl Into<String>) -> Self {
        Error::NoConvergence {
            op,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput { op, reason } => write!(f, "{op}: invalid input: {reason}"),
            Error::Domain { op, reason } => write!(f, "{op}: domain error: {reason}"),
            Error::NoConvergence { op, detail } => write!(f, "{op}: failed to converge: {detail}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
