//! Error taxonomy shared by every module.
//!
//! Four kinds cover everything the library can reject:
//! bad arguments (caller bugs), domain violations (valid-looking numbers
//! outside a formula's region of validity), capacity refusals (inputs that
//! would silently produce garbage or run forever), and solver infeasibility.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates a structural precondition (wrong statistics,
    /// out-of-range index, mismatched lengths, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Numerically valid input outside the domain of the requested quantity
    /// (non-positive temperature, divergent occupation regime, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The request exceeds a hard size guard; the exact algorithms refuse
    /// rather than approximate.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A solver could not bracket or reach a root.
    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
