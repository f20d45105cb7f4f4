use std::path::PathBuf;

use num_bigint::BigUint;

/// Errors raised by the arithmetic, certificate, search and classification layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An operation was called outside its documented domain.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("valuation of zero is infinite")]
    ZeroValuation,

    #[error("division by zero")]
    DivisionByZero,

    #[error("quadratic order parameters differ: {left} vs {right}")]
    ParameterMismatch { left: String, right: String },

    /// A cofactor survived trial division and is not a probable prime.
    #[error("cannot factor {cofactor}: composite cofactor exceeds trial-division bound {bound}")]
    ResourceLimit { cofactor: BigUint, bound: u64 },

    /// An identity that is a theorem failed to hold. Never expected to fire.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("corrupt checkpoint {path}: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },

    #[error("checkpoint {path} belongs to config {found}, expected {expected}")]
    ConfigMismatch {
        path: PathBuf,
        expected: String,
        found: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
