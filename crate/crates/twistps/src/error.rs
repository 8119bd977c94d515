//! Library error type.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid degree {degree}: {reason}")]
    InvalidDegree { degree: String, reason: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("bidegree ({charge}, {weight4}/4) exceeds the truncation box (charge <= {max_charge}, 4*weight <= {max_weight4})")]
    TruncationExceeded {
        charge: i64,
        weight4: i64,
        max_charge: i64,
        max_weight4: i64,
    },

    #[error("bidegree mismatch: expected ({expected}), got ({got})")]
    BidegreeMismatch { expected: String, got: String },

    #[error("guard violation: {0}")]
    GuardViolation(String),

    #[error("cache corruption at key {key}: {reason}")]
    CacheCorruption { key: String, reason: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidConfig(_) | Error::InvalidDegree { .. } => 2,
            Error::TruncationExceeded { .. } | Error::GuardViolation(_) => 3,
            Error::CacheCorruption { .. } => 4,
            Error::BidegreeMismatch { .. } | Error::Io(_) => 2,
        }
    }
}
