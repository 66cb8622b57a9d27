//! Error type shared by every module.

use alloc::string::String;

/// Coarse classification of an [`Error`], used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// A mathematical hypothesis does not hold or no certificate exists.
    Refusal,
    /// A resource budget ran out or the computation was cancelled.
    Resource,
    /// The input was malformed or violated a structural precondition.
    Input,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("resource budget exhausted: {0}")]
    Budget(String),
    #[error("computation cancelled")]
    Cancelled,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Capacity(_) | Error::Invalid(_) | Error::Parse(_) | Error::RingMismatch => {
                ErrorKind::Input
            }
            Error::Hypothesis(_) | Error::Verification(_) => ErrorKind::Refusal,
            Error::Budget(_) | Error::Cancelled => ErrorKind::Resource,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
