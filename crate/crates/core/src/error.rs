//! Error type shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A query fell outside the computed region (ball, ambient enumeration).
    #[error("out of range: {0}")]
    OutOfRange(String),
    /// A configured budget (ball size, group order, memory) was exceeded.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    /// A documented precondition did not hold.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A bounded search ended without finding what it looked for.
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Resource(_) => 3,
            Error::OutOfRange(_) | Error::Contract(_) => 4,
            Error::SearchFailed(_) => 5,
        }
    }
}
