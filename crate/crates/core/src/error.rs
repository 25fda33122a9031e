use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("corrupt table file: {0}")]
    CorruptTable(String),

    #[error("user `{0}` already enrolled")]
    DuplicateUsername(String),

    #[error("unknown user `{0}`")]
    UnknownUser(String),

    #[error("password verification failed for `{0}`")]
    VerificationFailed(String),

    #[error("scheme mismatch: {0}")]
    SchemeMismatch(String),

    #[error("refusing to export plaintext records without explicit permission")]
    PlaintextExport,

    #[error("memory budget exceeded: need {needed} bytes, cap is {cap} bytes")]
    MemoryBudget { needed: u64, cap: u64 },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
