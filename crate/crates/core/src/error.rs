use thiserror::Error;

/// Errors raised by the exact-arithmetic layers, the verifiers and the cache.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("signature mismatch: {0}")]
    Signature(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("cache schema version {found} does not match expected {expected}")]
    CacheVersion { found: u32, expected: u32 },

    #[error("malformed data: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
