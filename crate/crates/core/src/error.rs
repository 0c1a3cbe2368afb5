use thiserror::Error;

/// Errors surfaced by the library. Verification failures are reported through
/// [`crate::checks::CheckReport`], not through this type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("word is not reduced: letter {position} produces {reason}")]
    NonReduced { position: usize, reason: String },
    #[error("braid move does not apply at position {position}: {reason}")]
    PatternMismatch { position: usize, reason: String },
    #[error("time budget exhausted")]
    BudgetExceeded,
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
