use thiserror::Error;

/// Errors shared across the crate. Structural misuse (rank mismatches,
/// forbidden Laurent exponents) is an error; failed mathematical checks are
/// never errors, they are report entries.
#[derive(Debug, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("multi-index has {len} entries, expected {expected}")]
    LengthMismatch { len: usize, expected: usize },

    #[error("negative Q-exponent {value} at position {pos}: Laurent exponents are only allowed in the last position of a Laurent-flagged element")]
    LaurentViolation { pos: usize, value: i64 },

    #[error("negative P-exponent {value} at position {pos}")]
    NegativePExponent { pos: usize, value: i64 },

    #[error("twist must be even, got {0}")]
    OddTwist(i64),

    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),

    #[error("Laurent exponent in the reflected index")]
    LaurentInReflectedIndex,

    #[error("vector is not supported on the module: {0}")]
    NotInModule(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
