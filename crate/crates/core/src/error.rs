use thiserror::Error;

use crate::words::GroupSpec;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("group spec mismatch: {left} vs {right}")]
    SpecMismatch { left: GroupSpec, right: GroupSpec },

    #[error("operation requires class 2, got {0}")]
    RequiresClassTwo(GroupSpec),

    #[error("operation requires the involutive quotient, got {0}")]
    RequiresQuotient(GroupSpec),

    #[error("operation requires free (integer) mode, got {0}")]
    RequiresFree(GroupSpec),

    #[error("element is not central (nonzero generator exponents)")]
    NotCentral,

    #[error("word is not a palindrome: {0}")]
    NotPalindrome(String),

    #[error("exponent {0} does not fit a machine word")]
    ExponentTooLarge(String),

    #[error("rank {rank} exceeds the configured limit {limit} for class {class} (raise it with --max-rank-override)")]
    RankAboveLimit {
        rank: usize,
        class: u8,
        limit: usize,
    },

    #[error("cache file rejected: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
