use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),
    #[error("invalid rank {0}: must be at least 1")]
    InvalidRank(u32),
    #[error("group of order {n}^{s} exceeds the cardinality cap {cap}")]
    CardinalityCap { n: u64, s: u32, cap: u64 },
    #[error("rank mismatch: expected {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("zero element at position {0}")]
    ZeroElement(usize),
    #[error("empty input")]
    EmptyInput,
    #[error("{d} does not divide {n}")]
    NotDivisor { d: u64, n: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{p} is not congruent to {residue} mod 3")]
    WrongResidue { p: u64, residue: u64 },
    #[error("value {0} is out of the supported range")]
    OutOfRange(i128),
    #[error("exact mode unavailable: {len} elements exceeds the oracle limit {limit}")]
    ExactModeUnavailable { len: usize, limit: usize },
    #[error("exhaustive scan of {size} columns exceeds the cap {cap}; request sampled mode")]
    ScanInfeasible { size: u64, cap: u64 },
    #[error("search space of {size} sequences exceeds the cap {cap}")]
    SearchSpaceTooLarge { size: u64, cap: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
