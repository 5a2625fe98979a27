use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix has rank {rank}, expected full row rank {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("value is not a dyadic rational: {0}")]
    NonDyadic(String),

    #[error("invalid dimensions m = {m}, n = {n}")]
    InvalidDimensions { m: usize, n: usize },

    #[error("invalid level {level} (minimum {min})")]
    InvalidLevel { level: u32, min: u32 },

    #[error("packing mixes subspaces of different shape: G({0}, {1}) vs G({2}, {3})")]
    MixedDimensions(usize, usize, usize, usize),

    #[error("subspaces {first} and {second} are identical")]
    DuplicateSubspace { first: usize, second: usize },

    #[error("packing needs at least {needed} subspaces, got {got}")]
    TooFewSubspaces { needed: usize, got: usize },

    #[error("spectrum hypothesis rejected at power sum k = {power}: expected {expected}, observed {observed}")]
    HypothesisRejected {
        power: usize,
        expected: String,
        observed: String,
    },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("orbit exceeded the limit of {limit} elements")]
    OrbitLimitExceeded { limit: usize },

    #[error("permutation domain spans a space of rank {rank}, need {dim}")]
    NotFaithful { rank: usize, dim: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
