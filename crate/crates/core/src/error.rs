use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A configured row/time cap was hit. `progress` describes how far the
    /// computation got before it stopped.
    #[error("resource limit exceeded during {stage}: {progress}")]
    ResourceLimit { stage: String, progress: String },

    #[error("prime {0} divides the denominator of a matrix entry")]
    PrimeDividesDenominator(u64),

    #[error("need at least two distinct primes, got {0}")]
    TooFewPrimes(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("subspace is not invariant under generator {0}")]
    NotInvariant(usize),

    #[error("value is not in the span of the generators")]
    NotInAlgebra,

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("{0}")]
    Semantic(String),

    #[error("weight or root not found: {0}")]
    NotAWeight(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
