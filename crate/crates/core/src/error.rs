use thiserror::Error;

use crate::tournament::EpsilonStep;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("matrix must be square with {n} rows of {n} entries")]
    NotSquare { n: usize },

    #[error("entry ({row}, {col}) = {value} is negative or not finite")]
    InvalidEntry { row: usize, col: usize, value: f64 },

    #[error("vector entry {index} = {value} is negative or not finite")]
    InvalidVectorEntry { index: usize, value: f64 },

    #[error("ZeroVector: vector has no strictly positive entry")]
    ZeroVector,

    #[error("scale factor must be positive and finite, got {0}")]
    InvalidScale(f64),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("iteration count must be at least 1")]
    InvalidIterationCount,

    #[error("alpha must lie in [0, 1], got {0}")]
    InvalidAlpha(f64),

    #[error("column {column} sums to {sum}; expected 0 or 1")]
    MalformedColumnSums { column: usize, sum: f64 },

    #[error("epsilon schedule must contain at least two strictly decreasing values in (0, 1/2)")]
    InvalidSchedule,

    #[error("EpsilonLimitDiverged: no consecutive pair of {} epsilon values stabilized", trace.len())]
    EpsilonLimitDiverged { trace: Vec<EpsilonStep> },

    #[error("invalid scoring scheme {win},{draw},{loss}: need win > draw >= loss >= 0")]
    InvalidScheme { win: f64, draw: f64, loss: f64 },

    #[error("link graph has no pages")]
    EmptyGraph,

    #[error("link count must be positive")]
    InvalidLinkCount,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {player} cannot play against themselves")]
    SelfGame { line: usize, player: String },

    #[error("line {line}: {white} and {black} already played (strict mode)")]
    DuplicatePairing { line: usize, white: String, black: String },

    #[error("line {line}: unknown result token {token:?}")]
    UnknownResult { line: usize, token: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
