use thiserror::Error;

/// Errors raised by the matrix, design, construction and search routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("row count mismatch: {left} vs {right}")]
    RowMismatch { left: usize, right: usize },

    #[error("row {row} out of range for a {rows}-rowed matrix")]
    RowOutOfRange { row: usize, rows: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("block {index} has {found} points, expected {expected}")]
    BlockSize {
        index: usize,
        found: usize,
        expected: usize,
    },

    #[error("block {index} contains point {point} outside 1..={points}")]
    PointOutOfRange {
        index: usize,
        point: usize,
        points: usize,
    },

    #[error("design check failed: {0}")]
    DesignCheck(String),

    #[error("construction self-check failed: {0}")]
    ConstructionCheck(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("search problem is infeasible: {0}")]
    Infeasible(String),

    #[error("search problem is unbounded: {0}")]
    Unbounded(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
