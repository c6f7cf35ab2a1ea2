use thiserror::Error;

use crate::grid::GridPoint;

/// Errors produced by the grid, curve and formula routines.
///
/// `TheoremViolation` and `LemmaViolation` never arise from well-formed
/// input; they signal a bug in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point {point} lies outside the grid [0, {n}]^2")]
    OutOfGrid { point: GridPoint, n: u32 },

    #[error("points {0} and {1} are not adjacent")]
    NotAdjacent(GridPoint, GridPoint),

    #[error("edge {index}: {reason}")]
    InvalidEdge { index: usize, reason: String },

    #[error("sequence edge {index}: {reason}")]
    InvalidSequence { index: usize, reason: String },

    #[error("grid parameters differ ({0} vs {1})")]
    GridMismatch(u32, u32),

    #[error("not a horizontal edge: {0}")]
    NotHorizontal(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("lemma violation: {0}")]
    LemmaViolation(String),

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("sets are not disjoint (shared element {0})")]
    NotDisjoint(i64),

    #[error("not a bijection: {0}")]
    NotBijection(String),

    #[error("exhaustive search is capped at {max} variables, formula has {got}")]
    TooManyVariables { max: usize, got: usize },

    #[error("assignment violates clause {index}")]
    ViolatedClause { index: usize },

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
