use std::fmt;

use crate::geometry::GridEdge;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordAxis {
    X,
    Y,
}

impl fmt::Display for CoordAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordAxis::X => f.write_str("x"),
            CoordAxis::Y => f.write_str("y"),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("two terminals share {axis} coordinate {value}")]
    DuplicateCoordinate { axis: CoordAxis, value: i64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("conflicting orientations demanded on grid edge {edge:?}")]
    OrientationConflict { edge: GridEdge },

    #[error("strips of one block demand opposite orientations on {edge:?}")]
    IncompatibleStrips { edge: GridEdge },

    #[error("staircase completion at origin ({x}, {y}): {detail}")]
    DisjointnessViolation { x: i64, y: i64, detail: String },

    #[error("staircase completion at origin ({x}, {y}) leaves pair ({from}, {to}) unconnected")]
    CompletionInfeasible { x: i64, y: i64, from: usize, to: usize },

    #[error("exact search exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64, best: Option<i64> },

    #[error("instance too large for the exact oracle: {edges} grid edges (limit 128)")]
    OracleTooLarge { edges: usize },
}

impl Error {
    /// Errors that mean an internal invariant broke rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::OrientationConflict { .. }
                | Error::IncompatibleStrips { .. }
                | Error::DisjointnessViolation { .. }
                | Error::CompletionInfeasible { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
