use thiserror::Error;

use crate::model::Assignment;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("position {pos} out of range 1..={len} in sequence {seq}")]
    PositionOutOfRange { seq: char, pos: u32, len: u32 },

    #[error("assignment {0} joins different letters")]
    LetterMismatch(Assignment),

    #[error("arc ({0}, {1}): left endpoint must be smaller than right endpoint")]
    ArcOrder(u32, u32),

    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(u32, u32),

    #[error("duplicate assignment {0}")]
    DuplicateAssignment(Assignment),

    #[error("assignments {0} and {1} must be distinct")]
    SameAssignment(Assignment, Assignment),

    #[error("solution is not valid ({0} violations)")]
    InvalidSolution(usize),

    #[error("assignments {0} and {1} violate the common subsequence condition")]
    NotCommonSubsequence(Assignment, Assignment),

    #[error("sequence length {len} exceeds the DP limit of {max}")]
    TooLong { len: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{n_arcs} arcs requested but only {max} distinct pairs exist for length {n}")]
    TooManyArcs { n: usize, n_arcs: usize, max: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("missing {algorithm} rows for instance {instance}")]
    MissingCounterpart { instance: String, algorithm: String },

    #[error("csv: {0}")]
    Csv(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
