use thiserror::Error;

use crate::model::Violation;

/// A syntax error in formula, sequent or metainference text. `position` is a
/// byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    #[error("invalid atom name {0:?}")]
    InvalidAtom(String),

    #[error("unknown world {0:?}")]
    UnknownWorld(String),

    #[error("too many worlds: {0} (at most {max})", max = crate::model::MAX_WORLDS)]
    TooManyWorlds(usize),

    #[error("model file line {line}: {message}")]
    ModelFormat { line: usize, message: String },

    #[error("invalid interpretation: {}", join_violations(.0))]
    InvalidModel(Vec<Violation>),

    #[error("succedent reduction needs a non-empty succedent")]
    EmptySuccedent,

    #[error("enumeration of {cells} cells exceeds the ceiling of {ceiling}")]
    CeilingExceeded { cells: usize, ceiling: usize },

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("expectations line {line}: {message}")]
    Expectation { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
