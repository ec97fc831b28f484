use thiserror::Error;

use crate::choice_model::{ObjectId, Stage};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    /// An object appears in a stage without appearing in the enclosing stage.
    #[error("nesting violation: {item} is in the {stage} but not in the enclosing stage")]
    Nesting { stage: Stage, item: ObjectId },

    #[error("duplicate object {item} in the {stage}")]
    DuplicateObject { stage: Stage, item: ObjectId },

    #[error("final choice set is empty")]
    EmptyFinal,

    #[error("attainable set is empty")]
    EmptyAttainable,

    #[error("unknown object {0}")]
    UnknownObject(ObjectId),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("list is empty")]
    EmptyList,

    #[error("invalid grades for {id}: mu={mu}, nu={nu}")]
    InvalidGrade { id: String, mu: f64, nu: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("incomplete choice table, missing subsets: {}", .missing.join(" "))]
    IncompleteTable { missing: Vec<String> },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
