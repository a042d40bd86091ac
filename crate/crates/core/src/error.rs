use thiserror::Error;

use crate::exactmath::MathError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("unknown family or algebra `{0}`")]
    UnknownName(String),
    #[error("{family}: missing value for parameter `{param}`")]
    MissingParameter { family: String, param: String },
    #[error("{family}: parameter constraint `{constraint}` violated")]
    ConstraintViolated { family: String, constraint: String },
    #[error("unknown variety `{0}`")]
    UnknownVariety(String),
    #[error("basis change is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("only two-dimensional algebras are supported here (got {0})")]
    UnsupportedDimension(usize),
    #[error("first product does not equal the base algebra {0}")]
    BaseMismatch(String),
    #[error("malformed substitution: {0}")]
    MalformedSubstitution(String),
    #[error("structure constants must be numeric here")]
    NotNumeric,
    #[error("data file {file}: {reason}")]
    Data { file: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
