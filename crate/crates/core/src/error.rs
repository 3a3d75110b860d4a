use thiserror::Error;

use crate::parser::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    /// `index` is 1-based, as printed to users.
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("arity mismatch: expected {expected} components, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("homogeneity mismatch: {left} vs {right}")]
    HomogeneityMismatch { left: i32, right: i32 },
    #[error("bracket methods disagree: direct gives `{direct}`, pairing formula gives `{tulczyjew}`")]
    MethodDisagreement { direct: String, tulczyjew: String },
    #[error("vector field is not linear with nilpotent matrix: {0}")]
    NotNilpotentLinear(String),
    #[error("maps are not mutually inverse: {0}")]
    InverseCheckFailed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid JSON: {0}")]
    Json(String),
}
