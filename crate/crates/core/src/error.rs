use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("bracket [{x}, {y}] violates the grading")]
    Grading { x: String, y: String },
    #[error("bracket [{0}, {0}] of an even vector with itself must vanish")]
    EvenDiagonal(String),
    #[error("matrix is not invertible")]
    Singular,
    #[error("matrix mixes parities")]
    ParityMixing,
    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("unknown basis name `{0}`")]
    UnknownName(String),
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
