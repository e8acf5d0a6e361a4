use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("alphabet mismatch: {left} letters vs {right} letters")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("letter index {letter} is outside an alphabet of {mu} letters")]
    BadLetter { letter: usize, mu: usize },
    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,
    #[error("series has nonzero constant term (not in the augmentation ideal)")]
    NotAugmentation,
    #[error("polynomial word of length {length} exceeds series order {order}")]
    OrderExceeded { length: usize, order: usize },
    #[error("module is not semisimple")]
    NotSemisimple,
    #[error("invalid P_mu relations: {0}")]
    InvalidRelations(String),
    #[error("Alexander polynomial vanishes at t = 1")]
    EvalAtOneZero,
    #[error("constant-term matrix is singular")]
    SingularConstantTerm,
    #[error("matrix entry ({row}, {col}) has a nonzero constant term")]
    NonProperEntries { row: usize, col: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
