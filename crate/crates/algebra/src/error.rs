use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("rank {0} is outside the supported range 1..=4")]
    RankOutOfRange(usize),
    #[error("elements belong to different bases (rank {left} vs {right})")]
    BasisMismatch { left: usize, right: usize },
    #[error("coefficient vector has length {got}, basis has {expected} generators")]
    LengthMismatch { expected: usize, got: usize },
    #[error("realization is not faithful: {0}")]
    NotFaithful(String),
    #[error("value {0} is not a rational with denominator at most 8")]
    NotRational(f64),
    #[error("unknown generator label {0:?}")]
    UnknownGenerator(String),
    #[error("element is not supported on the requested subalgebra")]
    SupportViolation,
}
