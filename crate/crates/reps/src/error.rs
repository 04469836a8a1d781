use spq_algebra::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("cutoff {cutoff} is too small: {need}")]
    CutoffTooSmall { cutoff: usize, need: String },
    #[error("Cartan generators do not commute on the space (defect {0:.3e})")]
    NonCommutingCartan(f64),
    #[error("Cartan action is not diagonalizable by a unitary change of basis (defect {0:.3e})")]
    NonNormalCartan(f64),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("partition {0:?} is not non-increasing")]
    BadPartition(Vec<i64>),
    #[error("partition {0:?} has no lowest-weight vector in this realization")]
    UnsupportedPartition(Vec<i64>),
    #[error("operation requires the {0} Fock realization")]
    WrongKind(&'static str),
    #[error("module is not invariant: residual {0:.3e}")]
    NotInvariant(f64),
}
