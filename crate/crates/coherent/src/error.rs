use spq_algebra::AlgebraError;
use spq_numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoherentError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("coordinate matrix is not symmetric")]
    NotSymmetric,
    #[error("coordinate matrix must be {n}x{n}")]
    Shape { n: usize },
    #[error("spectral radius {0:.6} of Z'Z* leaves the contraction domain")]
    KernelDomain(f64),
    #[error("module dimension mismatch: {left} vs {right}")]
    ModuleMismatch { left: usize, right: usize },
    #[error("resolvent Id - A is singular")]
    SingularResolvent,
    #[error("{0} is only available for rank 1")]
    RankOneOnly(&'static str),
}
