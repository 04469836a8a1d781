use spq_algebra::AlgebraError;
use spq_coherent::CoherentError;
use spq_evolution::EvolutionError;
use spq_numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ObservableError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Coherent(#[from] CoherentError),
    #[error(transparent)]
    Evolution(#[from] EvolutionError),
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("operator {0} is not available in this realization")]
    Missing(String),
    #[error("not a density matrix: {0}")]
    NotDensity(String),
    #[error("positivity lost at t = {t}: smallest eigenvalue {min:.3e}")]
    PositivityLoss { t: f64, min: f64 },
    #[error("integrator step rejected at t = {t} (local error {error:.3e})")]
    StepRejected { t: f64, error: f64 },
    #[error("eigenbasis is incomplete (defect {0:.3e})")]
    IncompleteBasis(f64),
    #[error("operator is not self-adjoint (defect {0:.3e})")]
    NotSelfAdjoint(f64),
    #[error("quadrature node at radius {0} violates the contraction condition")]
    Contraction(f64),
    #[error("{0} is implemented for rank 1 only")]
    RankOneOnly(&'static str),
    #[error("grid needs at least two strictly increasing, evenly spaced times")]
    BadGrid,
}
