use spq_algebra::AlgebraError;
use spq_coherent::CoherentError;
use spq_numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvolutionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Coherent(#[from] CoherentError),
    #[error("time grid must be strictly increasing with at least two nodes")]
    BadGrid,
    #[error("generator is flagged self-adjoint but |H - H^dag| = {0:.3e} at t = {1}")]
    NotSelfAdjoint(f64, f64),
    #[error("step rejected at t = {t}: local error {error:.3e}")]
    StepRejected { t: f64, error: f64 },
    #[error("magnus series outside its convergence guard: integral of |H| = {0:.4} >= pi")]
    MagnusGuard(f64),
    #[error("magnus order {0} is not in 1..=4")]
    MagnusOrder(usize),
    #[error("wei-norman frame is singular at t = {t} (condition {condition:.3e})")]
    SingularFrame { t: f64, condition: f64 },
    #[error("generator at t = {t} is not spanned by the ordered generators (residual {residual:.3e})")]
    NotSpanned { t: f64, residual: f64 },
    #[error("realization mismatch: {0}")]
    RealizationMismatch(String),
    #[error("polynomial degree cap {cap} exceeded (dropped weight {dropped:.3e})")]
    TruncationOverflow { cap: usize, dropped: f64 },
    #[error("norm {0:.3e} exceeds the blow-up guard")]
    BlowUp(f64),
}
