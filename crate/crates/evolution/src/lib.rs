//! Evolution `dh/dt = −i H(t) h`, `h(t_a) = Id`, for a time-dependent
//! generator `H(t) = Σ α_i(t) g_i` in a matrix realization of `sp(2n)`.

mod drift;
mod error;
mod heisenberg;
mod magnus;
mod ode;
mod path;
mod schrodinger;
mod spec;
mod wei_norman;

pub use drift::{nonunitary_probe, parabolic_drift, DriftReport, DriftRow, NormDrift};
pub use error::EvolutionError;
pub use heisenberg::{gauge_defects, heisenberg_defect, heisenberg_evolve, second_order_residual, GaugeDefects};
pub use magnus::{evolve_magnus, magnus_expand, MAGNUS_GUARD};
pub use ode::{evolve_ode, OdeOptions};
pub use path::{EvolutionPath, Method, PathRow};
pub use schrodinger::{schrodinger_evolve, schrodinger_vectors, SchrodingerTrajectory};
pub use spec::{Coefficient, GeneratorSpec};
pub use wei_norman::{parabolic_ordering, wei_norman, WeiNormanCoords, WeiNormanOptions};
