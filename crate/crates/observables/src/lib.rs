//! Observables built on top of realized sp(2n) generators: expectation-value
//! geometry, the Q/Π/M/A operator matrices and stress-energy, classical
//! (Ehrenfest) reduction, interaction-picture mode expansion, density-matrix
//! flows, Lagrangian densities and coherent-state number densities.

mod classical;
mod density;
mod error;
mod flows;
mod geometry;
mod integrate;
mod lagrangian;
mod phase;

pub use classical::{
    classical_bracket, ehrenfest_flow, expectation, generator_expectations, ClassicalRow, ClassicalTrajectory,
};
pub use density::number_density;
pub use error::ObservableError;
pub use flows::{
    boltzmann_flow, mode_basis, mode_expansion_flow, BoltzmannTrajectory, DensityState, ModeBasis, ModeTrajectory,
};
pub use geometry::{expectation_wedge, vev_metric, vev_symplectic, GeometryVEV, ModeLadder, PreGeometry};
pub use lagrangian::{lagrangian_density, LagrangianForm};
pub use phase::{build_phase_ops, stress_energy, OpMatrix, PhaseSpaceOps, StressEnergy};
