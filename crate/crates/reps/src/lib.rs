//! Representations of `sp(2n)`: truncated bosonic Fock realizations, weight
//! spaces, Weyl dimensions, lowest-weight `u(n)` modules and the modular
//! bookkeeping of induction from the parabolic subgroup.

mod error;
mod fock;
mod induced;
mod module;
mod weyl;

pub use error::RepError;
pub use fock::{build_fock, FockKind, FockRealization, FockSpace, SparseMat};
pub use induced::{modular_function, InducedRepSpec};
pub use module::{
    particle_spectrum, u4_lowest_module, weight_decompose, GeneratorExport, ModuleExport, ModuleSpace, Particle, Partition,
    WeightSpace,
};
pub use weyl::{weyl_dimension, weyl_dimension_gl};
