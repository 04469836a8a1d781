//! Matrix coherent states over the symmetric-matrix domain of `sp(2n)`.
//!
//! States induced from a parabolic module are modelled as polynomials in
//! the independent entries `z_ab` (`a ≤ b`) of a symmetric matrix `Z` with
//! values in the module. The Lie algebra acts by first-order differential
//! operators; the overlap kernel, resolution measure and operator symbols
//! are evaluated on the contraction domain `‖Z′Z*‖ < 1`.

mod cayley;
mod coord;
mod error;
mod kernel;
mod model;
mod poly;

pub use cayley::{cayley_cs, cayley_matrix, exp_cs};
pub use coord::{SymCoord, VarIndex, CONTRACTION_GUARD};
pub use error::CoherentError;
pub use kernel::{
    identity_reconstruction, kernel_series, kernel_table, overlap_kernel, resolution_measure, resolution_normalization,
    KernelRow,
};
pub use model::{
    cs_lowering, cs_raising, cs_u_action, homomorphism_defect, model, model_generator, operator_symbol, CsOperator,
    OperatorMatrix, Term,
};
pub use poly::PolyWavefunction;
