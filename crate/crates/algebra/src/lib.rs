//! The real symplectic Lie algebra `sp(2n, ℝ)` for `n ∈ {1, 2, 3, 4}`.
//!
//! Basis conventions (defining representation, mode order `+1..+n, −1..−n`):
//!
//! * `i_ab = [[E_ab, 0], [0, −E_ba]]`, with `i_aa = h_a`
//! * `e_ab = [[0, E_ab + E_ba], [0, 0]]`, so `e_a := e_aa` carries `2E_aa`
//! * `e†_ab = [[0, 0], [E_ab + E_ba, 0]]`
//!
//! Structure constants are extracted numerically from a faithful realization
//! and stored as exact rationals.

mod basis;
mod constants;
mod element;
mod error;
mod export;
mod killing;
mod label;
mod realization;
pub mod relations;
mod split;

pub use basis::{build_basis, AlgebraBasis};
pub use constants::{structure_constants, StructureConstants};
pub use element::AlgebraElement;
pub use error::AlgebraError;
pub use export::{BasisExport, ConstantEntry};
pub use killing::{killing_form, killing_gram};
pub use label::{Generator, Part, Rank, Sector};
pub use realization::{defining_matrix, AdjointRep, DefiningRep, Projector, Realization};
pub use split::{
    compact_generators, complex_structure, parabolic_split, quadrature_generators,
    simple_root_generators, triangular_split, QuadraturePair,
};

/// Exact rational scalar used for structure constants.
pub type Rational = num_rational::Rational64;

/// Double-precision element.
pub type Element = AlgebraElement<f64>;
