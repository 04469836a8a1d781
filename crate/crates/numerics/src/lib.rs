//! Dense complex matrix utilities and deterministic quadrature.
//!
//! Everything is generic over the real scalar `T: Real` (`f32` or `f64`);
//! the `f64` aliases at the bottom are what the rest of the workspace uses.

mod error;
mod expm;
mod linalg;
mod logm;
mod quadrature;

pub use error::NumericsError;
pub use expm::{mat_exp, EXP_NORM_LIMIT};
pub use linalg::{
    commutator, det, frobenius, hermitian_eigen, inverse, is_hermitian, max_abs, norm_1,
    spectral_norm, CMatrix, CVector,
};
pub use logm::mat_log_principal;
pub use quadrature::{disc_quadrature, gauss_legendre, Quadrature1C};

use nalgebra::RealField;

/// Real scalar usable by the generic numerics.
pub trait Real: RealField + Copy {}
impl<T: RealField + Copy> Real for T {}

pub use num_complex::Complex;

/// Double precision complex scalar.
pub type C64 = Complex<f64>;
/// Double precision complex matrix.
pub type CMat = CMatrix<f64>;
/// Double precision complex vector.
pub type CVec = CVector<f64>;
/// Double precision disc rule.
pub type DiscRule = Quadrature1C<f64>;

/// Converts an `f64` literal into `T`.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    nalgebra::convert(x)
}

/// Complex number from real parts.
#[inline]
pub fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(real(re), real(im))
}
