use nalgebra::{ComplexField, Schur};
use num_complex::Complex;

use crate::linalg::{ensure_finite, ensure_square, frobenius, CMatrix};
use crate::quadrature::gauss_legendre;
use crate::{real, NumericsError, Real};

const MAX_ROOTS: usize = 60;
const PADE_NODES: usize = 12;

/// Principal matrix logarithm.
///
/// Complex Schur form, repeated triangular square roots until the factor is
/// within 1/4 of the identity, then the partial-fraction Padé approximant
/// `log(I+X) = ∫₀¹ X (I + sX)⁻¹ ds` on Gauss–Legendre nodes.
pub fn mat_log_principal<T: Real>(a: &CMatrix<T>) -> Result<CMatrix<T>, NumericsError> {
    ensure_square(a)?;
    ensure_finite(a)?;
    let n = a.nrows();
    if n == 0 {
        return Ok(a.clone());
    }
    let (q, mut t) = Schur::new(a.clone()).unpack();
    let scale = frobenius(a).max(T::one());
    let eps = T::default_epsilon() * real(64.0) * scale;
    for i in 0..n {
        let z = t[(i, i)];
        if z.modulus() <= eps || (z.im.abs() <= eps && z.re < T::zero()) {
            return Err(NumericsError::BranchCut {
                re: nalgebra::try_convert(z.re).unwrap_or(f64::NAN),
                im: nalgebra::try_convert(z.im).unwrap_or(f64::NAN),
            });
        }
    }
    let id = CMatrix::<T>::identity(n, n);
    let mut roots = 0u32;
    while frobenius(&(&t - &id)) > real(0.25) {
        if roots as usize >= MAX_ROOTS {
            break;
        }
        t = upper_sqrt(&t);
        roots += 1;
    }
    let x = &t - &id;
    let (nodes, weights) = gauss_legendre::<T>(PADE_NODES);
    let mut acc = CMatrix::<T>::zeros(n, n);
    for (s, w) in nodes.iter().zip(weights.iter()) {
        let s01 = (*s + T::one()) * real(0.5);
        let w01 = *w * real(0.5);
        let m = &id + &x * Complex::from(s01);
        let sol = m
            .solve_upper_triangular(&x)
            .ok_or(NumericsError::Singular)?;
        acc += sol * Complex::from(w01);
    }
    let factor: T = real(2f64.powi(roots as i32));
    acc *= Complex::from(factor);
    Ok(&q * acc * q.adjoint())
}

/// Principal square root of an upper-triangular matrix.
fn upper_sqrt<T: Real>(t: &CMatrix<T>) -> CMatrix<T> {
    let n = t.nrows();
    let mut u = CMatrix::<T>::zeros(n, n);
    for i in 0..n {
        u[(i, i)] = ComplexField::sqrt(t[(i, i)]);
    }
    for d in 1..n {
        for i in 0..n - d {
            let j = i + d;
            let mut s = t[(i, j)];
            for k in i + 1..j {
                s -= u[(i, k)] * u[(k, j)];
            }
            u[(i, j)] = s / (u[(i, i)] + u[(j, j)]);
        }
    }
    u
}
