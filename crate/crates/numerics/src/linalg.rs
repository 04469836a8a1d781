use nalgebra::ComplexField;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;

use crate::{NumericsError, Real};

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

pub(crate) fn ensure_square<T: Real>(a: &CMatrix<T>) -> Result<(), NumericsError> {
    if a.nrows() != a.ncols() {
        return Err(NumericsError::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    Ok(())
}

pub(crate) fn ensure_finite<T: Real>(a: &CMatrix<T>) -> Result<(), NumericsError> {
    if a.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(NumericsError::NonFinite)
    }
}

/// `ab - ba`.
pub fn commutator<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a * b - b * a
}

pub fn frobenius<T: Real>(a: &CMatrix<T>) -> T {
    a.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt()
}

pub fn max_abs<T: Real>(a: &CMatrix<T>) -> T {
    a.iter().fold(T::zero(), |m, z| m.max(z.modulus()))
}

/// Maximum absolute column sum.
pub fn norm_1<T: Real>(a: &CMatrix<T>) -> T {
    (0..a.ncols())
        .map(|j| a.column(j).iter().fold(T::zero(), |s, z| s + z.modulus()))
        .fold(T::zero(), |m, s| m.max(s))
}

/// Largest singular value.
pub fn spectral_norm<T: Real>(a: &CMatrix<T>) -> T {
    if a.is_empty() {
        return T::zero();
    }
    let g = a.adjoint() * a;
    let (vals, _) = hermitian_eigen(&g);
    vals.iter().fold(T::zero(), |m, v| m.max(*v)).max(T::zero()).sqrt()
}

pub fn is_hermitian<T: Real>(a: &CMatrix<T>, tol: T) -> bool {
    a.nrows() == a.ncols() && max_abs(&(a - a.adjoint())) < tol
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Only the lower triangle is read.
pub fn hermitian_eigen<T: Real>(a: &CMatrix<T>) -> (DVector<T>, CMatrix<T>) {
    let n = a.nrows();
    let eig = SymmetricEigen::new(a.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[i]
            .partial_cmp(&eig.eigenvalues[j])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let vals = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vecs = CMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        vecs.set_column(k, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

pub fn det<T: Real>(a: &CMatrix<T>) -> Result<Complex<T>, NumericsError> {
    ensure_square(a)?;
    Ok(a.clone().determinant())
}

pub fn inverse<T: Real>(a: &CMatrix<T>) -> Result<CMatrix<T>, NumericsError> {
    ensure_square(a)?;
    a.clone().try_inverse().ok_or(NumericsError::Singular)
}
