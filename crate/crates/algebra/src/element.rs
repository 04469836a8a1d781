use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use spq_numerics::{real, Complex, Real};

use crate::{AlgebraBasis, AlgebraError, Generator, Rational};

/// Coefficient vector over the canonical basis.
#[derive(Debug, Clone)]
pub struct AlgebraElement<T> {
    basis: Arc<AlgebraBasis>,
    coeffs: Vec<Complex<T>>,
}

pub(crate) fn rat<T: Real>(q: &Rational) -> T {
    real(*q.numer() as f64 / *q.denom() as f64)
}

impl<T: Real> AlgebraElement<T> {
    pub fn zero(basis: &Arc<AlgebraBasis>) -> Self {
        AlgebraElement { basis: basis.clone(), coeffs: vec![Complex::new(T::zero(), T::zero()); basis.len()] }
    }

    pub fn from_coeffs(basis: &Arc<AlgebraBasis>, coeffs: Vec<Complex<T>>) -> Result<Self, AlgebraError> {
        if coeffs.len() != basis.len() {
            return Err(AlgebraError::LengthMismatch { expected: basis.len(), got: coeffs.len() });
        }
        Ok(AlgebraElement { basis: basis.clone(), coeffs })
    }

    /// Real coefficients.
    pub fn from_real(basis: &Arc<AlgebraBasis>, coeffs: &[T]) -> Result<Self, AlgebraError> {
        Self::from_coeffs(basis, coeffs.iter().map(|c| Complex::new(*c, T::zero())).collect())
    }

    pub fn generator(basis: &Arc<AlgebraBasis>, g: Generator) -> Result<Self, AlgebraError> {
        let k = basis.index_of(g)?;
        Ok(Self::basis_vector(basis, k))
    }

    pub fn basis_vector(basis: &Arc<AlgebraBasis>, k: usize) -> Self {
        let mut x = Self::zero(basis);
        x.coeffs[k] = Complex::new(T::one(), T::zero());
        x
    }

    pub fn basis(&self) -> &Arc<AlgebraBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, g: Generator) -> Complex<T> {
        self.basis.index_of(g).map_or(Complex::new(T::zero(), T::zero()), |k| self.coeffs[k])
    }

    pub fn set(&mut self, g: Generator, c: Complex<T>) -> Result<(), AlgebraError> {
        let k = self.basis.index_of(g)?;
        self.coeffs[k] = c;
        Ok(())
    }

    pub fn same_basis(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.basis, &other.basis) || self.basis.rank() == other.basis.rank() {
            Ok(())
        } else {
            Err(AlgebraError::BasisMismatch { left: self.basis.n(), right: other.basis.n() })
        }
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |s, c| s + c.norm_sqr()).sqrt()
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm_sqr().sqrt()))
    }

    /// Real coefficients in the real basis, i.e. a real symplectic defining
    /// matrix.
    pub fn is_real_form(&self, tol: T) -> bool {
        self.coeffs.iter().all(|c| c.im.abs() <= tol)
    }

    /// Indices with coefficient modulus above `tol`.
    pub fn support(&self, tol: T) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&k| self.coeffs[k].norm_sqr().sqrt() > tol).collect()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        AlgebraElement { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|c| *c * s).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(usize, Complex<T>) -> Complex<T>) -> Self {
        AlgebraElement {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().enumerate().map(|(k, c)| f(k, *c)).collect(),
        }
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map_coeffs(|_, c| c.conj())
    }

    /// Lie bracket through the structure constants.
    pub fn bracket(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_basis(other)?;
        let sc = self.basis.constants();
        let mut out = Self::zero(&self.basis);
        let zero = Complex::new(T::zero(), T::zero());
        for (a, xa) in self.coeffs.iter().enumerate() {
            if *xa == zero {
                continue;
            }
            for (b, yb) in other.coeffs.iter().enumerate() {
                if *yb == zero {
                    continue;
                }
                let p = *xa * *yb;
                for (k, c) in sc.entries(a, b) {
                    out.coeffs[*k] += p * rat::<T>(c);
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        self.same_basis(other).expect("elements of different ranks");
        AlgebraElement {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(*a, *b)).collect(),
        }
    }
}

impl<T: Real> Add for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;
    fn add(self, rhs: Self) -> AlgebraElement<T> {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<T: Real> Sub for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;
    fn sub(self, rhs: Self) -> AlgebraElement<T> {
        self.zip(rhs, |a, b| a - b)
    }
}

impl<T: Real> Add for AlgebraElement<T> {
    type Output = AlgebraElement<T>;
    fn add(self, rhs: Self) -> AlgebraElement<T> {
        &self + &rhs
    }
}

impl<T: Real> Sub for AlgebraElement<T> {
    type Output = AlgebraElement<T>;
    fn sub(self, rhs: Self) -> AlgebraElement<T> {
        &self - &rhs
    }
}

impl<T: Real> Neg for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;
    fn neg(self) -> AlgebraElement<T> {
        self.map_coeffs(|_, c| -c)
    }
}

impl<T: Real> Mul<Complex<T>> for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;
    fn mul(self, s: Complex<T>) -> AlgebraElement<T> {
        self.scale(s)
    }
}

impl<T: Real> Mul<T> for &AlgebraElement<T> {
    type Output = AlgebraElement<T>;
    fn mul(self, s: T) -> AlgebraElement<T> {
        self.scale(Complex::new(s, T::zero()))
    }
}
