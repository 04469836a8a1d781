use std::marker::PhantomData;
use std::sync::Arc;

use nalgebra::DMatrix;
use spq_numerics::{hermitian_eigen, inverse, real, CMatrix, Complex, Real};

use crate::{AlgebraBasis, AlgebraElement, AlgebraError, Generator, Rank};

/// Assignment of basis generators to square complex matrices.
pub trait Realization<T: Real> {
    fn rank(&self) -> Rank;
    fn dim(&self) -> usize;
    fn generator(&self, g: Generator) -> CMatrix<T>;

    fn realize(&self, x: &AlgebraElement<T>) -> CMatrix<T> {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for (k, c) in x.coeffs().iter().enumerate() {
            if *c != Complex::new(T::zero(), T::zero()) {
                m += self.generator(x.basis().label(k)) * *c;
            }
        }
        m
    }
}

/// Defining `2n × 2n` matrix of a generator.
pub fn defining_matrix<T: Real>(n: usize, g: Generator) -> CMatrix<T> {
    let one = Complex::new(T::one(), T::zero());
    let mut m = CMatrix::zeros(2 * n, 2 * n);
    match g {
        Generator::H(a) => {
            m[(a, a)] += one;
            m[(n + a, n + a)] -= one;
        }
        Generator::U(a, b) => {
            m[(a, b)] += one;
            m[(n + b, n + a)] -= one;
        }
        Generator::E(a, b) => {
            m[(a, n + b)] += one;
            m[(b, n + a)] += one;
        }
        Generator::EDag(a, b) => {
            m[(n + a, b)] += one;
            m[(n + b, a)] += one;
        }
    }
    m
}

/// The defining representation on `ℂ^{2n}`.
#[derive(Debug, Clone, Copy)]
pub struct DefiningRep<T> {
    rank: Rank,
    _t: PhantomData<T>,
}

impl<T: Real> DefiningRep<T> {
    pub fn new(rank: Rank) -> Self {
        DefiningRep { rank, _t: PhantomData }
    }
}

impl<T: Real> Realization<T> for DefiningRep<T> {
    fn rank(&self) -> Rank {
        self.rank
    }

    fn dim(&self) -> usize {
        2 * self.rank.get()
    }

    fn generator(&self, g: Generator) -> CMatrix<T> {
        defining_matrix(self.rank.get(), g)
    }
}

/// The adjoint representation, `(ad g_a)_{kb} = c_ab^k`.
#[derive(Debug, Clone)]
pub struct AdjointRep {
    basis: Arc<AlgebraBasis>,
}

impl AdjointRep {
    pub fn new(basis: Arc<AlgebraBasis>) -> Self {
        AdjointRep { basis }
    }
}

impl<T: Real> Realization<T> for AdjointRep {
    fn rank(&self) -> Rank {
        self.basis.rank()
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn generator(&self, g: Generator) -> CMatrix<T> {
        let d = self.basis.len();
        let a = self.basis.index_of(g).expect("generator belongs to this rank");
        let mut m = CMatrix::zeros(d, d);
        for b in 0..d {
            for (k, c) in self.basis.constants().entries(a, b) {
                m[(*k, b)] = Complex::from(real::<T>(*c.numer() as f64 / *c.denom() as f64));
            }
        }
        m
    }
}

/// Least-squares pull-back of realized matrices to basis coefficients.
#[derive(Debug, Clone)]
pub struct Projector<T: Real> {
    basis: Arc<AlgebraBasis>,
    mats: Vec<CMatrix<T>>,
    gram_inv: CMatrix<T>,
}

impl<T: Real> Projector<T> {
    /// Fails when the realized generators are linearly dependent.
    pub fn new<R: Realization<T> + ?Sized>(
        basis: Arc<AlgebraBasis>,
        rep: &R,
    ) -> Result<Self, AlgebraError> {
        let mats: Vec<CMatrix<T>> = basis.labels().iter().map(|g| rep.generator(*g)).collect();
        let d = mats.len();
        let gram = CMatrix::from_fn(d, d, |k, l| frob_inner(&mats[k], &mats[l]));
        let (vals, _) = hermitian_eigen(&gram);
        let top = vals[d - 1].max(T::one());
        if vals[0] <= top * real(1e-10) {
            return Err(AlgebraError::NotFaithful("realized generators are dependent".into()));
        }
        let gram_inv = inverse(&gram).map_err(|e| AlgebraError::NotFaithful(e.to_string()))?;
        Ok(Projector { basis, mats, gram_inv })
    }

    pub fn basis(&self) -> &Arc<AlgebraBasis> {
        &self.basis
    }

    pub fn matrix(&self, k: usize) -> &CMatrix<T> {
        &self.mats[k]
    }

    /// Coefficients of the closest span element and the Frobenius residual.
    pub fn coordinates(&self, m: &CMatrix<T>) -> (AlgebraElement<T>, T) {
        let d = self.mats.len();
        let rhs = CMatrix::from_fn(d, 1, |k, _| frob_inner(&self.mats[k], m));
        let c = &self.gram_inv * rhs;
        let mut recon = CMatrix::zeros(m.nrows(), m.ncols());
        for k in 0..d {
            recon += &self.mats[k] * c[(k, 0)];
        }
        let resid = spq_numerics::frobenius(&(recon - m));
        let x = AlgebraElement::from_coeffs(&self.basis, c.column(0).iter().copied().collect())
            .expect("projector length matches basis");
        (x, resid)
    }

    /// Like [`coordinates`](Self::coordinates) but fails when the residual
    /// exceeds `tol`.
    pub fn project(&self, m: &CMatrix<T>, tol: T) -> Result<AlgebraElement<T>, AlgebraError> {
        let (x, r) = self.coordinates(m);
        if r > tol {
            let r: f64 = nalgebra::try_convert(r).unwrap_or(f64::NAN);
            return Err(AlgebraError::NotFaithful(format!(
                "matrix is outside the realized span (residual {r:.3e})"
            )));
        }
        Ok(x)
    }
}

/// `⟨a, b⟩ = Σ conj(a_ij) b_ij`.
pub(crate) fn frob_inner<T: Real>(a: &DMatrix<Complex<T>>, b: &DMatrix<Complex<T>>) -> Complex<T> {
    a.iter().zip(b.iter()).fold(Complex::new(T::zero(), T::zero()), |s, (x, y)| s + x.conj() * y)
}
