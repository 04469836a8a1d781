//! The three complex structures `J`, `K`, `L` of the defining
//! representation, their adjoint actions, and the Killing, symplectic and
//! hermitian forms built from `J`.

use std::sync::Arc;

use spq_algebra::{
    complex_structure, killing_gram, AlgebraBasis, AlgebraElement, AlgebraError, DefiningRep,
    Projector, Rank, Realization,
};
use spq_numerics::{hermitian_eigen, max_abs, real, CMatrix, Complex, Real};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InvolutionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("operator squares to something other than -Id (residual {0:.3e})")]
    NotAntiInvolutive(f64),
}

/// `J = [[0, I], [−I, 0]]`, `K = i[[0, I], [I, 0]]`, `L = i[[I, 0], [0, −I]]`.
#[derive(Debug, Clone)]
pub struct InvolutionSet<T: Real> {
    pub n: usize,
    pub j: CMatrix<T>,
    pub k: CMatrix<T>,
    pub l: CMatrix<T>,
}

pub fn build_involutions<T: Real>(n: usize) -> Result<InvolutionSet<T>, InvolutionError> {
    let n = Rank::new(n)?.get();
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let mut j = CMatrix::zeros(2 * n, 2 * n);
    let mut k = CMatrix::zeros(2 * n, 2 * n);
    let mut l = CMatrix::zeros(2 * n, 2 * n);
    for a in 0..n {
        j[(a, n + a)] = one;
        j[(n + a, a)] = -one;
        k[(a, n + a)] = i;
        k[(n + a, a)] = i;
        l[(a, a)] = i;
        l[(n + a, n + a)] = -i;
    }
    Ok(InvolutionSet { n, j, k, l })
}

impl<T: Real> InvolutionSet<T> {
    pub fn identity(&self) -> CMatrix<T> {
        CMatrix::identity(2 * self.n, 2 * self.n)
    }

    /// Largest entry of `J² + I`, `K² + I`, `L² + I`, `JK + KJ`, `JL + LJ`,
    /// `KL + LK`, `JKL + I`.
    pub fn quaternion_residual(&self) -> T {
        let id = self.identity();
        let (j, k, l) = (&self.j, &self.k, &self.l);
        [
            j * j + &id,
            k * k + &id,
            l * l + &id,
            j * k + k * j,
            j * l + l * j,
            k * l + l * k,
            j * k * l + &id,
        ]
        .iter()
        .fold(T::zero(), |m, r| m.max(max_abs(r)))
    }

    /// `max |g† J g − J|`.
    pub fn symplectic_defect(&self, g: &CMatrix<T>) -> T {
        max_abs(&(g.adjoint() * &self.j * g - &self.j))
    }

    /// `max |gM − Mg|`; the literal commuting test for `K` or `L`.
    pub fn commutation_defect(m: &CMatrix<T>, g: &CMatrix<T>) -> T {
        max_abs(&(g * m - m * g))
    }
}

/// Conjugation `x ↦ M x M⁻¹` in the defining representation, pulled back to
/// basis coefficients.
#[derive(Debug, Clone)]
pub struct AdjointAction<T: Real> {
    projector: Projector<T>,
    rep: DefiningRep<T>,
}

impl<T: Real> AdjointAction<T> {
    pub fn new(basis: &Arc<AlgebraBasis>) -> Result<Self, InvolutionError> {
        let rep = DefiningRep::new(basis.rank());
        Ok(AdjointAction { projector: Projector::new(basis.clone(), &rep)?, rep })
    }

    pub fn conjugate(&self, m: &CMatrix<T>, x: &AlgebraElement<T>) -> Result<AlgebraElement<T>, InvolutionError> {
        let inv = spq_numerics::inverse(m).map_err(|e| AlgebraError::NotFaithful(e.to_string()))?;
        let y = m * self.rep.realize(x) * inv;
        Ok(self.projector.project(&y, real(1e-9))?)
    }

    /// Matrix of `Ad(M)` on coefficient vectors; column `k` is the image of
    /// the `k`-th generator.
    pub fn matrix(&self, m: &CMatrix<T>) -> Result<CMatrix<T>, InvolutionError> {
        let basis = self.projector.basis().clone();
        let d = basis.len();
        let mut out = CMatrix::zeros(d, d);
        for c in 0..d {
            let y = self.conjugate(m, &AlgebraElement::basis_vector(&basis, c))?;
            for r in 0..d {
                out[(r, c)] = y.coeffs()[r];
            }
        }
        Ok(out)
    }
}

/// `Ad(J)`; swaps the `e`-span with the `e†`-span.
pub fn ad_j_swap<T: Real>(x: &AlgebraElement<T>) -> Result<AlgebraElement<T>, InvolutionError> {
    let inv = build_involutions::<T>(x.basis().n())?;
    AdjointAction::new(x.basis())?.conjugate(&inv.j, x)
}

/// `±i` eigenspaces of a group-level complex structure acting on a module.
#[derive(Debug, Clone)]
pub struct EigenSplit<T: Real> {
    pub plus: CMatrix<T>,
    pub minus: CMatrix<T>,
    pub proj_plus: CMatrix<T>,
    pub proj_minus: CMatrix<T>,
}

/// Splits a module by the action `rho_j` of `j`. Requires `rho_j² = −Id`
/// and `rho_j` anti-hermitian (a unitary complex structure).
pub fn eigensplit_j<T: Real>(rho_j: &CMatrix<T>) -> Result<EigenSplit<T>, InvolutionError> {
    let d = rho_j.nrows();
    let id = CMatrix::<T>::identity(d, d);
    let sq: f64 = nalgebra_max(&(rho_j * rho_j + &id));
    let skew: f64 = nalgebra_max(&(rho_j + rho_j.adjoint()));
    if sq > 1e-9 || skew > 1e-9 {
        return Err(InvolutionError::NotAntiInvolutive(sq.max(skew)));
    }
    let i = Complex::new(T::zero(), T::one());
    let h = rho_j * (-i);
    let (vals, vecs) = hermitian_eigen(&h);
    let plus_idx: Vec<usize> = (0..d).filter(|&k| vals[k] > T::zero()).collect();
    let minus_idx: Vec<usize> = (0..d).filter(|&k| vals[k] <= T::zero()).collect();
    let pick = |idx: &[usize]| {
        let mut m = CMatrix::zeros(d, idx.len());
        for (c, &k) in idx.iter().enumerate() {
            m.set_column(c, &vecs.column(k));
        }
        m
    };
    let half = Complex::new(real::<T>(0.5), T::zero());
    Ok(EigenSplit {
        plus: pick(&plus_idx),
        minus: pick(&minus_idx),
        proj_plus: (&id - rho_j * i) * half,
        proj_minus: (&id + rho_j * i) * half,
    })
}

fn nalgebra_max<T: Real>(m: &CMatrix<T>) -> f64 {
    spq_numerics::max_abs(m).to_subset().unwrap_or(f64::INFINITY)
}

/// Gram matrices over the algebra basis.
///
/// `omega` pairs `B` with the derivation `½ ad(J)`, which is antisymmetric
/// for `B`; `b_ad_j` is the composition with the automorphism `Ad(J)`, which
/// is symmetric.
#[derive(Debug, Clone)]
pub struct FormTriple<T: Real> {
    pub b: CMatrix<T>,
    pub omega: CMatrix<T>,
    pub h: CMatrix<T>,
    pub b_ad_j: CMatrix<T>,
}

pub fn forms<T: Real>(basis: &Arc<AlgebraBasis>) -> Result<FormTriple<T>, InvolutionError> {
    let d = basis.len();
    let g = killing_gram(basis);
    let b = CMatrix::from_fn(d, d, |r, c| {
        let q = g[r * d + c];
        Complex::new(real::<T>(*q.numer() as f64 / *q.denom() as f64), T::zero())
    });
    let j = complex_structure::<T>(basis)?;
    let half = Complex::new(real::<T>(0.5), T::zero());
    let mut cal_j = CMatrix::zeros(d, d);
    for c in 0..d {
        let y = j.bracket(&AlgebraElement::basis_vector(basis, c))?;
        for r in 0..d {
            cal_j[(r, c)] = y.coeffs()[r] * half;
        }
    }
    let inv = build_involutions::<T>(basis.n())?;
    let ad_j = AdjointAction::new(basis)?.matrix(&inv.j)?;
    let omega = &b * &cal_j;
    let i = Complex::new(T::zero(), T::one());
    let h = &b - &omega * i;
    Ok(FormTriple { b_ad_j: &b * ad_j, b, omega, h })
}

/// `Ω(x, y) = B(x, ½[J, y])`.
pub fn omega<T: Real>(x: &AlgebraElement<T>, y: &AlgebraElement<T>) -> Result<Complex<T>, InvolutionError> {
    let j = complex_structure::<T>(x.basis())?;
    let jy = j.bracket(y)?.scale(Complex::new(real::<T>(0.5), T::zero()));
    Ok(spq_algebra::killing_form(x, &jy)?)
}
