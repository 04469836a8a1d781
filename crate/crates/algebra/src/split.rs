use std::sync::Arc;

use spq_numerics::{real, Complex, Real};

use crate::{AlgebraBasis, AlgebraElement, AlgebraError, Generator, Part, Sector};

fn restrict<T: Real>(x: &AlgebraElement<T>, keep: impl Fn(Generator) -> bool) -> AlgebraElement<T> {
    let basis = x.basis().clone();
    x.map_coeffs(|k, c| if keep(basis.label(k)) { c } else { Complex::new(T::zero(), T::zero()) })
}

/// `(x₋, x₀, x₊)` on the lowering, Cartan and raising label sets.
pub fn triangular_split<T: Real>(x: &AlgebraElement<T>) -> (AlgebraElement<T>, AlgebraElement<T>, AlgebraElement<T>) {
    (
        restrict(x, |g| g.part() == Part::Lower),
        restrict(x, |g| g.part() == Part::Cartan),
        restrict(x, |g| g.part() == Part::Raise),
    )
}

/// `(z₋, u, z₊)` on `{e†}`, `{h, i_ij}` and `{e}`.
pub fn parabolic_split<T: Real>(x: &AlgebraElement<T>) -> (AlgebraElement<T>, AlgebraElement<T>, AlgebraElement<T>) {
    (
        restrict(x, |g| g.sector() == Sector::ZMinus),
        restrict(x, |g| g.sector() == Sector::Unitary),
        restrict(x, |g| g.sector() == Sector::ZPlus),
    )
}

/// Quadrature pair `q = (e + e†)/2`, `p = (e − e†)/2` for one index pair.
#[derive(Debug, Clone)]
pub struct QuadraturePair<T> {
    pub i: usize,
    pub j: usize,
    pub q: AlgebraElement<T>,
    pub p: AlgebraElement<T>,
}

pub fn quadrature_generators<T: Real>(basis: &Arc<AlgebraBasis>) -> Result<Vec<QuadraturePair<T>>, AlgebraError> {
    let n = basis.n();
    let half = Complex::new(real::<T>(0.5), T::zero());
    let mut out = Vec::with_capacity(basis.rank().sym_dim());
    for i in 0..n {
        for j in i..n {
            let e = AlgebraElement::generator(basis, Generator::E(i, j))?;
            let f = AlgebraElement::generator(basis, Generator::EDag(i, j))?;
            out.push(QuadraturePair { i, j, q: (&e + &f).scale(half), p: (&e - &f).scale(half) });
        }
    }
    Ok(out)
}

/// Raising/lowering generator pairs of the simple roots `ε_i − ε_{i+1}` and
/// `2ε_n`.
pub fn simple_root_generators(n: usize) -> Vec<(Generator, Generator)> {
    let mut v: Vec<_> = (0..n.saturating_sub(1))
        .map(|i| (Generator::U(i, i + 1), Generator::U(i + 1, i)))
        .collect();
    if n > 0 {
        v.push((Generator::E(n - 1, n - 1), Generator::EDag(n - 1, n - 1)));
    }
    v
}

/// Real basis of the maximal compact subalgebra `u(n)`, the centralizer of
/// `J = ½ Σ_k (e_k − e†_k)`: `i_ab − i_ba (a<b)` and `e_ab − e†_ab (a≤b)`.
pub fn compact_generators<T: Real>(basis: &Arc<AlgebraBasis>) -> Result<Vec<AlgebraElement<T>>, AlgebraError> {
    let n = basis.n();
    let mut v = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in a + 1..n {
            let x = AlgebraElement::generator(basis, Generator::U(a, b))?;
            let y = AlgebraElement::generator(basis, Generator::U(b, a))?;
            v.push(&x - &y);
        }
    }
    for a in 0..n {
        for b in a..n {
            let x = AlgebraElement::generator(basis, Generator::E(a, b))?;
            let y = AlgebraElement::generator(basis, Generator::EDag(a, b))?;
            v.push(&x - &y);
        }
    }
    Ok(v)
}

/// The element `J = ½ Σ_k (e_k − e†_k)`.
pub fn complex_structure<T: Real>(basis: &Arc<AlgebraBasis>) -> Result<AlgebraElement<T>, AlgebraError> {
    let mut x = AlgebraElement::zero(basis);
    let half = Complex::new(real::<T>(0.5), T::zero());
    for k in 0..basis.n() {
        x.set(Generator::E(k, k), half)?;
        x.set(Generator::EDag(k, k), -half)?;
    }
    Ok(x)
}
