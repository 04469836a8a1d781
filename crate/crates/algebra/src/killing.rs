use num_traits::Zero;
use spq_numerics::{Complex, Real};

use crate::element::rat;
use crate::{AlgebraBasis, AlgebraElement, AlgebraError, Rational};

/// Exact Gram matrix `B_ab = tr(ad g_a · ad g_b)`, row-major.
pub fn killing_gram(basis: &AlgebraBasis) -> Vec<Rational> {
    let d = basis.len();
    let sc = basis.constants();
    let mut g = vec![Rational::zero(); d * d];
    for a in 0..d {
        for b in a..d {
            // tr(ad a ad b) = Σ_{l,k} c[a][k][l] c[b][l][k]
            let mut s = Rational::zero();
            for l in 0..d {
                for (k, cbl) in sc.entries(b, l) {
                    s += sc.get(a, *k, l) * cbl;
                }
            }
            g[a * d + b] = s;
            g[b * d + a] = s;
        }
    }
    g
}

/// `B(x, y) = tr(ad x · ad y)`.
pub fn killing_form<T: Real>(x: &AlgebraElement<T>, y: &AlgebraElement<T>) -> Result<Complex<T>, AlgebraError> {
    x.same_basis(y)?;
    let basis = x.basis();
    let d = basis.len();
    let sc = basis.constants();
    let mut adx = vec![Complex::new(T::zero(), T::zero()); d * d];
    let mut ady = adx.clone();
    for a in 0..d {
        for b in 0..d {
            for (k, c) in sc.entries(a, b) {
                adx[*k * d + b] += x.coeffs()[a] * rat::<T>(c);
                ady[*k * d + b] += y.coeffs()[a] * rat::<T>(c);
            }
        }
    }
    let mut tr = Complex::new(T::zero(), T::zero());
    for i in 0..d {
        for j in 0..d {
            tr += adx[i * d + j] * ady[j * d + i];
        }
    }
    Ok(tr)
}
