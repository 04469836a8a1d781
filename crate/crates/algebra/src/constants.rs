use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use spq_numerics::{commutator, frobenius, real, Real};

use crate::basis::canonical_labels;
use crate::realization::frob_inner;
use crate::{AlgebraBasis, AlgebraError, Generator, Rank, Rational, Realization};

/// Exact structure constants `[g_a, g_b] = Σ_k c[a][b][k] g_k`, stored
/// sparsely per ordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstants {
    rank: Rank,
    dim: usize,
    table: Vec<Vec<(usize, Rational)>>,
}

impl StructureConstants {
    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Non-zero `(k, c[a][b][k])`, ascending in `k`.
    pub fn entries(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.table[a * self.dim + b]
    }

    pub fn get(&self, a: usize, b: usize, k: usize) -> Rational {
        self.entries(a, b)
            .iter()
            .find(|(j, _)| *j == k)
            .map_or_else(Rational::zero, |(_, c)| *c)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|a| {
            (0..self.dim).all(|b| {
                let ab = self.entries(a, b);
                let ba = self.entries(b, a);
                ab.len() == ba.len() && ab.iter().zip(ba).all(|(x, y)| x.0 == y.0 && x.1 == -y.1)
            })
        })
    }

    /// `Σ_cyc [g_a, [g_b, g_c]]` in exact arithmetic.
    pub fn jacobi(&self, a: usize, b: usize, c: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            for (m, cm) in self.entries(y, z) {
                for (k, ck) in self.entries(x, *m) {
                    out[*k] += cm * ck;
                }
            }
        }
        out
    }

    /// Largest absolute Jacobi defect over every basis triple.
    pub fn max_jacobi_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..self.dim {
            for b in 0..self.dim {
                for c in 0..self.dim {
                    for r in self.jacobi(a, b, c) {
                        worst = worst.max(r.abs().to_f64().unwrap_or(f64::INFINITY));
                    }
                }
            }
        }
        worst
    }
}

/// Extracts the constants from any faithful realization and rounds them to
/// rationals with denominator ≤ 8.
pub fn structure_constants<T: Real, R: Realization<T> + ?Sized>(
    basis: &AlgebraBasis,
    rep: &R,
) -> Result<StructureConstants, AlgebraError> {
    if rep.rank() != basis.rank() {
        return Err(AlgebraError::BasisMismatch { left: basis.n(), right: rep.rank().get() });
    }
    extract(basis.rank(), basis.labels(), rep)
}

pub(crate) fn extract<T: Real, R: Realization<T> + ?Sized>(
    rank: Rank,
    labels: &[Generator],
    rep: &R,
) -> Result<StructureConstants, AlgebraError> {
    debug_assert_eq!(labels, canonical_labels(rank).as_slice());
    let dim = labels.len();
    let mats: Vec<_> = labels.iter().map(|g| rep.generator(*g)).collect();
    let gram = spq_numerics::CMatrix::from_fn(dim, dim, |k, l| frob_inner(&mats[k], &mats[l]));
    let (vals, _) = spq_numerics::hermitian_eigen(&gram);
    if vals[0] <= vals[dim - 1] * real(1e-10) {
        return Err(AlgebraError::NotFaithful("realized generators are dependent".into()));
    }
    let chol = nalgebra::Cholesky::new(gram)
        .ok_or_else(|| AlgebraError::NotFaithful("gram matrix not positive definite".into()))?;
    let eps: f64 = nalgebra::try_convert(T::default_epsilon()).unwrap_or(1e-16);
    let tol = 1e-9f64.max(eps * 1e4);

    let mut table = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in a + 1..dim {
            let m = commutator(&mats[a], &mats[b]);
            let rhs = spq_numerics::CMatrix::from_fn(dim, 1, |k, _| frob_inner(&mats[k], &m));
            let c = chol.solve(&rhs);
            let mut recon = m.clone();
            for k in 0..dim {
                recon -= &mats[k] * c[(k, 0)];
            }
            let scale: f64 = nalgebra::try_convert(frobenius(&m)).unwrap_or(0.0);
            let resid: f64 = nalgebra::try_convert(frobenius(&recon)).unwrap_or(f64::INFINITY);
            if resid > tol * (1.0 + scale) {
                return Err(AlgebraError::NotFaithful(format!(
                    "[{}, {}] leaves the span (residual {resid:.3e})",
                    labels[a], labels[b]
                )));
            }
            let mut row = Vec::new();
            for k in 0..dim {
                let re: f64 = nalgebra::try_convert(c[(k, 0)].re).unwrap_or(f64::NAN);
                let im: f64 = nalgebra::try_convert(c[(k, 0)].im).unwrap_or(f64::NAN);
                if im.abs() > tol {
                    return Err(AlgebraError::NotRational(im));
                }
                let q = to_rational(re, tol)?;
                if !q.is_zero() {
                    row.push((k, q));
                }
            }
            table[b * dim + a] = row.iter().map(|(k, q)| (*k, -*q)).collect();
            table[a * dim + b] = row;
        }
    }
    Ok(StructureConstants { rank, dim, table })
}

fn to_rational(x: f64, tol: f64) -> Result<Rational, AlgebraError> {
    for d in 1..=8i64 {
        let v = x * d as f64;
        let r = v.round();
        if (x - r / d as f64).abs() < tol {
            return Ok(Rational::new(r as i64, d));
        }
    }
    Err(AlgebraError::NotRational(x))
}
