use std::sync::Arc;

use serde::Serialize;
use spq_algebra::{AdjointRep, AlgebraBasis, AlgebraElement, Generator, Realization};
use spq_numerics::{commutator, mat_exp, CMat, CVec, C64};

use crate::integrate::check_grid;
use crate::ObservableError;

/// `⟨ψ|A ψ⟩ / ⟨ψ|ψ⟩`.
pub fn expectation(a: &CMat, psi: &CVec) -> Result<C64, ObservableError> {
    if a.nrows() != psi.len() {
        return Err(ObservableError::Dimension { expected: a.nrows(), got: psi.len() });
    }
    let nn = psi.norm_squared();
    if nn <= f64::MIN_POSITIVE {
        return Err(ObservableError::ZeroNorm);
    }
    Ok(psi.dotc(&(a * psi)) / C64::from(nn))
}

/// `{a, b} = ⟨ψ|[A, iB] ψ⟩ / ⟨ψ|ψ⟩`.
pub fn classical_bracket(a: &CMat, b: &CMat, psi: &CVec) -> Result<C64, ObservableError> {
    expectation(&(commutator(a, b) * C64::i()), psi)
}

/// `⟨X_k⟩` for every basis generator, in basis order.
pub fn generator_expectations(
    basis: &Arc<AlgebraBasis>,
    rep: &(impl Realization<f64> + ?Sized),
    psi: &CVec,
) -> Result<Vec<C64>, ObservableError> {
    basis.labels().iter().map(|g| expectation(&rep.generator(*g), psi)).collect()
}

/// Expectations of all generators along a classical flow.
#[derive(Debug, Clone)]
pub struct ClassicalTrajectory {
    pub basis: Arc<AlgebraBasis>,
    pub hamiltonian: AlgebraElement<f64>,
    pub times: Vec<f64>,
    pub values: Vec<Vec<C64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassicalRow {
    pub t: f64,
    pub i: usize,
    pub j: usize,
    pub q_re: f64,
    pub q_im: f64,
    pub pi_re: f64,
    pub pi_im: f64,
    pub energy_re: f64,
    pub energy_im: f64,
}

impl ClassicalTrajectory {
    fn value(&self, k: usize, g: Generator) -> C64 {
        self.values[k][self.basis.index_of(g).expect("generator of this basis")]
    }

    /// `q_ij = ⟨e_ij + e†_ij⟩ / 2` at sample `k`.
    pub fn q(&self, k: usize) -> CMat {
        let n = self.basis.n();
        CMat::from_fn(n, n, |i, j| (self.value(k, Generator::e(i, j)) + self.value(k, Generator::e_dag(i, j))) * 0.5)
    }

    /// `π_ij = ⟨e_ij − e†_ij⟩ / 2` at sample `k`.
    pub fn pi(&self, k: usize) -> CMat {
        let n = self.basis.n();
        CMat::from_fn(n, n, |i, j| (self.value(k, Generator::e(i, j)) - self.value(k, Generator::e_dag(i, j))) * 0.5)
    }

    /// `⟨H⟩` at sample `k`.
    pub fn energy(&self, k: usize) -> C64 {
        self.hamiltonian.coeffs().iter().zip(&self.values[k]).map(|(h, v)| h * v).sum()
    }

    pub fn energy_drift(&self) -> f64 {
        let e0 = self.energy(0);
        (0..self.times.len()).map(|k| (self.energy(k) - e0).norm()).fold(0.0, f64::max)
    }

    pub fn rows(&self) -> Vec<ClassicalRow> {
        let n = self.basis.n();
        let mut out = Vec::new();
        for (k, t) in self.times.iter().enumerate() {
            let (q, p, e) = (self.q(k), self.pi(k), self.energy(k));
            for i in 0..n {
                for j in i..n {
                    out.push(ClassicalRow {
                        t: *t,
                        i: i + 1,
                        j: j + 1,
                        q_re: q[(i, j)].re,
                        q_im: q[(i, j)].im,
                        pi_re: p[(i, j)].re,
                        pi_im: p[(i, j)].im,
                        energy_re: e.re,
                        energy_im: e.im,
                    });
                }
            }
        }
        out
    }
}

/// Closed Ehrenfest flow of the generator expectations for a linear
/// (boson-quadratic) Hamiltonian: `d⟨X⟩/dt = {H, x} = ⟨i[H, X]⟩`, which is
/// linear in `⟨X⟩` through the structure constants and is solved exactly.
pub fn ehrenfest_flow(
    h: &AlgebraElement<f64>,
    initial: &[C64],
    grid: &[f64],
) -> Result<ClassicalTrajectory, ObservableError> {
    check_grid(grid)?;
    let basis = h.basis().clone();
    if initial.len() != basis.len() {
        return Err(ObservableError::Dimension { expected: basis.len(), got: initial.len() });
    }
    let ad = AdjointRep::new(basis.clone()).realize(h);
    let gen = ad.transpose() * C64::i();
    let v0 = CVec::from_column_slice(initial);
    let mut values = Vec::with_capacity(grid.len());
    for t in grid {
        let v = mat_exp(&(&gen * C64::from(t - grid[0])))? * &v0;
        values.push(v.iter().copied().collect());
    }
    Ok(ClassicalTrajectory { basis, hamiltonian: h.clone(), times: grid.to_vec(), values })
}
