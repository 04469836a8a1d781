use serde::Serialize;
use spq_algebra::Realization;
use spq_evolution::GeneratorSpec;
use spq_numerics::{commutator, hermitian_eigen, max_abs, CMat, CVec, C64};

use crate::integrate::{check_grid, integrate};
use crate::ObservableError;

const STATE_TOL: f64 = 1e-10;
const POSITIVITY_FLOOR: f64 = -1e-8;

/// Positive semidefinite, unit-trace, hermitian matrix.
#[derive(Debug, Clone)]
pub struct DensityState {
    rho: CMat,
}

fn min_eigenvalue(rho: &CMat) -> f64 {
    let h = (rho + rho.adjoint()) * C64::from(0.5);
    hermitian_eigen(&h).0[0]
}

impl DensityState {
    pub fn new(rho: CMat) -> Result<Self, ObservableError> {
        if !rho.is_square() {
            return Err(ObservableError::NotDensity("not square".into()));
        }
        let herm = max_abs(&(&rho - rho.adjoint()));
        if herm > STATE_TOL {
            return Err(ObservableError::NotDensity(format!("hermiticity defect {herm:.3e}")));
        }
        let tr = rho.trace();
        if (tr - C64::from(1.0)).norm() > STATE_TOL {
            return Err(ObservableError::NotDensity(format!("trace {tr}")));
        }
        let min = min_eigenvalue(&rho);
        if min < -STATE_TOL {
            return Err(ObservableError::NotDensity(format!("eigenvalue {min:.3e}")));
        }
        Ok(DensityState { rho })
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn pure(psi: &CVec) -> Result<Self, ObservableError> {
        let nn = psi.norm_squared();
        if nn <= f64::MIN_POSITIVE {
            return Err(ObservableError::ZeroNorm);
        }
        Ok(DensityState { rho: psi * psi.adjoint() / C64::from(nn) })
    }

    pub fn rho(&self) -> &CMat {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.rho)
    }

    /// `⟨ψ|ρ|ψ⟩ / ⟨ψ|ψ⟩`.
    pub fn fidelity(&self, psi: &CVec) -> f64 {
        psi.dotc(&(&self.rho * psi)).re / psi.norm_squared()
    }

    pub fn purity(&self) -> f64 {
        (&self.rho * &self.rho).trace().re
    }
}

/// Density-matrix trajectory with the scalar rate `f = tr dρ/dt`.
#[derive(Debug, Clone)]
pub struct BoltzmannTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<CMat>,
    pub rates: Vec<C64>,
    pub min_eigenvalues: Vec<f64>,
}

impl BoltzmannTrajectory {
    pub fn traces(&self) -> Vec<C64> {
        self.states.iter().map(|r| r.trace()).collect()
    }

    /// `max_t |tr ρ(t) − tr ρ(0)|`.
    pub fn trace_drift(&self) -> f64 {
        let tr = self.traces();
        tr.iter().map(|t| (t - tr[0]).norm()).fold(0.0, f64::max)
    }

    pub fn fidelities(&self, states: &[CVec]) -> Vec<f64> {
        self.states.iter().zip(states).map(|(r, psi)| psi.dotc(&(r * psi)).re / psi.norm_squared()).collect()
    }
}

/// Integrates `dρ/dt = {ρ, H}` at operator level, i.e. `dρ/dt = [ρ, iH(t)]`.
/// Positivity below `−1e−8` at a grid time is an error.
pub fn boltzmann_flow(
    rho0: &DensityState,
    spec: &GeneratorSpec,
    rep: &(impl Realization<f64> + ?Sized),
    grid: &[f64],
) -> Result<BoltzmannTrajectory, ObservableError> {
    if rep.dim() != rho0.dim() {
        return Err(ObservableError::Dimension { expected: rep.dim(), got: rho0.dim() });
    }
    let mats = spec.realize_terms(rep);
    let rhs = |t: f64, r: &CMat| commutator(r, &spec.matrix_from(&mats, t)) * C64::i();
    let states = integrate(rhs, rho0.rho(), grid, 1e-12)?;
    let mut rates = Vec::with_capacity(states.len());
    let mut mins = Vec::with_capacity(states.len());
    for (t, r) in grid.iter().zip(&states) {
        let min = min_eigenvalue(r);
        if min < POSITIVITY_FLOOR {
            return Err(ObservableError::PositivityLoss { t: *t, min });
        }
        mins.push(min);
        rates.push(rhs(*t, r).trace());
    }
    Ok(BoltzmannTrajectory { times: grid.to_vec(), states, rates, min_eigenvalues: mins })
}

/// Eigenbasis of a self-adjoint energy operator.
#[derive(Debug, Clone)]
pub struct ModeBasis {
    pub energies: Vec<f64>,
    pub vectors: CMat,
}

pub fn mode_basis(energy: &CMat) -> Result<ModeBasis, ObservableError> {
    let defect = max_abs(&(energy - energy.adjoint()));
    if defect > 1e-10 * max_abs(energy).max(1.0) {
        return Err(ObservableError::NotSelfAdjoint(defect));
    }
    let (vals, vecs) = hermitian_eigen(energy);
    let d = energy.nrows();
    let gap = max_abs(&(vecs.adjoint() * &vecs - CMat::identity(d, d)));
    if gap > 1e-9 {
        return Err(ObservableError::IncompleteBasis(gap));
    }
    Ok(ModeBasis { energies: vals.iter().copied().collect(), vectors: vecs })
}

impl ModeBasis {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Coefficients `c_κ = ⟨ψ_κ|ψ⟩`.
    pub fn coefficients(&self, psi: &CVec) -> CVec {
        self.vectors.adjoint() * psi
    }

    pub fn state(&self, c: &CVec) -> CVec {
        &self.vectors * c
    }

    /// Groups of indices with equal energy (within `tol`).
    pub fn degenerate_blocks(&self, tol: f64) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (k, e) in self.energies.iter().enumerate() {
            match out.last_mut() {
                Some(b) if (self.energies[b[0]] - e).abs() <= tol => b.push(k),
                _ => out.push(vec![k]),
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModeTrajectory {
    pub times: Vec<f64>,
    pub energies: Vec<f64>,
    pub coefficients: Vec<Vec<[f64; 2]>>,
}

impl ModeTrajectory {
    pub fn coefficient_vector(&self, k: usize) -> CVec {
        CVec::from_iterator(self.energies.len(), self.coefficients[k].iter().map(|c| C64::new(c[0], c[1])))
    }

    pub fn norms(&self) -> Vec<f64> {
        (0..self.times.len()).map(|k| self.coefficient_vector(k).norm_squared()).collect()
    }

    pub fn norm_drift(&self) -> f64 {
        let n = self.norms();
        n.iter().map(|x| (x - n[0]).abs()).fold(0.0, f64::max)
    }

    /// Populations summed over degenerate blocks: `(energy, Σ|c|² per time)`.
    pub fn populations(&self, basis: &ModeBasis, tol: f64) -> Vec<(f64, Vec<f64>)> {
        basis
            .degenerate_blocks(tol)
            .into_iter()
            .map(|b| {
                let series = (0..self.times.len())
                    .map(|k| b.iter().map(|i| C64::new(self.coefficients[k][*i][0], self.coefficients[k][*i][1]).norm_sqr()).sum())
                    .collect();
                (basis.energies[b[0]], series)
            })
            .collect()
    }
}

/// Interaction-picture coefficient flow `dc/dt = −i V_I(t) c`, with
/// `(V_I)_{κκ′} = e^{iE_κ t} ⟨ψ_κ|V|ψ_κ′⟩ e^{−iE_κ′ t}`.
pub fn mode_expansion_flow(
    c0: &CVec,
    basis: &ModeBasis,
    v: &CMat,
    grid: &[f64],
) -> Result<ModeTrajectory, ObservableError> {
    check_grid(grid)?;
    let d = basis.dim();
    if c0.len() != d || v.nrows() != d {
        return Err(ObservableError::Dimension { expected: d, got: c0.len().min(v.nrows()) });
    }
    let vk = basis.vectors.adjoint() * v * &basis.vectors;
    let e = &basis.energies;
    let rhs = |t: f64, c: &CMat| {
        let vi = CMat::from_fn(d, d, |a, b| vk[(a, b)] * C64::from_polar(1.0, (e[a] - e[b]) * t));
        vi * c * C64::new(0.0, -1.0)
    };
    let y0 = CMat::from_column_slice(d, 1, c0.as_slice());
    let states = integrate(rhs, &y0, grid, 1e-13)?;
    Ok(ModeTrajectory {
        times: grid.to_vec(),
        energies: e.clone(),
        coefficients: states.iter().map(|s| s.iter().map(|c| [c.re, c.im]).collect()).collect(),
    })
}
