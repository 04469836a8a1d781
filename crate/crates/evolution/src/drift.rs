use std::sync::Arc;

use serde::Serialize;
use spq_algebra::{AlgebraBasis, Projector, Realization, Sector};
use spq_numerics::{inverse, CVec};

use crate::{evolve_ode, EvolutionError, EvolutionPath, GeneratorSpec, OdeOptions};

/// `ℨ₊` leakage of the conjugated parabolic subalgebra along a path.
#[derive(Debug, Clone, Serialize)]
pub struct DriftReport {
    pub times: Vec<f64>,
    /// `max_p ‖(h⁻¹ p h)_{ℨ₊}‖` over parabolic basis elements `p`.
    pub leakage: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftRow {
    pub t: f64,
    pub leakage: f64,
}

impl DriftReport {
    pub fn max(&self) -> f64 {
        self.leakage.iter().copied().fold(0.0, f64::max)
    }

    pub fn rows(&self) -> Vec<DriftRow> {
        self.times.iter().zip(&self.leakage).map(|(t, l)| DriftRow { t: *t, leakage: *l }).collect()
    }
}

/// Projects `h(t)⁻¹ p h(t)` for every `p ∈ 𝔓` onto the sector split and
/// reports the raising (`ℨ₊`) component.
pub fn parabolic_drift(
    path: &EvolutionPath,
    basis: &Arc<AlgebraBasis>,
    rep: &(impl Realization<f64> + ?Sized),
) -> Result<DriftReport, EvolutionError> {
    let proj = Projector::new(basis.clone(), rep)?;
    let raising = basis.sector_indices(Sector::ZPlus);
    let parabolic = basis.parabolic_indices();
    let mut leakage = Vec::with_capacity(path.len());
    for h in &path.matrices {
        if h.nrows() != rep.dim() {
            return Err(EvolutionError::RealizationMismatch("path and realization dimensions differ".into()));
        }
        let hinv = inverse(h)?;
        let mut worst = 0.0f64;
        for &p in &parabolic {
            let (x, _) = proj.coordinates(&(&hinv * proj.matrix(p) * h));
            let norm: f64 = raising.iter().map(|&k| x.coeffs()[k].norm_sqr()).sum::<f64>().sqrt();
            worst = worst.max(norm);
        }
        leakage.push(worst);
    }
    Ok(DriftReport { times: path.times.clone(), leakage })
}

/// Squared norm of the propagated vacuum.
#[derive(Debug, Clone, Serialize)]
pub struct NormDrift {
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
}

impl NormDrift {
    /// Largest `|⟨φ(t)|φ(t)⟩ − ⟨φ|φ⟩|`.
    pub fn max_drift(&self) -> f64 {
        let n0 = self.norms[0];
        self.norms.iter().map(|n| (n - n0).abs()).fold(0.0, f64::max)
    }

    /// Least-squares slope of `ln⟨φ(t)|φ(t)⟩` through the origin.
    pub fn log_rate(&self) -> f64 {
        let n0 = self.norms[0];
        let (mut num, mut den) = (0.0, 0.0);
        for (t, n) in self.times.iter().zip(&self.norms) {
            let dt = t - self.times[0];
            num += dt * (n / n0).ln();
            den += dt * dt;
        }
        num / den
    }
}

const BLOW_UP: f64 = 1e6;

/// Propagates `vacuum` under a generator without unitarity renormalization.
pub fn nonunitary_probe(
    spec: &GeneratorSpec,
    grid: &[f64],
    rep: &(impl Realization<f64> + ?Sized),
    vacuum: &CVec,
) -> Result<NormDrift, EvolutionError> {
    let free = spec.clone().with_self_adjoint(false);
    let path = evolve_ode(&free, grid, rep, OdeOptions::default())?;
    let mut norms = Vec::with_capacity(path.len());
    for h in &path.matrices {
        let size = h.norm();
        if size > BLOW_UP || !size.is_finite() {
            return Err(EvolutionError::BlowUp(size));
        }
        norms.push((h * vacuum).norm_squared());
    }
    Ok(NormDrift { times: path.times, norms })
}
