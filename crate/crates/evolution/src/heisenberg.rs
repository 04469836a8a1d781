use spq_algebra::Realization;
use spq_numerics::{commutator, frobenius, inverse, mat_exp, CMat, C64};

use crate::{EvolutionError, EvolutionPath, GeneratorSpec};

fn i() -> C64 {
    C64::new(0.0, 1.0)
}

/// `x(t_k) = h(t_k)⁻¹ x h(t_k)` along a path.
pub fn heisenberg_evolve(x: &CMat, path: &EvolutionPath) -> Result<Vec<CMat>, EvolutionError> {
    let d = path.last().nrows();
    if x.nrows() != d || x.ncols() != d {
        return Err(EvolutionError::RealizationMismatch(format!(
            "operator is {}x{}, path acts on dimension {d}",
            x.nrows(),
            x.ncols()
        )));
    }
    path.matrices
        .iter()
        .map(|h| Ok(inverse(h)? * x * h))
        .collect()
}

/// Largest `‖ẋ − i[H̃, x]‖_F` over interior nodes, with `ẋ` by central
/// differences and `H̃ = h⁻¹ H h`.
pub fn heisenberg_defect(
    spec: &GeneratorSpec,
    path: &EvolutionPath,
    x: &CMat,
    rep: &(impl Realization<f64> + ?Sized),
) -> Result<f64, EvolutionError> {
    let traj = heisenberg_evolve(x, path)?;
    let mats = spec.realize_terms(rep);
    let mut worst = 0.0f64;
    for k in 1..path.len().saturating_sub(1) {
        let (tm, t, tp) = (path.times[k - 1], path.times[k], path.times[k + 1]);
        let dx = (&traj[k + 1] - &traj[k - 1]) / C64::from(tp - tm);
        let h = &path.matrices[k];
        let tilde = inverse(h)? * spec.matrix_from(&mats, t) * h;
        worst = worst.max(frobenius(&(dx - commutator(&tilde, &traj[k]) * i())));
    }
    Ok(worst)
}

fn conjugated(hmat: &CMat, x: &CMat, t: f64) -> Result<CMat, EvolutionError> {
    let u = mat_exp(&(hmat * (i() * -t)))?;
    let uinv = mat_exp(&(hmat * (i() * t)))?;
    Ok(uinv * x * u)
}

/// `‖ẍ + ad²(H)x‖_F` at time `t` for constant `H`, with `ẍ` the central
/// second difference of step `delta` of `x(s) = e^{iHs} x e^{−iHs}`.
pub fn second_order_residual(hmat: &CMat, x: &CMat, t: f64, delta: f64) -> Result<f64, EvolutionError> {
    let xm = conjugated(hmat, x, t - delta)?;
    let x0 = conjugated(hmat, x, t)?;
    let xp = conjugated(hmat, x, t + delta)?;
    let second = (xp - &x0 * C64::from(2.0) + xm) / C64::from(delta * delta);
    let ad2 = commutator(hmat, &commutator(hmat, &x0));
    Ok(frobenius(&(second + ad2)))
}

/// Commutators appearing in the gauge claims for a Heisenberg-evolved `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeDefects {
    /// `‖[ẋ, x]‖_F`
    pub single: f64,
    /// `‖[[ẋ, x], x]‖_F`
    pub double: f64,
}

/// Gauge commutators at time `t` for constant `H`, with `ẋ = i[H, x(t)]`.
pub fn gauge_defects(hmat: &CMat, x: &CMat, t: f64) -> Result<GaugeDefects, EvolutionError> {
    let xt = conjugated(hmat, x, t)?;
    let dx = commutator(hmat, &xt) * i();
    let c = commutator(&dx, &xt);
    Ok(GaugeDefects { single: frobenius(&c), double: frobenius(&commutator(&c, &xt)) })
}
