use spq_algebra::Realization;
use spq_numerics::{frobenius, CMat, C64};

use crate::path::unitarize;
use crate::spec::check_grid;
use crate::{EvolutionError, EvolutionPath, GeneratorSpec, Method};

/// Step control for [`evolve_ode`].
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    /// Target local error per substep.
    pub tol: f64,
    /// A step is rejected outright when its error cannot be brought below
    /// this bound.
    pub reject: f64,
    /// Smallest substep relative to the interval length.
    pub min_fraction: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { tol: 1e-12, reject: 1e-6, min_fraction: 1e-6 }
    }
}

fn rk4(spec: &GeneratorSpec, mats: &[CMat], t: f64, h: f64, y: &CMat) -> CMat {
    let f = |s: f64, y: &CMat| spec.matrix_from(mats, s) * y * C64::new(0.0, -1.0);
    let k1 = f(t, y);
    let k2 = f(t + h / 2.0, &(y + &k1 * C64::from(h / 2.0)));
    let k3 = f(t + h / 2.0, &(y + &k2 * C64::from(h / 2.0)));
    let k4 = f(t + h, &(y + &k3 * C64::from(h)));
    y + (k1 + k2 * C64::from(2.0) + k3 * C64::from(2.0) + k4) * C64::from(h / 6.0)
}

/// Classical RK4 with step doubling on each grid interval. Self-adjoint
/// specs are renormalized to the unitary polar factor after every step.
pub fn evolve_ode(
    spec: &GeneratorSpec,
    grid: &[f64],
    rep: &(impl Realization<f64> + ?Sized),
    options: OdeOptions,
) -> Result<EvolutionPath, EvolutionError> {
    check_grid(grid)?;
    let mats = spec.realize_terms(rep);
    spec.check_self_adjoint(&mats, grid.iter().copied())?;
    let d = rep.dim();
    let mut y = CMat::identity(d, d);
    let mut matrices = vec![y.clone()];
    let mut defects = vec![0.0];
    let mut h = grid[1] - grid[0];
    for w in grid.windows(2) {
        let (mut t, end) = (w[0], w[1]);
        let span = end - t;
        let mut worst = 0.0f64;
        while t < end {
            h = h.min(end - t);
            let one = rk4(spec, &mats, t, h, &y);
            let half = rk4(spec, &mats, t, h / 2.0, &y);
            let two = rk4(spec, &mats, t + h / 2.0, h / 2.0, &half);
            let err = frobenius(&(&two - &one)) / 15.0;
            if err > spec_tol(options.tol, &y) && h > options.min_fraction * span {
                h /= 2.0;
                continue;
            }
            if err > spec_tol(options.reject, &y) {
                return Err(EvolutionError::StepRejected { t, error: err });
            }
            y = &two + (&two - &one) / C64::from(15.0);
            if spec.self_adjoint() {
                y = unitarize(&y);
            }
            worst = worst.max(err);
            t = if end - t - h < 1e-14 * span.max(1.0) { end } else { t + h };
            if err < spec_tol(options.tol, &y) / 64.0 {
                h *= 2.0;
            }
        }
        matrices.push(y.clone());
        defects.push(worst);
    }
    Ok(EvolutionPath { method: Method::Ode, times: grid.to_vec(), matrices, defects })
}

fn spec_tol(tol: f64, y: &CMat) -> f64 {
    tol * frobenius(y).max(1.0)
}
