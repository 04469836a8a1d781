use spq_algebra::Realization;
use spq_numerics::{commutator, gauss_legendre, mat_exp, spectral_norm, CMat, C64};

use crate::spec::check_grid;
use crate::{EvolutionError, EvolutionPath, GeneratorSpec, Method};

/// Upper bound on `∫‖H‖₂ dt` over one Magnus interval.
pub const MAGNUS_GUARD: f64 = std::f64::consts::PI;

const NODES: usize = 5;

struct Nested {
    x: Vec<f64>,
    w: Vec<f64>,
}

/// Exponent `Ω` of the truncated Magnus series for `A(t) = −i H(t)` over
/// `[t0, t1]`.
fn omega(spec: &GeneratorSpec, mats: &[CMat], t0: f64, t1: f64, order: usize, q: &Nested) -> CMat {
    let a = |t: f64| spec.matrix_from(mats, t) * C64::new(0.0, -1.0);
    let h = t1 - t0;
    let mut out = CMat::zeros(mats[0].nrows(), mats[0].ncols());
    // Nested simplex points: s1 = h x_i, s2 = s1 x_j, ...
    for (&xi, &wi) in q.x.iter().zip(&q.w) {
        let s1 = h * xi;
        let w1 = h * wi;
        let a1 = a(t0 + s1);
        out += &a1 * C64::from(w1);
        if order < 2 {
            continue;
        }
        for (&xj, &wj) in q.x.iter().zip(&q.w) {
            let s2 = s1 * xj;
            let w2 = w1 * s1 * wj;
            let a2 = a(t0 + s2);
            let c12 = commutator(&a1, &a2);
            out += &c12 * C64::from(0.5 * w2);
            if order < 3 {
                continue;
            }
            for (&xk, &wk) in q.x.iter().zip(&q.w) {
                let s3 = s2 * xk;
                let w3 = w2 * s2 * wk;
                let a3 = a(t0 + s3);
                let c23 = commutator(&a2, &a3);
                let t3 = commutator(&a1, &c23) + commutator(&a3, &commutator(&a2, &a1));
                out += t3 * C64::from(w3 / 6.0);
                if order < 4 {
                    continue;
                }
                for (&xl, &wl) in q.x.iter().zip(&q.w) {
                    let s4 = s3 * xl;
                    let w4 = w3 * s3 * wl;
                    let a4 = a(t0 + s4);
                    let t4 = commutator(&commutator(&c12, &a3), &a4)
                        + commutator(&a1, &commutator(&c23, &a4))
                        + commutator(&a1, &commutator(&a2, &commutator(&a3, &a4)))
                        + commutator(&a2, &commutator(&a3, &commutator(&a4, &a1)));
                    out += t4 * C64::from(w4 / 12.0);
                }
            }
        }
    }
    out
}

fn rule() -> Nested {
    let (x, w) = gauss_legendre::<f64>(NODES);
    // map [-1, 1] to [0, 1]
    Nested { x: x.iter().map(|v| 0.5 * (v + 1.0)).collect(), w: w.iter().map(|v| 0.5 * v).collect() }
}

fn guard(spec: &GeneratorSpec, mats: &[CMat], t0: f64, t1: f64, q: &Nested) -> Result<(), EvolutionError> {
    let total: f64 = q
        .x
        .iter()
        .zip(&q.w)
        .map(|(x, w)| (t1 - t0) * w * spectral_norm(&spec.matrix_from(mats, t0 + (t1 - t0) * x)))
        .sum();
    if total >= MAGNUS_GUARD {
        return Err(EvolutionError::MagnusGuard(total));
    }
    Ok(())
}

/// `exp(Ω)` for the Magnus series truncated at `order` (1..=4) on
/// `[t0, t1]`.
pub fn magnus_expand(
    spec: &GeneratorSpec,
    t0: f64,
    t1: f64,
    order: usize,
    rep: &(impl Realization<f64> + ?Sized),
) -> Result<CMat, EvolutionError> {
    if !(1..=4).contains(&order) {
        return Err(EvolutionError::MagnusOrder(order));
    }
    let mats = spec.realize_terms(rep);
    let q = rule();
    guard(spec, &mats, t0, t1, &q)?;
    Ok(mat_exp(&omega(spec, &mats, t0, t1, order, &q))?)
}

/// Magnus steps composed over each grid interval split into `substeps`
/// equal pieces.
pub fn evolve_magnus(
    spec: &GeneratorSpec,
    grid: &[f64],
    order: usize,
    substeps: usize,
    rep: &(impl Realization<f64> + ?Sized),
) -> Result<EvolutionPath, EvolutionError> {
    check_grid(grid)?;
    if !(1..=4).contains(&order) {
        return Err(EvolutionError::MagnusOrder(order));
    }
    let mats = spec.realize_terms(rep);
    spec.check_self_adjoint(&mats, grid.iter().copied())?;
    let q = rule();
    let d = rep.dim();
    let mut y = CMat::identity(d, d);
    let mut matrices = vec![y.clone()];
    let substeps = substeps.max(1);
    for w in grid.windows(2) {
        let h = (w[1] - w[0]) / substeps as f64;
        for s in 0..substeps {
            let a = w[0] + h * s as f64;
            let b = if s + 1 == substeps { w[1] } else { a + h };
            guard(spec, &mats, a, b, &q)?;
            y = mat_exp(&omega(spec, &mats, a, b, order, &q))? * y;
        }
        matrices.push(y.clone());
    }
    let defects = vec![0.0; grid.len()];
    Ok(EvolutionPath { method: Method::Magnus, times: grid.to_vec(), matrices, defects })
}
