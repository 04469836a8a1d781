use spq_coherent::{model, PolyWavefunction};
use spq_numerics::{CVec, C64};
use spq_reps::InducedRepSpec;

use crate::spec::check_grid;
use crate::{EvolutionError, EvolutionPath, GeneratorSpec};

/// Wavefunctions on the grid with the weight dropped by the degree cap.
#[derive(Debug, Clone)]
pub struct SchrodingerTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<PolyWavefunction>,
    pub truncation_defect: f64,
}

/// `dΨ/dt = −i Ĥ(t) Ψ` in the polynomial model with RK4 (`substeps` per
/// interval). Terms above `max_degree` are dropped and their size
/// accumulated; exceeding `1e−8` is an error.
pub fn schrodinger_evolve(
    psi: &PolyWavefunction,
    spec: &GeneratorSpec,
    induced: &InducedRepSpec,
    grid: &[f64],
    max_degree: usize,
    substeps: usize,
) -> Result<SchrodingerTrajectory, EvolutionError> {
    check_grid(grid)?;
    if induced.n() != spec.basis().n() {
        return Err(EvolutionError::RealizationMismatch("rank of module and generator differ".into()));
    }
    let mut dropped = 0.0f64;
    let rhs = |t: f64, y: &PolyWavefunction, dropped: &mut f64| {
        let out = model(&spec.element_at(t), induced).apply(y).scale(C64::new(0.0, -1.0));
        let kept = out.truncate(max_degree);
        *dropped = dropped.max(out.sub(&kept).max_abs());
        kept
    };
    let mut y = psi.truncate(max_degree);
    let mut states = vec![y.clone()];
    let steps = substeps.max(1);
    for w in grid.windows(2) {
        let h = (w[1] - w[0]) / steps as f64;
        for s in 0..steps {
            let t = w[0] + h * s as f64;
            let k1 = rhs(t, &y, &mut dropped);
            let k2 = rhs(t + h / 2.0, &y.add(&k1.scale(C64::from(h / 2.0))), &mut dropped);
            let k3 = rhs(t + h / 2.0, &y.add(&k2.scale(C64::from(h / 2.0))), &mut dropped);
            let k4 = rhs(t + h, &y.add(&k3.scale(C64::from(h))), &mut dropped);
            let inc = k1.add(&k2.scale(C64::from(2.0))).add(&k3.scale(C64::from(2.0))).add(&k4);
            y = y.add(&inc.scale(C64::from(h / 6.0)));
            if dropped > 1e-8 {
                return Err(EvolutionError::TruncationOverflow { cap: max_degree, dropped });
            }
        }
        states.push(y.clone());
    }
    Ok(SchrodingerTrajectory { times: grid.to_vec(), states, truncation_defect: dropped })
}

/// `ψ(t_k) = h(t_k) ψ` along a matrix path.
pub fn schrodinger_vectors(path: &EvolutionPath, psi: &CVec) -> Vec<CVec> {
    path.matrices.iter().map(|h| h * psi).collect()
}
