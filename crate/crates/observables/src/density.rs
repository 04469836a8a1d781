use spq_coherent::{resolution_measure, resolution_normalization, PolyWavefunction, SymCoord, CONTRACTION_GUARD};
use spq_numerics::{disc_quadrature, C64};
use spq_reps::InducedRepSpec;

use crate::ObservableError;

/// `N(ψ, ψ′) = ∫ ψ(z)† ℙ(z) ψ′(z) d²z` over the unit disc (rank 1), with a
/// disc rule of the given order and the matching normalization.
pub fn number_density(
    a: &PolyWavefunction,
    b: &PolyWavefunction,
    spec: &InducedRepSpec,
    order: usize,
) -> Result<C64, ObservableError> {
    if spec.n() != 1 || a.n() != 1 || b.n() != 1 {
        return Err(ObservableError::RankOneOnly("number density"));
    }
    let d = spec.module().dim();
    for psi in [a, b] {
        if psi.shape() != (d, 1) {
            return Err(ObservableError::Dimension { expected: d, got: psi.shape().0 });
        }
    }
    let norm = resolution_normalization(spec, order)?;
    let rule = disc_quadrature::<f64>(order)?;
    let mut acc = C64::from(0.0);
    for (p, w) in rule.nodes.iter().zip(&rule.weights) {
        if p.norm() >= 1.0 - CONTRACTION_GUARD {
            return Err(ObservableError::Contraction(p.norm()));
        }
        let z = SymCoord::from_vars(1, &[*p]);
        let measure = resolution_measure(&z, spec, norm)?;
        let (va, vb) = (a.evaluate(&z), b.evaluate(&z));
        acc += (va.adjoint() * measure * vb)[(0, 0)] * C64::from(*w);
    }
    Ok(acc)
}
