use spq_numerics::{commutator, CMat, CVec, C64};

use crate::ObservableError;

/// Bilinear form closing `ℒ`.
#[derive(Debug, Clone)]
pub enum LagrangianForm {
    /// Killing form `(2n + 2) tr(XY)` of the defining matrices.
    Killing { rank: usize },
    /// `½⟨ψ₀| |D_t G|² ψ₀⟩` in a Hilbert-space realization.
    State(CVec),
}

/// `ℒ(t) = ½ B(D_t x, (D_t x)†)` with `D_t = d/dt − ad(iH̃)`, whose kernel
/// is the Heisenberg flow `dx/dt = i[H̃, x]`. Derivatives are second-order
/// finite differences on an evenly spaced grid.
pub fn lagrangian_density(
    times: &[f64],
    trajectory: &[CMat],
    h_tilde: &CMat,
    form: &LagrangianForm,
) -> Result<Vec<f64>, ObservableError> {
    let m = times.len();
    if m < 3 || trajectory.len() != m {
        return Err(ObservableError::BadGrid);
    }
    let dt = times[1] - times[0];
    if !(dt > 0.0) || times.windows(2).any(|w| ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.max(1.0)) {
        return Err(ObservableError::BadGrid);
    }
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let x = &trajectory;
        let deriv = if k == 0 {
            (&x[1] * C64::from(4.0) - &x[0] * C64::from(3.0) - &x[2]) / C64::from(2.0 * dt)
        } else if k == m - 1 {
            (&x[k] * C64::from(3.0) - &x[k - 1] * C64::from(4.0) + &x[k - 2]) / C64::from(2.0 * dt)
        } else {
            (&x[k + 1] - &x[k - 1]) / C64::from(2.0 * dt)
        };
        let d = deriv - commutator(h_tilde, &x[k]) * C64::i();
        let value = match form {
            LagrangianForm::Killing { rank } => 0.5 * (2 * rank + 2) as f64 * (&d * d.adjoint()).trace().re,
            LagrangianForm::State(psi) => {
                if psi.len() != d.nrows() {
                    return Err(ObservableError::Dimension { expected: d.nrows(), got: psi.len() });
                }
                0.5 * (&d * psi).norm_squared()
            }
        };
        out.push(value);
    }
    Ok(out)
}
