use spq_algebra::{AlgebraElement, AlgebraError};
use spq_numerics::CMat;

use crate::{ModuleSpace, Partition, RepError};

/// `|det Ad(exp x)|` on the subalgebra spanned by `subalgebra` (basis
/// indices), computed as `exp(Re tr ad x|_sub)`.
pub fn modular_function(x: &AlgebraElement<f64>, subalgebra: &[usize]) -> Result<f64, RepError> {
    let basis = x.basis();
    for k in x.support(0.0) {
        if !subalgebra.contains(&k) {
            return Err(AlgebraError::SupportViolation.into());
        }
    }
    let mut trace = 0.0;
    for &b in subalgebra {
        let col = x.bracket(&AlgebraElement::basis_vector(basis, b))?;
        trace += col.coeffs()[b].re;
    }
    Ok(trace.exp())
}

/// Data of a representation induced from a parabolic module, extended
/// trivially on `ℨ₋`.
#[derive(Debug, Clone)]
pub struct InducedRepSpec {
    partition: Partition,
    module: ModuleSpace,
    shift: f64,
    parabolic: Vec<usize>,
}

impl InducedRepSpec {
    /// `shift` adds a central character `i_ab ↦ shift·δ_ab`; the coherent
    /// state kernel needs it large enough to be positive.
    pub fn new(partition: Partition, module: ModuleSpace, shift: f64) -> Self {
        let parabolic = module.basis().parabolic_indices();
        InducedRepSpec { partition, module, shift, parabolic }
    }

    /// Shift `n + 1`.
    pub fn with_default_shift(partition: Partition, module: ModuleSpace) -> Self {
        let n = module.basis().n() as f64;
        Self::new(partition, module, n + 1.0)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn module(&self) -> &ModuleSpace {
        &self.module
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn n(&self) -> usize {
        self.module.basis().n()
    }

    /// Extension of the module to `ℨ₋` is by zero.
    pub fn trivial_on_zminus(&self) -> bool {
        self.module.zminus_residual() < 1e-9
    }

    /// Shifted `𝕌_ab` (0-based).
    pub fn u_matrix(&self, a: usize, b: usize) -> CMat {
        let mut m = self.module.unitary_block(a, b).cloned().expect("u(n) acts on the module");
        if a == b {
            for k in 0..m.nrows() {
                m[(k, k)] += self.shift;
            }
        }
        m
    }

    /// `N(exp x) = (Δ_P / Δ_G)^{1/2}` for `x` in the parabolic subalgebra.
    pub fn normalization(&self, x: &AlgebraElement<f64>) -> Result<f64, RepError> {
        let all: Vec<usize> = (0..x.basis().len()).collect();
        let p = modular_function(x, &self.parabolic)?;
        let g = modular_function(x, &all)?;
        Ok((p / g).sqrt())
    }
}
