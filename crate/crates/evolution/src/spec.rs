use std::fmt;
use std::sync::Arc;

use spq_algebra::{AlgebraBasis, AlgebraElement, Realization};
use spq_numerics::{max_abs, CMat, C64};

use crate::EvolutionError;

/// Time-dependent scalar coefficient `α(t)`.
pub type Coefficient = Arc<dyn Fn(f64) -> C64 + Send + Sync>;

/// `H(t) = Σ_i α_i(t) g_i`.
#[derive(Clone)]
pub struct GeneratorSpec {
    basis: Arc<AlgebraBasis>,
    terms: Vec<(Coefficient, AlgebraElement<f64>)>,
    self_adjoint: bool,
}

impl fmt::Debug for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorSpec")
            .field("rank", &self.basis.n())
            .field("terms", &self.terms.len())
            .field("self_adjoint", &self.self_adjoint)
            .finish()
    }
}

impl GeneratorSpec {
    pub fn new(basis: &Arc<AlgebraBasis>, self_adjoint: bool) -> Self {
        GeneratorSpec { basis: basis.clone(), terms: Vec::new(), self_adjoint }
    }

    /// Adds `α(t) · x`.
    pub fn term(mut self, alpha: impl Fn(f64) -> C64 + Send + Sync + 'static, x: AlgebraElement<f64>) -> Self {
        self.terms.push((Arc::new(alpha), x));
        self
    }

    /// Adds `α(t) · x` with a real coefficient.
    pub fn real_term(self, alpha: impl Fn(f64) -> f64 + Send + Sync + 'static, x: AlgebraElement<f64>) -> Self {
        self.term(move |t| C64::from(alpha(t)), x)
    }

    /// Time-independent `x`.
    pub fn constant(basis: &Arc<AlgebraBasis>, x: AlgebraElement<f64>, self_adjoint: bool) -> Self {
        Self::new(basis, self_adjoint).real_term(|_| 1.0, x)
    }

    pub fn basis(&self) -> &Arc<AlgebraBasis> {
        &self.basis
    }

    pub fn self_adjoint(&self) -> bool {
        self.self_adjoint
    }

    pub fn with_self_adjoint(mut self, flag: bool) -> Self {
        self.self_adjoint = flag;
        self
    }

    pub fn terms(&self) -> &[(Coefficient, AlgebraElement<f64>)] {
        &self.terms
    }

    pub fn element_at(&self, t: f64) -> AlgebraElement<f64> {
        let mut x = AlgebraElement::zero(&self.basis);
        for (a, g) in &self.terms {
            x = &x + &g.scale(a(t));
        }
        x
    }

    /// Realized generator matrices, one per term.
    pub fn realize_terms(&self, rep: &(impl Realization<f64> + ?Sized)) -> Vec<CMat> {
        self.terms.iter().map(|(_, g)| rep.realize(g)).collect()
    }

    /// `H(t)` from pre-realized term matrices.
    pub fn matrix_from(&self, mats: &[CMat], t: f64) -> CMat {
        let d = mats.first().map_or(0, |m| m.nrows());
        let mut h = CMat::zeros(d, d);
        for ((a, _), m) in self.terms.iter().zip(mats) {
            h += m * a(t);
        }
        h
    }

    pub fn matrix_at(&self, rep: &(impl Realization<f64> + ?Sized), t: f64) -> CMat {
        self.matrix_from(&self.realize_terms(rep), t)
    }

    /// True when all term generators commute pairwise.
    pub fn is_commuting(&self) -> bool {
        self.terms.iter().enumerate().all(|(i, (_, a))| {
            self.terms[i + 1..]
                .iter()
                .all(|(_, b)| a.bracket(b).map(|c| c.norm() < 1e-12).unwrap_or(false))
        })
    }

    /// When flagged, checks `‖H − H†‖ < 1e−10` at the given times.
    pub fn check_self_adjoint(&self, mats: &[CMat], times: impl IntoIterator<Item = f64>) -> Result<(), EvolutionError> {
        if !self.self_adjoint {
            return Ok(());
        }
        for t in times {
            let h = self.matrix_from(mats, t);
            let d = max_abs(&(&h - h.adjoint()));
            if d >= 1e-10 {
                return Err(EvolutionError::NotSelfAdjoint(d, t));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<(), EvolutionError> {
    if grid.len() < 2 || grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().any(|t| !t.is_finite()) {
        return Err(EvolutionError::BadGrid);
    }
    Ok(())
}
