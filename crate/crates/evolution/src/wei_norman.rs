use std::sync::Arc;

use nalgebra::DVector;
use spq_algebra::{AdjointRep, AlgebraBasis, Realization, Sector};
use spq_numerics::{mat_exp, CMat, C64};

use crate::spec::check_grid;
use crate::{EvolutionError, EvolutionPath, GeneratorSpec, Method};

/// Basis indices in the order `ℨ₊`, `𝔘`, `ℨ₋`.
pub fn parabolic_ordering(basis: &AlgebraBasis) -> Vec<usize> {
    [Sector::ZPlus, Sector::Unitary, Sector::ZMinus]
        .iter()
        .flat_map(|s| basis.sector_indices(*s))
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct WeiNormanOptions {
    /// RK4 substeps per grid interval.
    pub substeps: usize,
    /// Frames with `σ_min / σ_max` below this are treated as singular.
    pub min_condition: f64,
}

impl Default for WeiNormanOptions {
    fn default() -> Self {
        WeiNormanOptions { substeps: 20, min_condition: 1e-10 }
    }
}

/// Coordinates `γ_k(t)` of `h(t) = Π_k exp(−i γ_k g_k)` (leftmost factor
/// first in `ordering`).
#[derive(Debug, Clone)]
pub struct WeiNormanCoords {
    pub basis: Arc<AlgebraBasis>,
    pub ordering: Vec<usize>,
    pub times: Vec<f64>,
    pub gammas: Vec<Vec<C64>>,
    /// Largest least-squares residual of the velocity solve per interval.
    pub defects: Vec<f64>,
}

impl WeiNormanCoords {
    /// Rebuilds `h(t_k)` in a realization.
    pub fn reconstruct(&self, rep: &(impl Realization<f64> + ?Sized)) -> Result<EvolutionPath, EvolutionError> {
        let gens: Vec<CMat> = self.ordering.iter().map(|&k| rep.generator(self.basis.label(k))).collect();
        let matrices = self
            .gammas
            .iter()
            .map(|g| product(&gens, g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EvolutionPath {
            method: Method::WeiNorman,
            times: self.times.clone(),
            matrices,
            defects: self.defects.clone(),
        })
    }

    /// `γ` of one generator along the grid.
    pub fn series(&self, index: usize) -> Option<Vec<C64>> {
        let pos = self.ordering.iter().position(|&k| k == index)?;
        Some(self.gammas.iter().map(|g| g[pos]).collect())
    }
}

/// `exp(−iγ X)`, by a terminating series when `X` is nilpotent or diagonal.
fn exp_factor(x: &CMat, gamma: C64) -> Result<CMat, EvolutionError> {
    let d = x.nrows();
    if gamma == C64::from(0.0) {
        return Ok(CMat::identity(d, d));
    }
    let a = x * (gamma * C64::new(0.0, -1.0));
    let off_diag = (0..d).any(|r| (0..d).any(|c| r != c && a[(r, c)] != C64::from(0.0)));
    if !off_diag {
        return Ok(CMat::from_diagonal(&a.diagonal().map(|z| z.exp())));
    }
    let mut sum = CMat::identity(d, d);
    let mut term = CMat::identity(d, d);
    for k in 1..=8 {
        term = &term * &a / C64::from(k as f64);
        if term.iter().all(|z| *z == C64::from(0.0)) {
            return Ok(sum);
        }
        sum += &term;
    }
    Ok(mat_exp(&a)?)
}

fn product(gens: &[CMat], gammas: &[C64]) -> Result<CMat, EvolutionError> {
    let d = gens[0].nrows();
    let mut h = CMat::identity(d, d);
    for (g, c) in gens.iter().zip(gammas) {
        h *= exp_factor(g, *c)?;
    }
    Ok(h)
}

struct Frame<'a> {
    spec: &'a GeneratorSpec,
    ad: Vec<CMat>,
    ordering: &'a [usize],
    min_condition: f64,
}

impl Frame<'_> {
    /// Solves `Σ_k γ̇_k Ad(P_{k−1}) g_k = H(t)` in basis coordinates.
    fn velocity(&self, t: f64, gammas: &[C64]) -> Result<(Vec<C64>, f64), EvolutionError> {
        let dim = self.spec.basis().len();
        let mut frame = CMat::zeros(dim, self.ordering.len());
        let mut acc = CMat::identity(dim, dim);
        for (col, (&k, g)) in self.ordering.iter().zip(gammas).enumerate() {
            frame.set_column(col, &acc.column(k));
            acc *= exp_factor(&self.ad[col], *g)?;
        }
        let rhs = DVector::from_column_slice(self.spec.element_at(t).coeffs());
        let svd = frame.clone().svd(true, true);
        let sv = &svd.singular_values;
        let (hi, lo) = sv.iter().fold((0.0f64, f64::INFINITY), |(h, l), s| (h.max(*s), l.min(*s)));
        let condition = if hi > 0.0 { lo / hi } else { 0.0 };
        if condition < self.min_condition {
            return Err(EvolutionError::SingularFrame { t, condition });
        }
        let sol = svd.solve(&rhs, 0.0).map_err(|_| EvolutionError::SingularFrame { t, condition })?;
        let residual = (&frame * &sol - &rhs).norm() / rhs.norm().max(1.0);
        if residual > 1e-8 {
            return Err(EvolutionError::NotSpanned { t, residual });
        }
        Ok((sol.iter().copied().collect(), residual))
    }
}

fn axpy(y: &[C64], k: &[C64], h: f64) -> Vec<C64> {
    y.iter().zip(k).map(|(a, b)| a + b * h).collect()
}

/// Integrates the Wei–Norman velocity system with RK4. `ordering` lists
/// basis indices; it defaults to [`parabolic_ordering`] when `None`.
pub fn wei_norman(
    spec: &GeneratorSpec,
    grid: &[f64],
    ordering: Option<&[usize]>,
    options: WeiNormanOptions,
) -> Result<WeiNormanCoords, EvolutionError> {
    check_grid(grid)?;
    let basis = spec.basis().clone();
    let default_order = parabolic_ordering(&basis);
    let ordering = ordering.unwrap_or(&default_order);
    if ordering.iter().any(|&k| k >= basis.len()) {
        return Err(EvolutionError::RealizationMismatch("ordering index outside the basis".into()));
    }
    let adjoint = AdjointRep::new(basis.clone());
    let ad: Vec<CMat> = ordering.iter().map(|&k| Realization::<f64>::generator(&adjoint, basis.label(k))).collect();
    let frame = Frame { spec, ad, ordering, min_condition: options.min_condition };
    let mut y = vec![C64::from(0.0); ordering.len()];
    let mut gammas = vec![y.clone()];
    let mut defects = vec![0.0];
    let steps = options.substeps.max(1);
    for w in grid.windows(2) {
        let h = (w[1] - w[0]) / steps as f64;
        let mut worst = 0.0f64;
        for s in 0..steps {
            let t = w[0] + h * s as f64;
            let (k1, r1) = frame.velocity(t, &y)?;
            let (k2, r2) = frame.velocity(t + h / 2.0, &axpy(&y, &k1, h / 2.0))?;
            let (k3, r3) = frame.velocity(t + h / 2.0, &axpy(&y, &k2, h / 2.0))?;
            let (k4, r4) = frame.velocity(t + h, &axpy(&y, &k3, h))?;
            for i in 0..y.len() {
                y[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
            }
            worst = worst.max(r1).max(r2).max(r3).max(r4);
        }
        gammas.push(y.clone());
        defects.push(worst);
    }
    Ok(WeiNormanCoords { basis, ordering: ordering.to_vec(), times: grid.to_vec(), gammas, defects })
}
