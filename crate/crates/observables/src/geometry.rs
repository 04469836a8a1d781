use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;
use spq_algebra::{complex_structure, AlgebraBasis, Generator, Realization};
use spq_numerics::{mat_exp, max_abs, CMat, CVec, C64};

use crate::ObservableError;

/// Tensor product of one lowest-weight ladder per mode, realizing the
/// mode-diagonal subalgebra spanned by `h_i`, `e_ii`, `e†_ii`.
///
/// Mode `i` has basis `v_0 … v_{L−1}` with `h_i v_k = (λ_i + 2k) v_k`,
/// `e_ii v_k = v_{k+1}` and `e†_ii v_k = −4k(λ_i + k − 1) v_{k−1}`, so the
/// lowest weights `λ_i` may be complex. Relations hold below the top level.
#[derive(Debug, Clone)]
pub struct ModeLadder {
    weights: Vec<C64>,
    levels: usize,
}

impl ModeLadder {
    pub fn new(weights: Vec<C64>, levels: usize) -> Result<Self, ObservableError> {
        if weights.is_empty() || levels < 2 {
            return Err(ObservableError::Dimension { expected: 2, got: levels.min(weights.len()) });
        }
        Ok(ModeLadder { weights, levels })
    }

    /// `k` real lowest weights `λ` followed by `k′` imaginary ones `iλ`.
    pub fn signature(k: usize, k_prime: usize, lambda: f64, levels: usize) -> Result<Self, ObservableError> {
        let mut w = vec![C64::from(lambda); k];
        w.extend(std::iter::repeat_n(C64::new(0.0, lambda), k_prime));
        Self::new(w, levels)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn weights(&self) -> &[C64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.levels.pow(self.n() as u32)
    }

    /// The product of the per-mode `v_0`.
    pub fn ground(&self) -> CVec {
        let mut v = CVec::zeros(self.dim());
        v[0] = C64::from(1.0);
        v
    }

    /// Per-mode level of a basis index; mode 0 varies slowest.
    pub fn levels_of(&self, idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.n()];
        let mut r = idx;
        for i in (0..self.n()).rev() {
            out[i] = r % self.levels;
            r /= self.levels;
        }
        out
    }

    fn lift(&self, mode: usize, local: impl Fn(usize) -> Option<(usize, C64)>) -> CMat {
        let d = self.dim();
        let stride = self.levels.pow((self.n() - 1 - mode) as u32);
        let mut m = CMat::zeros(d, d);
        for col in 0..d {
            let k = (col / stride) % self.levels;
            if let Some((k2, c)) = local(k) {
                let row = col + k2 * stride - k * stride;
                m[(row, col)] = c;
            }
        }
        m
    }

    /// Matrix of a mode-diagonal generator, `None` otherwise.
    pub fn generator(&self, g: Generator) -> Option<CMat> {
        let top = self.levels - 1;
        match g {
            Generator::H(i) if i < self.n() => {
                let l = self.weights[i];
                Some(self.lift(i, |k| Some((k, l + C64::from(2.0 * k as f64)))))
            }
            Generator::E(i, j) if i == j && i < self.n() => Some(self.lift(i, |k| (k < top).then_some((k + 1, C64::from(1.0))))),
            Generator::EDag(i, j) if i == j && i < self.n() => {
                let l = self.weights[i];
                Some(self.lift(i, |k| {
                    (k > 0).then(|| (k - 1, C64::from(-4.0 * k as f64) * (l + C64::from(k as f64 - 1.0))))
                }))
            }
            _ => None,
        }
    }

    /// Basis states with every mode below the top level, where the ladder
    /// relations hold exactly.
    pub fn interior(&self) -> Vec<bool> {
        (0..self.dim()).map(|k| self.levels_of(k).iter().all(|l| *l + 1 < self.levels)).collect()
    }
}

/// Operator family `{E, E_i, E_{i,j}, E_{−i}, J}` realized as matrices.
#[derive(Debug, Clone)]
pub struct PreGeometry {
    n: usize,
    dim: usize,
    e: Vec<CMat>,
    e_minus: Vec<CMat>,
    pairs: Option<Vec<CMat>>,
    j: CMat,
}

impl PreGeometry {
    /// From a full realization; `J = exp(π/2 · ρ(½ Σ (e_k − e†_k)))`.
    pub fn from_realization(
        basis: &Arc<AlgebraBasis>,
        rep: &(impl Realization<f64> + ?Sized),
    ) -> Result<Self, ObservableError> {
        let n = basis.n();
        let e = (0..n).map(|i| rep.generator(Generator::E(i, i))).collect();
        let e_minus = (0..n).map(|i| rep.generator(Generator::EDag(i, i))).collect();
        let mut pairs = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                pairs.push(rep.generator(Generator::e(i, j)));
            }
        }
        let jx = rep.realize(&complex_structure::<f64>(basis)?);
        let j = mat_exp(&(jx * C64::from(FRAC_PI_2)))?;
        Ok(PreGeometry { n, dim: rep.dim(), e, e_minus, pairs: Some(pairs), j })
    }

    /// From a ladder; the `E_{i,j}` with `i ≠ j` are not available.
    pub fn from_ladder(ladder: &ModeLadder) -> Result<Self, ObservableError> {
        let n = ladder.n();
        let get = |g: Generator| ladder.generator(g).ok_or_else(|| ObservableError::Missing(g.to_string()));
        let e = (0..n).map(|i| get(Generator::E(i, i))).collect::<Result<Vec<_>, _>>()?;
        let e_minus = (0..n).map(|i| get(Generator::EDag(i, i))).collect::<Result<Vec<_>, _>>()?;
        let mut jx = CMat::zeros(ladder.dim(), ladder.dim());
        for i in 0..n {
            jx += (&e[i] - &e_minus[i]) * C64::from(0.5);
        }
        let j = mat_exp(&(jx * C64::from(FRAC_PI_2)))?;
        Ok(PreGeometry { n, dim: ladder.dim(), e, e_minus, pairs: None, j })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> CMat {
        CMat::identity(self.dim, self.dim)
    }

    pub fn e(&self, i: usize) -> &CMat {
        &self.e[i]
    }

    pub fn e_minus(&self, i: usize) -> &CMat {
        &self.e_minus[i]
    }

    pub fn pair(&self, i: usize, j: usize) -> Option<&CMat> {
        self.pairs.as_ref().map(|p| &p[i * self.n + j])
    }

    pub fn j(&self) -> &CMat {
        &self.j
    }

    /// `max_i ‖E_{−i} − E_i†‖`; zero exactly for *-realizations.
    pub fn adjoint_defect(&self) -> f64 {
        (0..self.n).map(|i| max_abs(&(&self.e_minus[i] - self.e[i].adjoint()))).fold(0.0, f64::max)
    }
}

/// Expectation values of the pre-geometry in one state.
#[derive(Debug, Clone, Serialize)]
pub struct GeometryVEV {
    /// `⟨{E_i, E_{−j}}⟩ / ⟨ψ|ψ⟩`.
    pub eta_raw: Vec<Vec<[f64; 2]>>,
    /// Symmetric part of `η_raw · η_raw / scale`.
    pub eta: Vec<Vec<[f64; 2]>>,
    /// `⟨E_{i,j} − E_{j,i}⟩ / ⟨ψ|ψ⟩` when the pair operators exist.
    pub omega: Option<Vec<Vec<[f64; 2]>>>,
    pub jvev: [f64; 2],
    pub norm: f64,
    pub scale: f64,
    /// Counts of positive and negative eigenvalues of `Re η`.
    pub signature: (usize, usize),
}

fn to_rows(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

fn from_rows(r: &[Vec<[f64; 2]>]) -> CMat {
    CMat::from_fn(r.len(), r.len(), |i, j| C64::new(r[i][j][0], r[i][j][1]))
}

impl GeometryVEV {
    pub fn eta_raw(&self) -> CMat {
        from_rows(&self.eta_raw)
    }

    pub fn eta(&self) -> CMat {
        from_rows(&self.eta)
    }

    pub fn omega(&self) -> Option<CMat> {
        self.omega.as_deref().map(from_rows)
    }

    pub fn jvev(&self) -> C64 {
        C64::new(self.jvev[0], self.jvev[1])
    }

    /// Largest entry of `η − ηᵀ`.
    pub fn symmetry_residual(&self) -> f64 {
        let e = self.eta();
        max_abs(&(&e - e.transpose()))
    }

    /// Largest entry of `Ω + Ωᵀ`, zero when Ω is absent.
    pub fn antisymmetry_residual(&self) -> f64 {
        self.omega().map(|o| max_abs(&(&o + o.transpose()))).unwrap_or(0.0)
    }

    /// Largest entry of the difference of the normalized metrics.
    pub fn eta_distance(&self, other: &GeometryVEV) -> f64 {
        max_abs(&(self.eta() - other.eta()))
    }
}

fn checked_norm(psi: &CVec, dim: usize) -> Result<f64, ObservableError> {
    if psi.len() != dim {
        return Err(ObservableError::Dimension { expected: dim, got: psi.len() });
    }
    let nn = psi.norm_squared();
    if nn <= f64::MIN_POSITIVE {
        return Err(ObservableError::ZeroNorm);
    }
    Ok(nn)
}

fn vev(op: &CMat, psi: &CVec, nn: f64) -> C64 {
    psi.dotc(&(op * psi)) / C64::from(nn)
}

fn signature(eta: &CMat) -> (usize, usize) {
    let re = DMatrix::from_fn(eta.nrows(), eta.ncols(), |i, j| eta[(i, j)].re);
    let vals = SymmetricEigen::new(re).eigenvalues;
    let tol = 1e-9 * vals.amax().max(1.0);
    (vals.iter().filter(|v| **v > tol).count(), vals.iter().filter(|v| **v < -tol).count())
}

fn geometry(
    psi: &CVec,
    geo: &PreGeometry,
    scale: Option<f64>,
    with_omega: bool,
) -> Result<GeometryVEV, ObservableError> {
    let nn = checked_norm(psi, geo.dim)?;
    let n = geo.n;
    let raw = CMat::from_fn(n, n, |i, j| {
        let anti = &geo.e[i] * &geo.e_minus[j] + &geo.e_minus[j] * &geo.e[i];
        vev(&anti, psi, nn)
    });
    let scale = scale.unwrap_or_else(|| {
        let s = (0..n).map(|i| raw[(i, i)].norm_sqr()).sum::<f64>() / n as f64;
        if s > 0.0 {
            s
        } else {
            1.0
        }
    });
    let sq = &raw * &raw / C64::from(scale);
    let eta = (&sq + sq.transpose()) * C64::from(0.5);
    let omega = if with_omega {
        let mut o = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let (a, b) = match (geo.pair(i, j), geo.pair(j, i)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(ObservableError::Missing(format!("E_({},{})", i + 1, j + 1))),
                };
                o[(i, j)] = vev(&(a - b), psi, nn);
            }
        }
        Some(to_rows(&o))
    } else {
        None
    };
    let jv = vev(&geo.j, psi, nn);
    Ok(GeometryVEV {
        signature: signature(&eta),
        eta_raw: to_rows(&raw),
        eta: to_rows(&eta),
        omega,
        jvev: [jv.re, jv.im],
        norm: nn,
        scale,
    })
}

/// Metric and complex-structure expectations. `scale` fixes the common
/// `|λ|²` normalization; by default it is the mean of `|η_raw,ii|²` in this
/// state.
pub fn vev_metric(psi: &CVec, geo: &PreGeometry, scale: Option<f64>) -> Result<GeometryVEV, ObservableError> {
    geometry(psi, geo, scale, false)
}

/// As [`vev_metric`], plus the antisymmetric form `⟨E_{i,j} − E_{j,i}⟩`.
pub fn vev_symplectic(psi: &CVec, geo: &PreGeometry, scale: Option<f64>) -> Result<GeometryVEV, ObservableError> {
    geometry(psi, geo, scale, true)
}

/// `⟨E_i⟩⟨E_{−j}⟩ − ⟨E_j⟩⟨E_{−i}⟩`.
pub fn expectation_wedge(psi: &CVec, geo: &PreGeometry) -> Result<CMat, ObservableError> {
    let nn = checked_norm(psi, geo.dim)?;
    let e: Vec<C64> = geo.e.iter().map(|m| vev(m, psi, nn)).collect();
    let em: Vec<C64> = geo.e_minus.iter().map(|m| vev(m, psi, nn)).collect();
    Ok(CMat::from_fn(geo.n, geo.n, |i, j| e[i] * em[j] - e[j] * em[i]))
}
