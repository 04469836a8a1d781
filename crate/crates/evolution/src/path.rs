use serde::Serialize;
use spq_numerics::{frobenius, hermitian_eigen, CMat, C64};

/// Which integrator produced a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Ode,
    Magnus,
    WeiNorman,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Ode => "ode",
            Method::Magnus => "magnus",
            Method::WeiNorman => "wei-norman",
        }
    }
}

/// Group elements `h(t_k)` on a grid, `h(t_0) = Id`.
#[derive(Debug, Clone)]
pub struct EvolutionPath {
    pub method: Method,
    pub times: Vec<f64>,
    pub matrices: Vec<CMat>,
    /// Per-interval error estimates (empty entry for the initial node).
    pub defects: Vec<f64>,
}

impl EvolutionPath {
    pub fn last(&self) -> &CMat {
        self.matrices.last().expect("non-empty path")
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `max_k ‖h(t_k)†h(t_k) − Id‖_F`.
    pub fn unitarity_drift(&self) -> f64 {
        self.matrices
            .iter()
            .map(|h| {
                let id = CMat::identity(h.nrows(), h.ncols());
                frobenius(&(h.adjoint() * h - id))
            })
            .fold(0.0, f64::max)
    }

    /// `max_k ‖h_k − h'_k‖_F` over a shared grid.
    pub fn max_distance(&self, other: &EvolutionPath) -> f64 {
        assert_eq!(self.times.len(), other.times.len(), "paths on different grids");
        self.matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| frobenius(&(a - b)))
            .fold(0.0, f64::max)
    }

    pub fn max_defect(&self) -> f64 {
        self.defects.iter().copied().fold(0.0, f64::max)
    }

    /// Flattened `(t, row, col, re, im)` rows.
    pub fn rows(&self) -> Vec<PathRow> {
        let mut out = Vec::new();
        for (t, h) in self.times.iter().zip(&self.matrices) {
            for r in 0..h.nrows() {
                for c in 0..h.ncols() {
                    out.push(PathRow { method: self.method.name(), t: *t, row: r, col: c, re: h[(r, c)].re, im: h[(r, c)].im });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathRow {
    pub method: &'static str,
    pub t: f64,
    pub row: usize,
    pub col: usize,
    pub re: f64,
    pub im: f64,
}

/// Unitary polar factor `h (h†h)^{-1/2}`.
pub(crate) fn unitarize(h: &CMat) -> CMat {
    let (vals, v) = hermitian_eigen(&(h.adjoint() * h));
    let inv_sqrt = CMat::from_diagonal(&vals.map(|x| C64::from(1.0 / x.max(f64::MIN_POSITIVE).sqrt())));
    h * (&v * inv_sqrt * v.adjoint())
}
