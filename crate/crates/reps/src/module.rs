use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;
use spq_algebra::{AlgebraBasis, Generator, Realization, Sector};
use spq_numerics::{commutator, hermitian_eigen, max_abs, CMat, CVec, C64};

use crate::fock::{FockKind, FockRealization};
use crate::{weyl_dimension_gl, RepError};

const WEIGHT_TOL: f64 = 1e-9;

/// Non-increasing integer labels of a `u(n)` module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self, RepError> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.is_empty() {
            return Err(RepError::BadPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.0.iter().all(|&p| p == self.0[0])
    }
}

/// A finite-dimensional space carrying (part of) an `sp(2n)` action, in a
/// basis of simultaneous Cartan eigenvectors.
#[derive(Debug, Clone)]
pub struct ModuleSpace {
    label: String,
    basis: Arc<AlgebraBasis>,
    /// Columns are the module vectors inside an ambient space, when there is one.
    ambient: Option<CMat>,
    weights: Vec<Vec<f64>>,
    lowest: usize,
    gram: CMat,
    /// Compressed action, `None` for generators not preserving the space.
    ops: Vec<Option<CMat>>,
    invariance_residual: f64,
    zminus_residual: f64,
}

impl ModuleSpace {
    /// The full representation space of `rep`.
    pub fn from_realization<R: Realization<f64> + ?Sized>(
        label: &str,
        basis: &Arc<AlgebraBasis>,
        rep: &R,
    ) -> Result<Self, RepError> {
        let ops = basis.labels().iter().map(|g| Some(rep.generator(*g))).collect();
        let d = rep.dim();
        Self::assemble(label, basis, None, CMat::identity(d, d), ops, 0.0)
    }

    pub fn trivial(basis: &Arc<AlgebraBasis>) -> Self {
        let ops = basis.labels().iter().map(|_| Some(CMat::zeros(1, 1))).collect();
        Self::assemble("trivial", basis, None, CMat::identity(1, 1), ops, 0.0).expect("1-dim is diagonal")
    }

    /// One-dimensional parabolic module `i_ab ↦ m δ_ab`, `ℨ₋ ↦ 0`; `ℨ₊` has
    /// no action.
    pub fn character(basis: &Arc<AlgebraBasis>, m: f64) -> Self {
        let ops = basis
            .labels()
            .iter()
            .map(|g| match g {
                Generator::H(_) => Some(CMat::from_element(1, 1, C64::from(m))),
                Generator::U(..) | Generator::EDag(..) => Some(CMat::zeros(1, 1)),
                Generator::E(..) => None,
            })
            .collect();
        Self::assemble(&format!("character({m})"), basis, None, CMat::identity(1, 1), ops, 0.0)
            .expect("1-dim is diagonal")
    }

    /// Module spanned by the orthonormal columns of `vectors` inside a Fock
    /// space, with the compressed action of the parabolic generators.
    /// Residuals of leaving the span are recorded, not enforced.
    pub fn from_span(label: &str, real: &FockRealization, vectors: CMat) -> Result<Self, RepError> {
        let basis = real.basis();
        let vh = vectors.adjoint();
        let mut ops = Vec::with_capacity(basis.len());
        let mut residual = 0.0f64;
        let mut zminus = 0.0f64;
        for g in basis.labels() {
            if g.sector() == Sector::ZPlus {
                ops.push(None);
                continue;
            }
            let gv: CMat = real.sparse_generator(*g) * &vectors;
            let comp = &vh * &gv;
            residual = residual.max(max_abs(&(&gv - &vectors * &comp)));
            if g.sector() == Sector::ZMinus {
                zminus = zminus.max(max_abs(&gv));
            }
            ops.push(Some(comp));
        }
        let gram = &vh * &vectors;
        let mut module = Self::assemble(label, basis, Some(vectors), gram, ops, residual)?;
        module.zminus_residual = zminus;
        Ok(module)
    }

    fn assemble(
        label: &str,
        basis: &Arc<AlgebraBasis>,
        ambient: Option<CMat>,
        gram: CMat,
        mut ops: Vec<Option<CMat>>,
        invariance_residual: f64,
    ) -> Result<Self, RepError> {
        let n = basis.n();
        let cartan: Vec<CMat> = (0..n).map(|i| cartan_op(basis, &ops, i)).collect();
        let d = cartan[0].nrows();
        let mut comm = 0.0f64;
        for a in 0..n {
            for b in 0..a {
                comm = comm.max(max_abs(&commutator(&cartan[a], &cartan[b])));
            }
        }
        if comm > WEIGHT_TOL {
            return Err(RepError::NonCommutingCartan(comm));
        }
        // Irrational mixing separates distinct integer weights.
        let mix = [1.0, std::f64::consts::PI / 7.0, std::f64::consts::E / 13.0, std::f64::consts::SQRT_2 / 29.0];
        let mut m = CMat::zeros(d, d);
        for (i, h) in cartan.iter().enumerate() {
            m += h * C64::from(mix[i]);
        }
        let herm = max_abs(&(&m - m.adjoint()));
        if herm > WEIGHT_TOL {
            return Err(RepError::NonNormalCartan(herm));
        }
        let (_, v) = hermitian_eigen(&m);
        let vh = v.adjoint();
        for op in ops.iter_mut().flatten() {
            *op = &vh * &*op * &v;
        }
        let ambient = ambient.map(|a| a * &v);
        let gram = &vh * gram * &v;
        let weights: Vec<Vec<f64>> = (0..d)
            .map(|k| (0..n).map(|i| clean(cartan_op(basis, &ops, i)[(k, k)].re)).collect())
            .collect();
        let lowest = (0..d)
            .min_by(|&a, &b| lex(&weights[a], &weights[b]).then(a.cmp(&b)))
            .unwrap_or(0);
        let zminus_residual = match &ambient {
            Some(_) => f64::NAN,
            None => 0.0,
        };
        Ok(ModuleSpace {
            label: label.to_string(),
            basis: basis.clone(),
            ambient,
            weights,
            lowest,
            gram,
            ops,
            invariance_residual,
            zminus_residual,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis(&self) -> &Arc<AlgebraBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn lowest(&self) -> usize {
        self.lowest
    }

    pub fn gram(&self) -> &CMat {
        &self.gram
    }

    pub fn ambient(&self) -> Option<&CMat> {
        self.ambient.as_ref()
    }

    /// Compressed matrix of a generator, if it preserves the space.
    pub fn action(&self, g: Generator) -> Option<&CMat> {
        let k = self.basis.index_of(g).ok()?;
        self.ops[k].as_ref()
    }

    /// The `u(n)` block `𝕌_ab` (0-based), i.e. the action of `i_ab`.
    pub fn unitary_block(&self, a: usize, b: usize) -> Option<&CMat> {
        self.action(if a == b { Generator::H(a) } else { Generator::U(a, b) })
    }

    /// Largest residual of a parabolic generator leaving the span.
    pub fn invariance_residual(&self) -> f64 {
        self.invariance_residual
    }

    /// Largest `‖ρ(e†_ab) v‖` over module vectors.
    pub fn zminus_residual(&self) -> f64 {
        if self.zminus_residual.is_nan() {
            return self.zminus_from_ops();
        }
        self.zminus_residual.max(self.zminus_from_ops())
    }

    fn zminus_from_ops(&self) -> f64 {
        self.basis
            .labels()
            .iter()
            .zip(&self.ops)
            .filter(|(g, _)| g.sector() == Sector::ZMinus)
            .filter_map(|(_, op)| op.as_ref())
            .fold(0.0, |m, op| m.max(max_abs(op)))
    }

    /// Smallest Gram eigenvalue.
    pub fn gram_floor(&self) -> f64 {
        let (vals, _) = hermitian_eigen(&self.gram);
        vals.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest off-diagonal entry of any Cartan action.
    pub fn eigen_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.basis.n() {
            let h = cartan_op(&self.basis, &self.ops, i);
            for r in 0..h.nrows() {
                for c in 0..h.ncols() {
                    if r != c {
                        worst = worst.max(h[(r, c)].norm());
                    }
                }
            }
        }
        worst
    }

    pub fn export(&self) -> ModuleExport {
        let generators = self
            .basis
            .labels()
            .iter()
            .zip(&self.ops)
            .filter_map(|(g, op)| {
                op.as_ref().map(|m| GeneratorExport {
                    name: g.to_string(),
                    entries: nonzero(m),
                })
            })
            .collect();
        ModuleExport {
            label: self.label.clone(),
            dim: self.dim(),
            lowest: self.lowest,
            weights: self.weights.clone(),
            gram: nonzero(&self.gram),
            generators,
        }
    }
}

fn cartan_op(basis: &AlgebraBasis, ops: &[Option<CMat>], i: usize) -> CMat {
    let k = basis.index_of(Generator::H(i)).expect("cartan generator");
    ops[k].clone().expect("cartan generators always act")
}

fn clean(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r + 0.0
    } else {
        x
    }
}

fn lex(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > WEIGHT_TOL {
            return x.partial_cmp(y).unwrap_or(Ordering::Equal);
        }
    }
    Ordering::Equal
}

fn nonzero(m: &CMat) -> Vec<(usize, usize, f64, f64)> {
    let mut out = Vec::new();
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            let v = m[(r, c)];
            if v.norm() > 1e-12 {
                out.push((r, c, v.re, v.im));
            }
        }
    }
    out.sort_by_key(|a| (a.0, a.1));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorExport {
    pub name: String,
    /// `(row, col, re, im)`.
    pub entries: Vec<(usize, usize, f64, f64)>,
}

/// JSON-ready view of a module.
#[derive(Debug, Clone, Serialize)]
pub struct ModuleExport {
    pub label: String,
    pub dim: usize,
    pub lowest: usize,
    pub weights: Vec<Vec<f64>>,
    pub gram: Vec<(usize, usize, f64, f64)>,
    pub generators: Vec<GeneratorExport>,
}

/// One weight and the module vectors carrying it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightSpace {
    pub weight: Vec<f64>,
    pub indices: Vec<usize>,
}

impl WeightSpace {
    pub fn multiplicity(&self) -> usize {
        self.indices.len()
    }
}

/// Groups the module basis by weight, in ascending lexicographic order.
pub fn weight_decompose(space: &ModuleSpace) -> Result<Vec<WeightSpace>, RepError> {
    let n = space.basis.n();
    let cartan: Vec<CMat> = (0..n).map(|i| cartan_op(&space.basis, &space.ops, i)).collect();
    for a in 0..n {
        for b in 0..a {
            let c = max_abs(&commutator(&cartan[a], &cartan[b]));
            if c > WEIGHT_TOL {
                return Err(RepError::NonCommutingCartan(c));
            }
        }
    }
    let defect = space.eigen_defect();
    if defect > WEIGHT_TOL {
        return Err(RepError::NonNormalCartan(defect));
    }
    let mut order: Vec<usize> = (0..space.dim()).collect();
    order.sort_by(|&a, &b| lex(&space.weights[a], &space.weights[b]).then(a.cmp(&b)));
    let mut out: Vec<WeightSpace> = Vec::new();
    for k in order {
        match out.last_mut() {
            Some(last) if lex(&last.weight, &space.weights[k]) == Ordering::Equal => last.indices.push(k),
            _ => out.push(WeightSpace { weight: space.weights[k].clone(), indices: vec![k] }),
        }
    }
    Ok(out)
}

/// A weight vector labelled by its `U(n)` charges.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Particle {
    pub index: usize,
    pub weight: Vec<f64>,
    pub charges: Vec<f64>,
    pub neutral: bool,
}

/// Charges are `|w_i| / normalization`.
pub fn particle_spectrum(space: &ModuleSpace, normalization: f64) -> Vec<Particle> {
    space
        .weights
        .iter()
        .enumerate()
        .map(|(index, w)| {
            let charges: Vec<f64> = w.iter().map(|x| x.abs() / normalization).collect();
            let neutral = charges.iter().all(|c| *c < WEIGHT_TOL);
            Particle { index, weight: w.clone(), charges, neutral }
        })
        .collect()
}

/// Span of repeated `u(n)` action on the lowest-weight vector of the
/// paired Fock realization.
///
/// Supported labels: `[N, 0, …, 0]` (symmetric powers in the minus modes),
/// the zero partition (Fock vacuum) and `[m, …, m]` (a character module that
/// lives outside the Fock space).
pub fn u4_lowest_module(real: &FockRealization, partition: &Partition) -> Result<ModuleSpace, RepError> {
    if real.kind() != FockKind::Paired {
        return Err(RepError::WrongKind("paired"));
    }
    let basis = real.basis();
    let n = basis.n();
    let parts = partition.parts();
    if parts.len() != n {
        return Err(RepError::UnsupportedPartition(parts.to_vec()));
    }
    if partition.is_degenerate() && parts[0] != 0 {
        return Ok(ModuleSpace::character(basis, parts[0] as f64));
    }
    let top = parts[0];
    if parts[1..].iter().any(|&p| p != 0) || top < 0 {
        return Err(RepError::UnsupportedPartition(parts.to_vec()));
    }
    let top = top as usize;
    let space = real.space();
    if top > space.cutoff() {
        return Err(RepError::CutoffTooSmall {
            cutoff: space.cutoff(),
            need: format!("total occupation {top}"),
        });
    }
    let mut occ = vec![0u8; 2 * n];
    occ[n] = top as u8;
    let seed = space.index_of(&occ).expect("state within cutoff");
    let d = space.dim();
    let mut seed_vec = CVec::zeros(d);
    seed_vec[seed] = C64::from(1.0);

    let unitary: Vec<Generator> = basis.labels().iter().copied().filter(|g| g.sector() == Sector::Unitary).collect();
    let mut span: Vec<CVec> = vec![seed_vec];
    let mut cursor = 0;
    while cursor < span.len() {
        let v = span[cursor].clone();
        cursor += 1;
        for g in &unitary {
            let w = real.sparse_generator(*g) * &v;
            if let Some(u) = orthogonalize(&span, w) {
                span.push(u);
            }
        }
    }
    let vmat = CMat::from_columns(&span);
    let expected = weyl_dimension_gl(parts)?;
    if span.len() as u128 != expected {
        return Err(RepError::NotInvariant(span.len() as f64 - expected as f64));
    }
    ModuleSpace::from_span(&format!("u({n}) {:?}", parts), real, vmat)
}

fn orthogonalize(span: &[CVec], mut w: CVec) -> Option<CVec> {
    let scale = w.norm();
    if scale < 1e-12 {
        return None;
    }
    for _ in 0..2 {
        for u in span {
            let c = u.dotc(&w);
            w -= u * c;
        }
    }
    let r = w.norm();
    (r > 1e-8 * scale.max(1.0)).then(|| w / C64::from(r))
}
