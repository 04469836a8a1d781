use std::collections::HashMap;

use nalgebra_sparse::{CooMatrix, CsrMatrix};
use spq_algebra::{AlgebraElement, Generator};
use spq_numerics::{CMat, C64};
use spq_reps::InducedRepSpec;

use crate::poly::{monomials, total};
use crate::{CoherentError, PolyWavefunction, SymCoord, VarIndex};

/// `coeff · z^mul · ∂_diff ⊗ module`, derivative acting first.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: C64,
    pub mul: Vec<u8>,
    pub diff: Option<usize>,
    /// `None` is the identity on the module.
    pub module: Option<CMat>,
}

/// First-order differential operator with polynomial coefficients acting on
/// module-valued polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct CsOperator {
    n: usize,
    module_dim: usize,
    terms: Vec<Term>,
}

impl CsOperator {
    pub fn zero(n: usize, module_dim: usize) -> Self {
        CsOperator { n, module_dim, terms: Vec::new() }
    }

    pub fn identity(n: usize, module_dim: usize) -> Self {
        let mut op = Self::zero(n, module_dim);
        op.push(C64::from(1.0), &[], None, None);
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Appends `coeff · Π z_{vars} · ∂_diff ⊗ module`.
    pub fn push(&mut self, coeff: C64, vars: &[usize], diff: Option<usize>, module: Option<CMat>) {
        let mut mul = vec![0u8; VarIndex::new(self.n).count()];
        for &v in vars {
            mul[v] += 1;
        }
        self.terms.push(Term { coeff, mul, diff, module });
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= s;
        }
        out
    }

    /// Smallest and largest change of polynomial degree over the terms.
    pub fn degree_shift(&self) -> (i64, i64) {
        let shifts = self
            .terms
            .iter()
            .map(|t| total(&t.mul) as i64 - t.diff.map_or(0, |_| 1));
        let lo = shifts.clone().min().unwrap_or(0);
        let hi = shifts.max().unwrap_or(0);
        (lo, hi)
    }

    pub fn apply(&self, psi: &PolyWavefunction) -> PolyWavefunction {
        let (rows, cols) = psi.shape();
        assert_eq!(rows, self.module_dim, "module dimension");
        let mut out = PolyWavefunction::zero(self.n, rows, cols);
        for (e, v) in psi.terms() {
            for t in &self.terms {
                let mut exps = e.clone();
                let mut c = t.coeff;
                if let Some(k) = t.diff {
                    if exps[k] == 0 {
                        continue;
                    }
                    c *= exps[k] as f64;
                    exps[k] -= 1;
                }
                for (x, m) in exps.iter_mut().zip(&t.mul) {
                    *x += m;
                }
                let value = match &t.module {
                    Some(m) => m * v * c,
                    None => v * c,
                };
                out.add_term(exps, value);
            }
        }
        out
    }
}

/// An `n × n` array of operators, indexed `(k, l)` row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    n: usize,
    entries: Vec<CsOperator>,
}

impl OperatorMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, l: usize) -> &CsOperator {
        &self.entries[k * self.n + l]
    }

    fn build(n: usize, f: impl Fn(usize, usize) -> CsOperator) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                entries.push(f(k, l));
            }
        }
        OperatorMatrix { n, entries }
    }
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

fn blocks(spec: &InducedRepSpec) -> Vec<CMat> {
    let n = spec.n();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            out.push(spec.u_matrix(a, b));
        }
    }
    out
}

fn module_dim(spec: &InducedRepSpec) -> usize {
    spec.module().dim()
}

fn lowering_entry(n: usize, m: usize, k: usize, l: usize) -> CsOperator {
    let idx = VarIndex::new(n);
    let mut op = CsOperator::zero(n, m);
    op.push(C64::from(1.0 + delta(k, l)), &[], Some(idx.of(k, l)), None);
    op
}

fn u_entry(n: usize, m: usize, u: &[CMat], k: usize, l: usize) -> CsOperator {
    let idx = VarIndex::new(n);
    let mut op = CsOperator::zero(n, m);
    for b in 0..n {
        op.push(C64::from(1.0 + delta(b, l)), &[idx.of(k, b)], Some(idx.of(b, l)), None);
    }
    op.push(C64::from(1.0), &[], None, Some(u[k * n + l].clone()));
    op
}

fn raising_entry(n: usize, m: usize, u: &[CMat], d: usize, k: usize, l: usize) -> CsOperator {
    let idx = VarIndex::new(n);
    let mut op = CsOperator::zero(n, m);
    for a in 0..n {
        for b in 0..n {
            op.push(C64::from(1.0 + delta(a, b)), &[idx.of(k, a), idx.of(b, l)], Some(idx.of(a, b)), None);
        }
    }
    // Z∂_Z acting through Z contributes (n + 1) Z.
    let linear = n as f64 - d as f64;
    if linear != 0.0 {
        op.push(C64::from(linear), &[idx.of(k, l)], None, None);
    }
    for b in 0..n {
        op.push(C64::from(1.0), &[idx.of(l, b)], None, Some(u[k * n + b].clone()));
        op.push(C64::from(1.0), &[idx.of(k, b)], None, Some(u[l * n + b].clone()));
    }
    op
}

/// `(Ê₋)_kl = (1 + δ_kl) ∂/∂z_kl ⊗ Id`.
pub fn cs_lowering(spec: &InducedRepSpec) -> OperatorMatrix {
    let (n, m) = (spec.n(), module_dim(spec));
    OperatorMatrix::build(n, |k, l| lowering_entry(n, m, k, l))
}

/// `(Ê_U)_kl = (Z ∂_Z)_kl ⊗ Id + Id ⊗ 𝕌_kl`, with the doubled-diagonal
/// derivative matrix `∂_Z`.
pub fn cs_u_action(spec: &InducedRepSpec) -> OperatorMatrix {
    let (n, m) = (spec.n(), module_dim(spec));
    let u = blocks(spec);
    OperatorMatrix::build(n, |k, l| u_entry(n, m, &u, k, l))
}

/// `Ê₊ = [Z∂_Z − (d + 1)]Z ⊗ Id + Sym(Z ⊗ 𝕌)`, where the first operator is
/// the composition `Z ∘ ∂_Z ∘ Z`. The model is a homomorphism for `d = n`.
pub fn cs_raising(spec: &InducedRepSpec, d: usize) -> OperatorMatrix {
    let (n, m) = (spec.n(), module_dim(spec));
    let u = blocks(spec);
    OperatorMatrix::build(n, |k, l| raising_entry(n, m, &u, d, k, l))
}

/// Differential operator representing one basis generator. Raising blocks
/// map to `Ê₊`, lowering blocks to `−Ê₋`, `i_kl` to `Ê_U`.
pub fn model_generator(g: Generator, spec: &InducedRepSpec) -> CsOperator {
    let (n, m) = (spec.n(), module_dim(spec));
    match g {
        Generator::E(a, b) => raising_entry(n, m, &blocks(spec), n, a, b),
        Generator::EDag(a, b) => lowering_entry(n, m, a, b).scale(C64::from(-1.0)),
        Generator::U(a, b) => u_entry(n, m, &blocks(spec), a, b),
        Generator::H(a) => u_entry(n, m, &blocks(spec), a, a),
    }
}

pub fn model(x: &AlgebraElement<f64>, spec: &InducedRepSpec) -> CsOperator {
    let basis = x.basis();
    let mut op = CsOperator::zero(spec.n(), module_dim(spec));
    for k in x.support(0.0) {
        op = op.add(&model_generator(basis.label(k), spec).scale(x.coeffs()[k]));
    }
    op
}

/// Graded sparse matrix of an operator: columns are inputs of degree ≤
/// `cols_degree`, rows all monomials of degree ≤ `cols_degree + 1`.
struct Graded {
    index: HashMap<Vec<u8>, usize>,
    mons: Vec<Vec<u8>>,
    m: usize,
}

impl Graded {
    fn new(vars: usize, max_degree: usize, m: usize) -> Self {
        let mons = monomials(vars, max_degree);
        let index = mons.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        Graded { index, mons, m }
    }

    fn count(&self, degree: usize) -> usize {
        self.mons.iter().filter(|e| total(e) <= degree).count() * self.m
    }

    fn triplets(&self, op: &CsOperator, n: usize, cols_degree: usize) -> Vec<(usize, usize, C64)> {
        let mut out = Vec::new();
        let ncols = self.count(cols_degree);
        for col in 0..ncols {
            let (mi, c) = (col / self.m, col % self.m);
            let mut v = CMat::zeros(self.m, 1);
            v[c] = C64::from(1.0);
            let psi = PolyWavefunction::monomial(n, self.mons[mi].clone(), v);
            for (e, val) in op.apply(&psi).terms() {
                let row_mon = self.index[e];
                for r in 0..self.m {
                    if val[r] != C64::from(0.0) {
                        out.push((row_mon * self.m + r, col, val[r]));
                    }
                }
            }
        }
        out
    }
}

fn csr(rows: usize, cols: usize, trip: &[(usize, usize, C64)]) -> CsrMatrix<C64> {
    let mut coo = CooMatrix::new(rows, cols);
    for &(r, c, v) in trip {
        if r < rows && c < cols {
            coo.push(r, c, v);
        }
    }
    CsrMatrix::from(&coo)
}

/// Largest `|([â, b̂] − model([a, b])) ψ|` over generator pairs and module
/// valued monomials `ψ` of degree ≤ `max_degree`, with the bracket read from
/// the abstract structure constants.
pub fn homomorphism_defect(spec: &InducedRepSpec, max_degree: usize) -> f64 {
    let n = spec.n();
    let basis = spec.module().basis().clone();
    let m = module_dim(spec);
    let graded = Graded::new(VarIndex::new(n).count(), max_degree + 2, m);
    let top = graded.count(max_degree + 2);
    let mid = graded.count(max_degree + 1);
    let low = graded.count(max_degree);
    // full: top × mid, lower: mid × low, cut: top × low
    let mats: Vec<(CsrMatrix<C64>, CsrMatrix<C64>, CsrMatrix<C64>)> = basis
        .labels()
        .iter()
        .map(|g| {
            let trip = graded.triplets(&model_generator(*g, spec), n, max_degree + 1);
            (csr(top, mid, &trip), csr(mid, low, &trip), csr(top, low, &trip))
        })
        .collect();
    let constants = basis.constants();
    let mut worst = 0.0f64;
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            let mut d = &(&mats[a].0 * &mats[b].1) - &(&mats[b].0 * &mats[a].1);
            for (k, c) in constants.entries(a, b) {
                let c = *c.numer() as f64 / *c.denom() as f64;
                d = &d - &(&mats[*k].2 * C64::from(c));
            }
            worst = d.values().iter().fold(worst, |w, v| w.max(v.norm()));
        }
    }
    worst
}

/// `(Z′; μ′| O |Z*; μ)`: the operator applied in the holomorphic slot of the
/// kernel's Taylor series (degree ≤ `degree`), evaluated at `zp`.
pub fn operator_symbol(
    op: &CsOperator,
    zp: &SymCoord,
    zstar: &SymCoord,
    spec: &InducedRepSpec,
    degree: usize,
) -> Result<CMat, CoherentError> {
    zp.check_contraction(zstar)?;
    let series = crate::kernel_series(zstar, spec, degree)?;
    Ok(op.apply(&series).evaluate(zp))
}
