use std::collections::HashMap;
use std::sync::Arc;

use nalgebra_sparse::{CooMatrix, CsrMatrix};
use spq_algebra::{defining_matrix, relations, AlgebraBasis, AlgebraElement, Generator, Rank, Realization};
use spq_numerics::{CMat, C64};

use crate::RepError;

pub type SparseMat = CsrMatrix<C64>;

/// Occupation-number basis with total occupation at most `cutoff`, ordered
/// by total occupation then lexicographically descending.
#[derive(Debug, Clone)]
pub struct FockSpace {
    modes: usize,
    cutoff: usize,
    states: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl FockSpace {
    pub fn new(modes: usize, cutoff: usize) -> Self {
        let mut states = Vec::new();
        for total in 0..=cutoff {
            let mut cur = vec![0u8; modes];
            fill(&mut states, &mut cur, 0, total);
        }
        let index = states.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        FockSpace { modes, cutoff, states, index }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, k: usize) -> &[u8] {
        &self.states[k]
    }

    pub fn index_of(&self, occ: &[u8]) -> Option<usize> {
        self.index.get(occ).copied()
    }

    pub fn total(&self, k: usize) -> usize {
        self.states[k].iter().map(|&o| o as usize).sum()
    }

    /// States with total occupation ≤ `cutoff − margin`.
    pub fn interior(&self, margin: usize) -> Vec<bool> {
        let top = self.cutoff.saturating_sub(margin);
        (0..self.dim()).map(|k| self.total(k) <= top).collect()
    }

    /// Sparse matrix of a normal-ordered monomial: creators on `create`,
    /// annihilators on `annihilate` (annihilators act first). Components
    /// leaving the truncated space are dropped.
    pub fn monomial(&self, create: &[usize], annihilate: &[usize], coeff: C64) -> Vec<(usize, usize, C64)> {
        let mut out = Vec::new();
        'states: for (col, s) in self.states.iter().enumerate() {
            let mut occ: Vec<i32> = s.iter().map(|&o| o as i32).collect();
            let mut amp = 1.0f64;
            for &m in annihilate {
                if occ[m] == 0 {
                    continue 'states;
                }
                amp *= (occ[m] as f64).sqrt();
                occ[m] -= 1;
            }
            for &m in create {
                occ[m] += 1;
                amp *= (occ[m] as f64).sqrt();
            }
            let key: Vec<u8> = occ.iter().map(|&o| o as u8).collect();
            if let Some(&row) = self.index.get(&key) {
                out.push((row, col, coeff * amp));
            }
        }
        out
    }

    pub fn sparse(&self, triplets: &[(usize, usize, C64)]) -> SparseMat {
        let d = self.dim();
        let mut coo = CooMatrix::new(d, d);
        for &(r, c, v) in triplets {
            coo.push(r, c, v);
        }
        CsrMatrix::from(&coo)
    }

    pub fn annihilator(&self, mode: usize) -> SparseMat {
        self.sparse(&self.monomial(&[], &[mode], C64::from(1.0)))
    }

    pub fn creator(&self, mode: usize) -> SparseMat {
        self.sparse(&self.monomial(&[mode], &[], C64::from(1.0)))
    }
}

fn fill(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, pos: usize, left: usize) {
    if pos + 1 == cur.len() {
        cur[pos] = left as u8;
        out.push(cur.clone());
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k as u8;
        fill(out, cur, pos + 1, left - k);
    }
    cur[pos] = 0;
}

/// Which bilinear realization to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FockKind {
    /// `2n` modes `±1..±n`, `X ↦ Σ X_αβ c_α† c_β`. Number conserving, so
    /// exact on every occupation block.
    Paired,
    /// `n` modes, `i_ab = a_a† a_b + ½δ_ab`, `e_ab = a_a† a_b†`,
    /// `e†_ab = −a_a a_b`. Exact on occupations ≤ cutoff − 2.
    Oscillator,
}

/// Sparse generator matrices of a truncated Fock realization.
#[derive(Debug, Clone)]
pub struct FockRealization {
    kind: FockKind,
    basis: Arc<AlgebraBasis>,
    space: FockSpace,
    gens: Vec<SparseMat>,
}

impl FockRealization {
    pub fn kind(&self) -> FockKind {
        self.kind
    }

    pub fn basis(&self) -> &Arc<AlgebraBasis> {
        &self.basis
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn sparse_generator(&self, g: Generator) -> &SparseMat {
        &self.gens[self.basis.index_of(g).expect("generator of this rank")]
    }

    pub fn sparse_index(&self, k: usize) -> &SparseMat {
        &self.gens[k]
    }

    pub fn realize_sparse(&self, x: &AlgebraElement<f64>) -> SparseMat {
        let d = self.space.dim();
        let mut coo = CooMatrix::new(d, d);
        for (k, c) in x.coeffs().iter().enumerate() {
            if *c == C64::from(0.0) {
                continue;
            }
            for (r, col, v) in self.gens[k].triplet_iter() {
                coo.push(r, col, v * c);
            }
        }
        CsrMatrix::from(&coo)
    }

    /// States on which commutators are exact.
    pub fn interior(&self) -> Vec<bool> {
        match self.kind {
            FockKind::Paired => self.space.interior(0),
            FockKind::Oscillator => self.space.interior(2),
        }
    }

    /// `max |[c_α, c_β†] − δ_αβ|` over interior columns and rows.
    pub fn ccr_defect(&self) -> f64 {
        let m = self.space.modes();
        let inner = self.space.interior(2);
        let mut worst = 0.0f64;
        for a in 0..m {
            let ca = self.space.annihilator(a);
            for b in 0..m {
                let cb = self.space.creator(b);
                let c = &(&ca * &cb) - &(&cb * &ca);
                let mut diag = vec![C64::from(0.0); self.space.dim()];
                for (r, col, v) in c.triplet_iter() {
                    if inner[r] && inner[col] {
                        if r == col {
                            diag[r] = *v;
                        } else {
                            worst = worst.max(v.norm());
                        }
                    }
                }
                for (k, v) in diag.iter().enumerate() {
                    if inner[k] {
                        let want = if a == b { 1.0 } else { 0.0 };
                        worst = worst.max((v - want).norm());
                    }
                }
            }
        }
        worst
    }

    /// `max |[G_a, G_b] − Σ_k c_k G_k|` on the interior block, with the
    /// right-hand side taken from the closed-form relations.
    pub fn relation_defect(&self, a: Generator, b: Generator) -> f64 {
        let ga = self.sparse_generator(a);
        let gb = self.sparse_generator(b);
        let mut lhs = &(ga * gb) - &(gb * ga);
        for (g, k) in relations::bracket(a, b).1 {
            lhs = &lhs - &(self.sparse_generator(g) * C64::from(k as f64));
        }
        let inner = self.interior();
        lhs.triplet_iter()
            .filter(|(r, c, _)| inner[*r] && inner[*c])
            .fold(0.0f64, |m, (_, _, v)| m.max(v.norm()))
    }

    /// Worst [`relation_defect`](Self::relation_defect) over all ordered
    /// generator pairs.
    pub fn max_relation_defect(&self) -> f64 {
        let labels = self.basis.labels();
        let mut worst = 0.0f64;
        for a in labels {
            for b in labels {
                worst = worst.max(self.relation_defect(*a, *b));
            }
        }
        worst
    }

    /// Dense restriction of a sparse operator to the interior block.
    pub fn interior_dense(&self, m: &SparseMat) -> CMat {
        let inner = self.interior();
        let idx: Vec<usize> = (0..inner.len()).filter(|&k| inner[k]).collect();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(p, k)| (*k, p)).collect();
        let mut out = CMat::zeros(idx.len(), idx.len());
        for (r, c, v) in m.triplet_iter() {
            if let (Some(&pr), Some(&pc)) = (pos.get(&r), pos.get(&c)) {
                out[(pr, pc)] = *v;
            }
        }
        out
    }

    pub fn build(n: usize, cutoff: usize, kind: FockKind) -> Result<Self, RepError> {
        build_fock_kind(n, cutoff, kind)
    }
}

/// Paired (`2n`-mode) realization; see [`FockKind::Paired`].
pub fn build_fock(n: usize, cutoff: usize) -> Result<FockRealization, RepError> {
    build_fock_kind(n, cutoff, FockKind::Paired)
}

fn build_fock_kind(n: usize, cutoff: usize, kind: FockKind) -> Result<FockRealization, RepError> {
    let rank = Rank::new(n)?;
    if cutoff < 4 {
        return Err(RepError::CutoffTooSmall { cutoff, need: "at least 4".into() });
    }
    let basis = spq_algebra::build_basis(n)?;
    let modes = match kind {
        FockKind::Paired => 2 * n,
        FockKind::Oscillator => n,
    };
    let space = FockSpace::new(modes, cutoff);
    let gens = basis
        .labels()
        .iter()
        .map(|g| {
            let trip = match kind {
                FockKind::Paired => paired_triplets(&space, rank, *g),
                FockKind::Oscillator => oscillator_triplets(&space, *g),
            };
            space.sparse(&trip)
        })
        .collect();
    Ok(FockRealization { kind, basis, space, gens })
}

fn paired_triplets(space: &FockSpace, rank: Rank, g: Generator) -> Vec<(usize, usize, C64)> {
    let x = defining_matrix::<f64>(rank.get(), g);
    let mut trip = Vec::new();
    for a in 0..x.nrows() {
        for b in 0..x.ncols() {
            if x[(a, b)] != C64::from(0.0) {
                trip.extend(space.monomial(&[a], &[b], x[(a, b)]));
            }
        }
    }
    trip
}

fn oscillator_triplets(space: &FockSpace, g: Generator) -> Vec<(usize, usize, C64)> {
    let one = C64::from(1.0);
    match g {
        Generator::H(a) => {
            let mut t = space.monomial(&[a], &[a], one);
            t.extend((0..space.dim()).map(|k| (k, k, C64::from(0.5))));
            t
        }
        Generator::U(a, b) => space.monomial(&[a], &[b], one),
        Generator::E(a, b) => space.monomial(&[a, b], &[], one),
        Generator::EDag(a, b) => space.monomial(&[], &[a, b], -one),
    }
}

impl Realization<f64> for FockRealization {
    fn rank(&self) -> Rank {
        self.basis.rank()
    }

    fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Dense copy; intended for small cutoffs.
    fn generator(&self, g: Generator) -> CMat {
        let m = self.sparse_generator(g);
        let mut out = CMat::zeros(m.nrows(), m.ncols());
        for (r, c, v) in m.triplet_iter() {
            out[(r, c)] += *v;
        }
        out
    }
}

