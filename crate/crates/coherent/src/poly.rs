use std::collections::BTreeMap;

use spq_numerics::{CMat, C64};

use crate::{SymCoord, VarIndex};

/// Polynomial in the independent entries of a symmetric `n × n` matrix with
/// `rows × cols` matrix coefficients. A state wavefunction has one column.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyWavefunction {
    n: usize,
    rows: usize,
    cols: usize,
    terms: BTreeMap<Vec<u8>, CMat>,
}

impl PolyWavefunction {
    pub fn zero(n: usize, rows: usize, cols: usize) -> Self {
        PolyWavefunction { n, rows, cols, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, value: CMat) -> Self {
        Self::monomial(n, vec![0; VarIndex::new(n).count()], value)
    }

    /// `z^exps ⊗ value`.
    pub fn monomial(n: usize, exps: Vec<u8>, value: CMat) -> Self {
        assert_eq!(exps.len(), VarIndex::new(n).count(), "exponent length");
        let mut p = Self::zero(n, value.nrows(), value.ncols());
        p.add_term(exps, value);
        p
    }

    /// The single variable `z_ab` times `value`.
    pub fn variable(n: usize, a: usize, b: usize, value: CMat) -> Self {
        let idx = VarIndex::new(n);
        let mut e = vec![0; idx.count()];
        e[idx.of(a, b)] = 1;
        Self::monomial(n, e, value)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u8>, CMat> {
        &self.terms
    }

    pub fn coefficient(&self, exps: &[u8]) -> Option<&CMat> {
        self.terms.get(exps)
    }

    pub fn add_term(&mut self, exps: Vec<u8>, value: CMat) {
        assert_eq!((value.nrows(), value.ncols()), (self.rows, self.cols), "coefficient shape");
        match self.terms.get_mut(&exps) {
            Some(v) => *v += value,
            None => {
                self.terms.insert(exps, value);
            }
        }
    }

    /// Highest total degree of a nonzero term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter(|(_, v)| v.iter().any(|c| c.norm() > 0.0))
            .map(|(e, _)| total(e))
            .max()
    }

    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter(|(_, v)| v.iter().any(|c| c.norm() > 0.0))
            .map(|(e, _)| total(e))
            .min()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().flat_map(|v| v.iter()).fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= s;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::from(-1.0)))
    }

    /// Left multiplication of every coefficient by a matrix.
    pub fn left_mul(&self, m: &CMat) -> Self {
        let mut out = Self::zero(self.n, m.nrows(), self.cols);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), m * v);
        }
        out
    }

    /// Product with matrix coefficients multiplied in order, dropping terms
    /// above `max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        let mut out = Self::zero(self.n, self.rows, other.cols);
        for (ea, va) in &self.terms {
            let da = total(ea);
            for (eb, vb) in &other.terms {
                if da + total(eb) > max_degree {
                    continue;
                }
                let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, va * vb);
            }
        }
        out
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        let mut out = Self::zero(self.n, self.rows, self.cols);
        for (e, v) in &self.terms {
            if total(e) <= max_degree {
                out.add_term(e.clone(), v.clone());
            }
        }
        out
    }

    pub fn evaluate(&self, z: &SymCoord) -> CMat {
        let vars = z.vars();
        let mut out = CMat::zeros(self.rows, self.cols);
        for (e, v) in &self.terms {
            let mut w = C64::from(1.0);
            for (x, &p) in vars.iter().zip(e) {
                if p > 0 {
                    w *= x.powu(p as u32);
                }
            }
            out += v * w;
        }
        out
    }
}

pub(crate) fn total(e: &[u8]) -> usize {
    e.iter().map(|&x| x as usize).sum()
}

/// Exponent vectors of total degree ≤ `max_degree` over `vars` variables,
/// ordered by degree.
pub(crate) fn monomials(vars: usize, max_degree: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let mut cur = vec![0u8; vars];
        fill(&mut out, &mut cur, 0, d);
    }
    out
}

fn fill(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, pos: usize, left: usize) {
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if pos + 1 == cur.len() {
        cur[pos] = left as u8;
        out.push(cur.clone());
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k as u8;
        fill(out, cur, pos + 1, left - k);
    }
    cur[pos] = 0;
}
