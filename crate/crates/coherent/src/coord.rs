use spq_numerics::{CMat, C64};

use crate::CoherentError;

/// Kernel evaluations require spectral radius below `1 − CONTRACTION_GUARD`.
pub const CONTRACTION_GUARD: f64 = 1e-6;

/// Enumeration of the independent entries `z_ab`, `a ≤ b`, row by row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarIndex {
    n: usize,
}

impl VarIndex {
    pub fn new(n: usize) -> Self {
        VarIndex { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// Variable of entry `(a, b)` in either order.
    pub fn of(&self, a: usize, b: usize) -> usize {
        let (i, j) = if a <= b { (a, b) } else { (b, a) };
        i * self.n - i * (i + 1) / 2 + j
    }

    pub fn pair(&self, k: usize) -> (usize, usize) {
        let mut k = k;
        for i in 0..self.n {
            let row = self.n - i;
            if k < row {
                return (i, i + k);
            }
            k -= row;
        }
        panic!("variable index out of range");
    }
}

/// A complex symmetric `n × n` coordinate matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymCoord {
    z: CMat,
}

impl SymCoord {
    pub fn new(z: CMat) -> Result<Self, CoherentError> {
        if z.nrows() != z.ncols() {
            return Err(CoherentError::Shape { n: z.nrows() });
        }
        if z != z.transpose() {
            return Err(CoherentError::NotSymmetric);
        }
        Ok(SymCoord { z })
    }

    pub fn zero(n: usize) -> Self {
        SymCoord { z: CMat::zeros(n, n) }
    }

    /// From the independent entries in [`VarIndex`] order.
    pub fn from_vars(n: usize, vars: &[C64]) -> Self {
        let idx = VarIndex::new(n);
        assert_eq!(vars.len(), idx.count(), "wrong number of entries");
        let z = CMat::from_fn(n, n, |a, b| vars[idx.of(a, b)]);
        SymCoord { z }
    }

    pub fn n(&self) -> usize {
        self.z.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.z
    }

    pub fn vars(&self) -> Vec<C64> {
        let idx = VarIndex::new(self.n());
        (0..idx.count())
            .map(|k| {
                let (a, b) = idx.pair(k);
                self.z[(a, b)]
            })
            .collect()
    }

    pub fn conj(&self) -> Self {
        SymCoord { z: self.z.map(|c| c.conj()) }
    }

    pub fn scale(&self, s: C64) -> Self {
        SymCoord { z: &self.z * s }
    }

    /// Spectral radius of `self · other`.
    pub fn product_radius(&self, other: &SymCoord) -> f64 {
        let m = &self.z * &other.z;
        let (_, t) = m.schur().unpack();
        t.diagonal().iter().fold(0.0, |r, e| r.max(e.norm()))
    }

    pub(crate) fn check_contraction(&self, other: &SymCoord) -> Result<f64, CoherentError> {
        if self.n() != other.n() {
            return Err(CoherentError::Shape { n: self.n() });
        }
        let r = self.product_radius(other);
        if r.is_finite() && r < 1.0 - CONTRACTION_GUARD {
            Ok(r)
        } else {
            Err(CoherentError::KernelDomain(r))
        }
    }
}
