use std::sync::Arc;

use spq_algebra::{AlgebraBasis, Generator, Realization};
use spq_numerics::{max_abs, CMat, CVec, C64};

use crate::ObservableError;

/// An `n × n` array of operators on a common space.
#[derive(Debug, Clone)]
pub struct OpMatrix {
    n: usize,
    dim: usize,
    entries: Vec<CMat>,
}

impl OpMatrix {
    pub fn zeros(n: usize, dim: usize) -> Self {
        OpMatrix { n, dim, entries: vec![CMat::zeros(dim, dim); n * n] }
    }

    pub fn from_fn(n: usize, dim: usize, f: impl Fn(usize, usize) -> CMat) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        OpMatrix { n, dim, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CMat {
        &self.entries[i * self.n + j]
    }

    pub fn add(&self, other: &OpMatrix) -> OpMatrix {
        OpMatrix::from_fn(self.n, self.dim, |i, j| self.get(i, j) + other.get(i, j))
    }

    /// `(X†)_ij = (X_ji)†`.
    pub fn adjoint(&self) -> OpMatrix {
        OpMatrix::from_fn(self.n, self.dim, |i, j| self.get(j, i).adjoint())
    }

    /// `(XY)_ij = Σ_k X_ik Y_kj`.
    pub fn mul(&self, other: &OpMatrix) -> OpMatrix {
        OpMatrix::from_fn(self.n, self.dim, |i, j| {
            let mut acc = CMat::zeros(self.dim, self.dim);
            for k in 0..self.n {
                acc += self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    pub fn anticommutator(&self, other: &OpMatrix) -> OpMatrix {
        self.mul(other).add(&other.mul(self))
    }

    pub fn scale(&self, s: C64) -> OpMatrix {
        OpMatrix::from_fn(self.n, self.dim, |i, j| self.get(i, j) * s)
    }

    /// `Σ_i X_ii`.
    pub fn trace(&self) -> CMat {
        (0..self.n).fold(CMat::zeros(self.dim, self.dim), |acc, i| acc + self.get(i, i))
    }

    /// The `n·dim × n·dim` block matrix.
    pub fn block(&self) -> CMat {
        let d = self.dim;
        let mut m = CMat::zeros(self.n * d, self.n * d);
        for i in 0..self.n {
            for j in 0..self.n {
                m.view_mut((i * d, j * d), (d, d)).copy_from(self.get(i, j));
            }
        }
        m
    }

    /// `⟨ψ|X_ij ψ⟩ / ⟨ψ|ψ⟩`.
    pub fn expectation(&self, psi: &CVec) -> Result<CMat, ObservableError> {
        if psi.len() != self.dim {
            return Err(ObservableError::Dimension { expected: self.dim, got: psi.len() });
        }
        let nn = psi.norm_squared();
        if nn <= f64::MIN_POSITIVE {
            return Err(ObservableError::ZeroNorm);
        }
        Ok(CMat::from_fn(self.n, self.n, |i, j| psi.dotc(&(self.get(i, j) * psi)) / C64::from(nn)))
    }

    /// `max_ij ‖X_ij† − sign · X_ij‖`.
    pub fn entry_adjoint_defect(&self, sign: f64) -> f64 {
        self.entries.iter().map(|x| max_abs(&(x.adjoint() - x * C64::from(sign)))).fold(0.0, f64::max)
    }
}

/// `Q`, `Π` (external) and `M`, `A` (internal) operator matrices.
#[derive(Debug, Clone)]
pub struct PhaseSpaceOps {
    pub q: OpMatrix,
    pub pi: OpMatrix,
    pub m: OpMatrix,
    pub a: OpMatrix,
}

/// `Q_ij = ρ(e_ij + e†_ij)/2`, `Π_ij = ρ(e_ij − e†_ij)/2`,
/// `M_ij = ρ(i_ij + i_ij†)/2`, `A_ij = ρ(i_ij − i_ij†)/2` with `i_ij† = i_ji`.
pub fn build_phase_ops(basis: &Arc<AlgebraBasis>, rep: &(impl Realization<f64> + ?Sized)) -> PhaseSpaceOps {
    let n = basis.n();
    let d = rep.dim();
    let half = C64::from(0.5);
    let e: Vec<CMat> = (0..n * n).map(|k| rep.generator(Generator::e(k / n, k % n))).collect();
    let ed: Vec<CMat> = (0..n * n).map(|k| rep.generator(Generator::e_dag(k / n, k % n))).collect();
    let u: Vec<CMat> = (0..n * n).map(|k| rep.generator(Generator::u(k / n, k % n))).collect();
    PhaseSpaceOps {
        q: OpMatrix::from_fn(n, d, |i, j| (&e[i * n + j] + &ed[i * n + j]) * half),
        pi: OpMatrix::from_fn(n, d, |i, j| (&e[i * n + j] - &ed[i * n + j]) * half),
        m: OpMatrix::from_fn(n, d, |i, j| (&u[i * n + j] + &u[j * n + i]) * half),
        a: OpMatrix::from_fn(n, d, |i, j| (&u[i * n + j] - &u[j * n + i]) * half),
    }
}

impl PhaseSpaceOps {
    /// Defects of `Q† = Q`, `Π† = −Π`, `M† = M`, `A† = −A`, entrywise.
    pub fn hermiticity(&self) -> [f64; 4] {
        [
            self.q.entry_adjoint_defect(1.0),
            self.pi.entry_adjoint_defect(-1.0),
            self.m.entry_adjoint_defect(1.0),
            self.a.entry_adjoint_defect(-1.0),
        ]
    }

    /// Interaction configuration `Q + M`.
    pub fn q_interaction(&self) -> OpMatrix {
        self.q.add(&self.m)
    }

    /// Interaction momentum `Π + A`.
    pub fn pi_interaction(&self) -> OpMatrix {
        self.pi.add(&self.a)
    }
}

/// `T = ½({Π̲, Π̲†} + {Q̲, Q̲†})` as an operator matrix.
#[derive(Debug, Clone)]
pub struct StressEnergy {
    pub t: OpMatrix,
}

pub fn stress_energy(ops: &PhaseSpaceOps) -> StressEnergy {
    let q = ops.q_interaction();
    let p = ops.pi_interaction();
    let t = p.anticommutator(&p.adjoint()).add(&q.anticommutator(&q.adjoint())).scale(C64::from(0.5));
    StressEnergy { t }
}

impl StressEnergy {
    /// `max_ij ‖T_ij − (T_ji)†‖`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.t.n();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max(max_abs(&(self.t.get(i, j) - self.t.get(j, i).adjoint())));
            }
        }
        worst
    }

    /// Energy operator `Σ_i T_ii`.
    pub fn trace(&self) -> CMat {
        self.t.trace()
    }

    /// Classical stress-energy `⟨ψ₀|U(g)* T U(g) ψ₀⟩ / ⟨ψ₀|ψ₀⟩`.
    pub fn classical(&self, group: &CMat, ground: &CVec) -> Result<CMat, ObservableError> {
        let moved = group * ground;
        let nn = ground.norm_squared();
        let e = self.t.expectation(&moved)?;
        Ok(e * C64::from(moved.norm_squared() / nn))
    }
}
