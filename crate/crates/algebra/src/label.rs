use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::AlgebraError;

/// Rank `n` of `sp(2n)`, restricted to `1..=4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Rank(usize);

impl Rank {
    pub const MAX: usize = 4;

    pub fn new(n: usize) -> Result<Self, AlgebraError> {
        if (1..=Self::MAX).contains(&n) {
            Ok(Rank(n))
        } else {
            Err(AlgebraError::RankOutOfRange(n))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// `2n² + n`.
    pub fn dim(self) -> usize {
        2 * self.0 * self.0 + self.0
    }

    /// Number of independent symmetric-matrix entries, `n(n+1)/2`.
    pub fn sym_dim(self) -> usize {
        self.0 * (self.0 + 1) / 2
    }
}

impl TryFrom<usize> for Rank {
    type Error = AlgebraError;
    fn try_from(n: usize) -> Result<Self, Self::Error> {
        Rank::new(n)
    }
}

impl From<Rank> for usize {
    fn from(r: Rank) -> usize {
        r.0
    }
}

/// Basis generator tag. Indices are zero-based; `E` and `EDag` keep `i ≤ j`,
/// `U` keeps `i ≠ j` (the diagonal of `u(n)` is `H`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    H(usize),
    E(usize, usize),
    EDag(usize, usize),
    U(usize, usize),
}

/// Triangular part: lowering, Cartan, raising.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    Lower,
    Cartan,
    Raise,
}

/// Parabolic block: `ℨ₋`, `u(n)`, `ℨ₊`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    ZMinus,
    Unitary,
    ZPlus,
}

impl Generator {
    /// `i_ab`, which is `h_a` on the diagonal.
    pub fn u(a: usize, b: usize) -> Self {
        if a == b {
            Generator::H(a)
        } else {
            Generator::U(a, b)
        }
    }

    /// `e_ab` with the index pair put in canonical order.
    pub fn e(a: usize, b: usize) -> Self {
        Generator::E(a.min(b), a.max(b))
    }

    pub fn e_dag(a: usize, b: usize) -> Self {
        Generator::EDag(a.min(b), a.max(b))
    }

    /// The generator paired with this one under the `†` of the defining
    /// representation (transpose, since all defining matrices are real).
    pub fn dagger(self) -> Self {
        match self {
            Generator::H(i) => Generator::H(i),
            Generator::E(i, j) => Generator::EDag(i, j),
            Generator::EDag(i, j) => Generator::E(i, j),
            Generator::U(i, j) => Generator::U(j, i),
        }
    }

    pub fn part(self) -> Part {
        match self {
            Generator::H(_) => Part::Cartan,
            Generator::E(..) => Part::Raise,
            Generator::EDag(..) => Part::Lower,
            Generator::U(i, j) if i < j => Part::Raise,
            Generator::U(..) => Part::Lower,
        }
    }

    pub fn sector(self) -> Sector {
        match self {
            Generator::E(..) => Sector::ZPlus,
            Generator::EDag(..) => Sector::ZMinus,
            Generator::H(_) | Generator::U(..) => Sector::Unitary,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::H(i) => write!(f, "h{}", i + 1),
            Generator::E(i, j) if i == j => write!(f, "e{}", i + 1),
            Generator::E(i, j) => write!(f, "e{}{}", i + 1, j + 1),
            Generator::EDag(i, j) if i == j => write!(f, "ed{}", i + 1),
            Generator::EDag(i, j) => write!(f, "ed{}{}", i + 1, j + 1),
            Generator::U(i, j) => write!(f, "u{}{}", i + 1, j + 1),
        }
    }
}

impl FromStr for Generator {
    type Err = AlgebraError;

    /// Parses `h1`, `e1`, `e12`, `ed1`, `ed12`, `u12` (one-based digits).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::UnknownGenerator(s.to_string());
        let (head, digits) = s
            .find(|c: char| c.is_ascii_digit())
            .map(|p| s.split_at(p))
            .ok_or_else(bad)?;
        let idx: Vec<usize> = digits
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        if idx.contains(&0) {
            return Err(bad());
        }
        let idx: Vec<usize> = idx.into_iter().map(|d| d - 1).collect();
        let g = match (head, idx.as_slice()) {
            ("h", [i]) => Generator::H(*i),
            ("e", [i]) => Generator::E(*i, *i),
            ("e", [i, j]) if i != j => Generator::e(*i, *j),
            ("ed", [i]) => Generator::EDag(*i, *i),
            ("ed", [i, j]) if i != j => Generator::e_dag(*i, *j),
            ("u", [i, j]) if i != j => Generator::U(*i, *j),
            _ => return Err(bad()),
        };
        Ok(g)
    }
}
