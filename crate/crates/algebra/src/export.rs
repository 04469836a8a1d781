use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{build_basis, AlgebraBasis, AlgebraError, Rational, StructureConstants};

/// One non-zero constant `c[a][b][k] = num/den`, `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub num: i64,
    pub den: i64,
}

/// Plain-data form of a basis and its constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisExport {
    pub n: usize,
    pub labels: Vec<String>,
    pub constants: Vec<ConstantEntry>,
}

impl BasisExport {
    pub fn from_basis(basis: &AlgebraBasis) -> Self {
        let d = basis.len();
        let sc = basis.constants();
        let mut constants = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                for (k, c) in sc.entries(a, b) {
                    constants.push(ConstantEntry { a, b, k: *k, num: *c.numer(), den: *c.denom() });
                }
            }
        }
        BasisExport {
            n: basis.n(),
            labels: basis.labels().iter().map(|g| g.to_string()).collect(),
            constants,
        }
    }

    /// Rebuilds the basis for `n` and checks labels and constants agree.
    pub fn rebuild(&self) -> Result<Arc<AlgebraBasis>, AlgebraError> {
        let basis = build_basis(self.n)?;
        for (k, l) in self.labels.iter().enumerate() {
            if basis.lookup(l)? != k {
                return Err(AlgebraError::UnknownGenerator(l.clone()));
            }
        }
        if BasisExport::from_basis(&basis) != *self {
            return Err(AlgebraError::NotFaithful("exported constants differ from rebuilt basis".into()));
        }
        Ok(basis)
    }

    /// Constant lookup independent of the basis object.
    pub fn get(&self, a: usize, b: usize, k: usize) -> Rational {
        let (a, b, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        self.constants
            .iter()
            .find(|e| e.a == a && e.b == b && e.k == k)
            .map_or(Rational::from_integer(0), |e| Rational::new(s * e.num, e.den))
    }
}

impl From<&StructureConstants> for Vec<ConstantEntry> {
    fn from(sc: &StructureConstants) -> Self {
        let d = sc.dim();
        let mut v = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                for (k, c) in sc.entries(a, b) {
                    v.push(ConstantEntry { a, b, k: *k, num: *c.numer(), den: *c.denom() });
                }
            }
        }
        v
    }
}
