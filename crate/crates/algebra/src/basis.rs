use std::collections::HashMap;
use std::sync::Arc;

use crate::constants::extract;
use crate::{AlgebraError, DefiningRep, Generator, Rank, Sector, StructureConstants};

/// Ordered generator labels of `sp(2n)` with their structure constants.
///
/// Order: `h_i`, `e_i`, `e_ij (i<j)`, `e†_i`, `e†_ij (i<j)`, `i_ij (i≠j)`.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    rank: Rank,
    labels: Vec<Generator>,
    index: HashMap<Generator, usize>,
    constants: StructureConstants,
}

pub(crate) fn canonical_labels(rank: Rank) -> Vec<Generator> {
    let n = rank.get();
    let mut labels = Vec::with_capacity(rank.dim());
    labels.extend((0..n).map(Generator::H));
    labels.extend((0..n).map(|i| Generator::E(i, i)));
    for i in 0..n {
        labels.extend((i + 1..n).map(|j| Generator::E(i, j)));
    }
    labels.extend((0..n).map(|i| Generator::EDag(i, i)));
    for i in 0..n {
        labels.extend((i + 1..n).map(|j| Generator::EDag(i, j)));
    }
    for i in 0..n {
        labels.extend((0..n).filter(|&j| j != i).map(|j| Generator::U(i, j)));
    }
    labels
}

/// Builds the labelled basis and extracts its structure constants from the
/// defining representation.
pub fn build_basis(n: usize) -> Result<Arc<AlgebraBasis>, AlgebraError> {
    let rank = Rank::new(n)?;
    let labels = canonical_labels(rank);
    let constants = extract(rank, &labels, &DefiningRep::<f64>::new(rank))?;
    let index = labels.iter().enumerate().map(|(k, g)| (*g, k)).collect();
    Ok(Arc::new(AlgebraBasis { rank, labels, index, constants }))
}

impl AlgebraBasis {
    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.rank.get()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Generator] {
        &self.labels
    }

    pub fn label(&self, k: usize) -> Generator {
        self.labels[k]
    }

    pub fn index_of(&self, g: Generator) -> Result<usize, AlgebraError> {
        self.index
            .get(&g)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownGenerator(g.to_string()))
    }

    pub fn lookup(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index_of(name.parse()?)
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// Positions of the generators in a parabolic block.
    pub fn sector_indices(&self, s: Sector) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.labels[k].sector() == s).collect()
    }

    /// Positions of the parabolic subalgebra `ℨ₋ ⊕ u(n)`.
    pub fn parabolic_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.labels[k].sector() != Sector::ZPlus)
            .collect()
    }
}
