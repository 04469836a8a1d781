//! Closed-form commutation relations, independent of any realization.
//!
//! With `i_aa ≡ h_a` and symmetric `e_ab = e_ba`:
//!
//! ```text
//! [i_ij, i_kl]  = δ_jk i_il − δ_il i_kj
//! [i_ij, e_kl]  = δ_jk e_il + δ_jl e_ik
//! [i_ij, e†_kl] = −δ_ik e†_jl − δ_il e†_jk
//! [e_ab, e†_cd] = δ_bc i_ad + δ_bd i_ac + δ_ac i_bd + δ_ad i_bc
//! [e, e] = [e†, e†] = 0
//! ```

use std::collections::BTreeMap;

use crate::Generator;

/// The five relation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    UnitaryUnitary,
    UnitaryRaise,
    UnitaryLower,
    RaiseLower,
    Abelian,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::UnitaryUnitary,
        Family::UnitaryRaise,
        Family::UnitaryLower,
        Family::RaiseLower,
        Family::Abelian,
    ];
}

enum Kind {
    U(usize, usize),
    E(usize, usize),
    F(usize, usize),
}

fn kind(g: Generator) -> Kind {
    match g {
        Generator::H(i) => Kind::U(i, i),
        Generator::U(i, j) => Kind::U(i, j),
        Generator::E(i, j) => Kind::E(i, j),
        Generator::EDag(i, j) => Kind::F(i, j),
    }
}

fn d(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// `[a, b]` as integer combination of generators, with its family.
pub fn bracket(a: Generator, b: Generator) -> (Family, BTreeMap<Generator, i64>) {
    let mut out = BTreeMap::new();
    let mut put = |g: Generator, c: i64| {
        if c != 0 {
            *out.entry(g).or_insert(0) += c;
        }
    };
    let family = match (kind(a), kind(b)) {
        (Kind::U(i, j), Kind::U(k, l)) => {
            put(Generator::u(i, l), d(j, k));
            put(Generator::u(k, j), -d(i, l));
            Family::UnitaryUnitary
        }
        (Kind::U(i, j), Kind::E(k, l)) => {
            put(Generator::e(i, l), d(j, k));
            put(Generator::e(i, k), d(j, l));
            Family::UnitaryRaise
        }
        (Kind::U(i, j), Kind::F(k, l)) => {
            put(Generator::e_dag(j, l), -d(i, k));
            put(Generator::e_dag(j, k), -d(i, l));
            Family::UnitaryLower
        }
        (Kind::E(a, b), Kind::F(c, e)) => {
            put(Generator::u(a, e), d(b, c));
            put(Generator::u(a, c), d(b, e));
            put(Generator::u(b, e), d(a, c));
            put(Generator::u(b, c), d(a, e));
            Family::RaiseLower
        }
        (Kind::E(..), Kind::U(..)) | (Kind::F(..), Kind::U(..)) | (Kind::F(..), Kind::E(..)) => {
            let (f, m) = bracket(b, a);
            for (g, c) in m {
                put(g, -c);
            }
            f
        }
        (Kind::E(..), Kind::E(..)) | (Kind::F(..), Kind::F(..)) => Family::Abelian,
    };
    out.retain(|_, c| *c != 0);
    (family, out)
}
