#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spq_algebra::build_basis;
use spq_coherent::SymCoord;
use spq_numerics::{CMat, C64};
use spq_reps::{build_fock, u4_lowest_module, InducedRepSpec, ModuleSpace, Partition};

pub fn trivial(n: usize) -> InducedRepSpec {
    let basis = build_basis(n).unwrap();
    InducedRepSpec::new(Partition::new(vec![0; n]).unwrap(), ModuleSpace::trivial(&basis), 0.0)
}

pub fn character(n: usize, lambda: f64) -> InducedRepSpec {
    let basis = build_basis(n).unwrap();
    InducedRepSpec::new(Partition::new(vec![0; n]).unwrap(), ModuleSpace::character(&basis, lambda), 0.0)
}

/// One-box module with the default shift `n + 1`.
pub fn one_box(n: usize) -> InducedRepSpec {
    let fock = build_fock(n, 4).unwrap();
    let mut parts = vec![0; n];
    parts[0] = 1;
    let part = Partition::new(parts).unwrap();
    let module = u4_lowest_module(&fock, &part).unwrap();
    InducedRepSpec::with_default_shift(part, module)
}

/// Random complex symmetric matrix with spectral norm `radius`.
pub fn contraction(n: usize, radius: f64, rng: &mut ChaCha8Rng) -> SymCoord {
    let mut z = CMat::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            z[(a, b)] = c;
            z[(b, a)] = c;
        }
    }
    let s = z.singular_values()[0];
    SymCoord::new(z * C64::from(radius / s)).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
