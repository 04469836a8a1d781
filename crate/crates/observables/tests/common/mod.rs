#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spq_algebra::{AlgebraBasis, AlgebraElement, DefiningRep, Generator, Rank};
use spq_numerics::{CMat, CVec, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn defining(n: usize) -> DefiningRep<f64> {
    DefiningRep::new(Rank::new(n).unwrap())
}

pub fn grid(t0: f64, t1: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|k| t0 + (t1 - t0) * k as f64 / steps as f64).collect()
}

pub fn gen(basis: &Arc<AlgebraBasis>, g: Generator) -> AlgebraElement<f64> {
    AlgebraElement::generator(basis, g).unwrap()
}

pub fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> CVec {
    let v = CVec::from_fn(dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    &v / C64::from(v.norm())
}

pub fn random_hermitian_matrix(dim: usize, scale: f64, rng: &mut ChaCha8Rng) -> CMat {
    let a = CMat::from_fn(dim, dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + a.adjoint()) * C64::from(0.5 * scale)
}

/// Real combination of `h`, `e + e†` and `i_ab + i_ba`: self-adjoint in
/// *-realizations.
pub fn random_hermitian(basis: &Arc<AlgebraBasis>, scale: f64, rng: &mut ChaCha8Rng) -> AlgebraElement<f64> {
    let mut x = AlgebraElement::zero(basis);
    for g in basis.labels() {
        let c = rng.gen_range(-scale..scale);
        x = match g {
            Generator::H(_) => &x + &(&gen(basis, *g) * c),
            Generator::E(..) => &x + &(&(&gen(basis, *g) + &gen(basis, g.dagger())) * c),
            Generator::U(a, b) if a < b => &x + &(&(&gen(basis, *g) + &gen(basis, g.dagger())) * c),
            _ => x,
        };
    }
    x
}
