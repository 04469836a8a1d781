#![allow(dead_code)]

use std::sync::Arc;

use spq_algebra::{build_basis, AlgebraBasis, AlgebraElement, Generator};
use spq_evolution::GeneratorSpec;

pub fn grid(t0: f64, t1: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|k| t0 + (t1 - t0) * k as f64 / steps as f64).collect()
}

pub fn gen(basis: &Arc<AlgebraBasis>, g: Generator) -> AlgebraElement<f64> {
    AlgebraElement::generator(basis, g).unwrap()
}

/// `g + g†` (hermitian in the defining and paired realizations).
pub fn sym(basis: &Arc<AlgebraBasis>, g: Generator) -> AlgebraElement<f64> {
    &gen(basis, g) + &gen(basis, g.dagger())
}

/// `(1 + t) h_1 + cos(t) (e_ab + e†_ab)`; `(a, b) = (0, 0)` at rank 1.
pub fn two_term(n: usize) -> GeneratorSpec {
    let basis = build_basis(n).unwrap();
    let b = if n == 1 { 0 } else { 1 };
    GeneratorSpec::new(&basis, true)
        .real_term(|t| 1.0 + t, gen(&basis, Generator::H(0)))
        .real_term(f64::cos, sym(&basis, Generator::e(0, b)))
}
