use std::sync::Arc;

use proptest::prelude::*;
use spq_algebra::*;
use spq_numerics::{commutator, max_abs, C64};

fn element(n: usize) -> impl Strategy<Value = Element> {
    let b: Arc<AlgebraBasis> = build_basis(n).unwrap();
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), b.len()).prop_map(move |v| {
        Element::from_coeffs(&b, v.into_iter().map(|(r, i)| C64::new(r, i)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_antisymmetric(x in element(3), y in element(3)) {
        let s = &x.bracket(&y).unwrap() + &y.bracket(&x).unwrap();
        prop_assert!(s.max_abs() < 1e-13);
    }

    #[test]
    fn bracket_bilinear(x in element(2), y in element(2), z in element(2), a in -2.0..2.0f64) {
        let lhs = (&x.scale(C64::from(a)) + &y).bracket(&z).unwrap();
        let rhs = &x.bracket(&z).unwrap().scale(C64::from(a)) + &y.bracket(&z).unwrap();
        prop_assert!((&lhs - &rhs).max_abs() < 1e-12);
    }

    #[test]
    fn jacobi_on_random_elements(x in element(4), y in element(4), z in element(4)) {
        let j = &(&x.bracket(&y.bracket(&z).unwrap()).unwrap()
            + &y.bracket(&z.bracket(&x).unwrap()).unwrap())
            + &z.bracket(&x.bracket(&y).unwrap()).unwrap();
        prop_assert!(j.max_abs() < 1e-9);
    }

    #[test]
    fn defining_rep_is_homomorphism(x in element(4), y in element(4)) {
        let rep = DefiningRep::<f64>::new(x.basis().rank());
        let lhs = rep.realize(&x.bracket(&y).unwrap());
        let rhs = commutator(&rep.realize(&x), &rep.realize(&y));
        prop_assert!(max_abs(&(lhs - rhs)) < 1e-12);
    }

    #[test]
    fn killing_symmetric_and_invariant(x in element(2), y in element(2), z in element(2)) {
        let bxy = killing_form(&x, &y).unwrap();
        prop_assert!((bxy - killing_form(&y, &x).unwrap()).norm() < 1e-10);
        let s = killing_form(&x.bracket(&y).unwrap(), &z).unwrap()
            + killing_form(&y, &x.bracket(&z).unwrap()).unwrap();
        prop_assert!(s.norm() < 1e-8);
    }

    #[test]
    fn splits_reconstruct(x in element(4)) {
        let (a, b, c) = triangular_split(&x);
        prop_assert!((&(&(&a + &b) + &c) - &x).max_abs() == 0.0);
        let (a, b, c) = parabolic_split(&x);
        prop_assert!((&(&(&a + &b) + &c) - &x).max_abs() == 0.0);
    }

    #[test]
    fn projector_recovers_coefficients(x in element(3)) {
        let b = x.basis().clone();
        let rep = DefiningRep::<f64>::new(b.rank());
        let p = Projector::new(b, &rep).unwrap();
        let (y, r) = p.coordinates(&rep.realize(&x));
        prop_assert!(r < 1e-12);
        prop_assert!((&y - &x).max_abs() < 1e-12);
    }
}
