mod common;

use common::*;
use proptest::prelude::*;
use spq_coherent::*;
use spq_numerics::{hermitian_eigen, max_abs, CMat};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn kernel_is_hermitian(seed in any::<u64>(), r1 in 0.05f64..0.9, r2 in 0.05f64..0.9) {
        let spec = one_box(3);
        let mut r = rng(seed);
        let zp = contraction(3, r1, &mut r);
        let z = contraction(3, r2, &mut r);
        let a = overlap_kernel(&zp, &z.conj(), &spec).unwrap();
        let b = overlap_kernel(&z, &zp.conj(), &spec).unwrap();
        prop_assert!(max_abs(&(a.adjoint() - b)) < 1e-10);
    }

    #[test]
    fn series_matches_closed_kernel(seed in any::<u64>()) {
        let spec = one_box(2);
        let mut r = rng(seed);
        let zp = contraction(2, 0.2, &mut r);
        let z = contraction(2, 0.2, &mut r);
        let series = kernel_series(&z, &spec, 10).unwrap().evaluate(&zp);
        let closed = overlap_kernel(&zp, &z, &spec).unwrap();
        prop_assert!(max_abs(&(series - closed)) < 1e-10);
    }

    #[test]
    fn two_point_gram_is_positive(seed in any::<u64>()) {
        let spec = one_box(2);
        let mut r = rng(seed);
        let a = contraction(2, 0.5, &mut r);
        let b = contraction(2, 0.8, &mut r);
        let mut g = CMat::zeros(4, 4);
        for (i, x) in [&a, &b].iter().enumerate() {
            for (j, y) in [&a, &b].iter().enumerate() {
                g.view_mut((2 * i, 2 * j), (2, 2)).copy_from(&overlap_kernel(x, &y.conj(), &spec).unwrap());
            }
        }
        let (vals, _) = hermitian_eigen(&(&g + g.adjoint()).scale(0.5));
        prop_assert!(vals.iter().all(|v| *v >= -1e-9));
    }

    #[test]
    fn u_action_preserves_degree(exps in prop::collection::vec(0u8..3, 6), k in 0usize..3, l in 0usize..3) {
        let spec = one_box(3);
        let mut v = CMat::zeros(3, 1);
        v[1] = 1.0.into();
        let psi = PolyWavefunction::monomial(3, exps.clone(), v);
        let out = cs_u_action(&spec).get(k, l).apply(&psi);
        let deg: usize = exps.iter().map(|&e| e as usize).sum();
        if let Some(d) = out.degree() {
            prop_assert_eq!(d, deg);
            prop_assert_eq!(out.lowest_degree(), Some(deg));
        }
    }
}
