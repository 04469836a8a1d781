use proptest::prelude::*;
use spq_numerics::*;

fn matrix(n: usize, scale: f64) -> impl Strategy<Value = CMat> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n).prop_map(move |v| {
        CMat::from_iterator(n, n, v.into_iter().map(|(a, b)| C64::new(a, b))) * C64::from(scale)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_times_exp_of_negative_is_identity(a in matrix(5, 1.0), s in 0.1..5.0f64) {
        let a = &a * C64::from(s / norm_1(&a).max(1e-300));
        let p = mat_exp(&a).unwrap() * mat_exp(&-&a).unwrap();
        prop_assert!(max_abs(&(p - CMat::identity(5, 5))) < 1e-11);
    }

    #[test]
    fn log_inverts_exp_in_principal_strip(a in matrix(4, 1.0)) {
        // spectral radius ≤ 2-norm < π keeps the spectrum inside |Im λ| < π
        let a = &a * C64::from(2.5 / spectral_norm(&a).max(1e-300));
        let l = mat_log_principal(&mat_exp(&a).unwrap()).unwrap();
        prop_assert!(max_abs(&(l - a)) < 1e-9);
    }

    #[test]
    fn disc_rule_exact_on_random_polynomial(
        coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 25),
        order in 4usize..8,
    ) {
        let q = disc_quadrature::<f64>(order).unwrap();
        let pi = std::f64::consts::PI;
        let mut want = C64::from(0.0);
        let mut terms = Vec::new();
        for (k, (re, im)) in coeffs.iter().enumerate() {
            let (a, b) = (k / 5, k % 5);
            if a + b > 2 * order { continue; }
            let c = C64::new(*re, *im);
            if a == b { want += c * pi / (a as f64 + 1.0); }
            terms.push((a as u32, b as u32, c));
        }
        let got = q.integrate(|z| terms.iter().map(|(a, b, c)| c * z.powu(*a) * z.conj().powu(*b)).sum());
        prop_assert!((got - want).norm() < 1e-11);
    }
}
