mod common;

use common::*;
use proptest::prelude::*;
use spq_algebra::{build_basis, Realization};
use spq_evolution::GeneratorSpec;
use spq_numerics::{max_abs, C64};
use spq_observables::*;
use spq_reps::build_fock;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn star_realization_gives_hermitian_metric(seed in any::<u64>()) {
        let fock = build_fock(2, 4).unwrap();
        let geo = PreGeometry::from_realization(fock.basis(), &fock).unwrap();
        let psi = random_state(fock.dim(), &mut rng(seed));
        let vev = vev_symplectic(&psi, &geo, None).unwrap();
        let raw = vev.eta_raw();
        prop_assert!(max_abs(&(&raw - raw.adjoint())) < 1e-12);
        prop_assert_eq!(vev.antisymmetry_residual(), 0.0);
    }

    #[test]
    fn bracket_is_antisymmetric_and_bilinear(seed in any::<u64>(), s in -2.0f64..2.0) {
        let mut r = rng(seed);
        let a = random_hermitian_matrix(4, 1.0, &mut r);
        let b = random_hermitian_matrix(4, 1.0, &mut r);
        let c = random_hermitian_matrix(4, 1.0, &mut r);
        let psi = random_state(4, &mut r);
        let ab = classical_bracket(&a, &b, &psi).unwrap();
        prop_assert!((ab + classical_bracket(&b, &a, &psi).unwrap()).norm() < 1e-13);
        let lin = classical_bracket(&a, &(&b * C64::from(s) + &c), &psi).unwrap();
        let want = ab * s + classical_bracket(&a, &c, &psi).unwrap();
        prop_assert!((lin - want).norm() < 1e-12);
        // self-adjoint arguments give a real bracket
        prop_assert!(ab.im.abs() < 1e-13);
    }

    #[test]
    fn stress_energy_is_nonnegative(seed in any::<u64>()) {
        let basis = build_basis(2).unwrap();
        let t = stress_energy(&build_phase_ops(&basis, &defining(2)));
        let psi = random_state(4, &mut rng(seed));
        let e = expectation(&t.trace(), &psi).unwrap();
        prop_assert!(e.re >= 0.0 && e.im.abs() < 1e-13);
    }

    #[test]
    fn boltzmann_preserves_trace(seed in any::<u64>()) {
        let basis = build_basis(2).unwrap();
        let rep = defining(2);
        let mut r = rng(seed);
        let h = random_hermitian(&basis, 0.5, &mut r);
        let spec = GeneratorSpec::constant(&basis, h, true);
        let a = random_state(4, &mut r);
        let b = random_state(4, &mut r);
        let rho = DensityState::new((&a * a.adjoint()) * C64::from(0.5) + (&b * b.adjoint()) * C64::from(0.5)).unwrap();
        let traj = boltzmann_flow(&rho, &spec, &rep, &grid(0.0, 1.0, 4)).unwrap();
        prop_assert!(traj.trace_drift() < 1e-10);
        let p0 = rho.purity();
        for s in &traj.states {
            let p = (s * s).trace().re;
            prop_assert!((p - p0).abs() < 1e-9);
        }
    }

    #[test]
    fn mode_flow_conserves_norm(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_hermitian_matrix(4, 1.0, &mut r);
        let v = random_hermitian_matrix(4, 0.4, &mut r);
        let mb = mode_basis(&t).unwrap();
        let c0 = random_state(4, &mut r);
        let traj = mode_expansion_flow(&c0, &mb, &v, &grid(0.0, 2.0, 4)).unwrap();
        prop_assert!(traj.norm_drift() < 1e-8);
        prop_assert!((mb.state(&traj.coefficient_vector(0)) - mb.state(&c0)).norm() < 1e-14);
    }

    #[test]
    fn ehrenfest_matches_realized_hamiltonian(seed in any::<u64>()) {
        let basis = build_basis(2).unwrap();
        let rep = defining(2);
        let mut r = rng(seed);
        let h = random_hermitian(&basis, 0.5, &mut r);
        let psi = random_state(4, &mut r);
        let init = generator_expectations(&basis, &rep, &psi).unwrap();
        let g = grid(0.0, 1.0, 2);
        let traj = ehrenfest_flow(&h, &init, &g).unwrap();
        let u = spq_numerics::mat_exp(&(rep.realize(&h) * C64::new(0.0, -1.0))).unwrap();
        let moved = &u * &psi;
        let want = generator_expectations(&basis, &rep, &moved).unwrap();
        for (a, b) in traj.values[2].iter().zip(&want) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }
}
