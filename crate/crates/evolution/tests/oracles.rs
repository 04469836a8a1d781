mod common;

use common::*;
use spq_algebra::{build_basis, AlgebraElement, DefiningRep, Generator, Rank, Realization};
use spq_coherent::{model_generator, PolyWavefunction};
use spq_evolution::*;
use spq_numerics::{frobenius, mat_exp, max_abs, CMat, CVec, C64};
use spq_reps::{FockKind, FockRealization, InducedRepSpec, ModuleSpace, Partition};

fn defining(n: usize) -> DefiningRep<f64> {
    DefiningRep::new(Rank::new(n).unwrap())
}

fn minus_i() -> C64 {
    C64::new(0.0, -1.0)
}

#[test]
fn constant_cartan_is_exact() {
    let basis = build_basis(2).unwrap();
    let rep = defining(2);
    let spec = GeneratorSpec::constant(&basis, gen(&basis, Generator::H(0)), true);
    let g = grid(0.0, 1.5, 6);
    let path = evolve_ode(&spec, &g, &rep, OdeOptions::default()).unwrap();
    let h = rep.generator(Generator::H(0));
    for (t, m) in path.times.iter().zip(&path.matrices) {
        assert!(max_abs(&(m - mat_exp(&(&h * (minus_i() * *t))).unwrap())) < 1e-10);
    }
    assert_eq!(path.matrices[0], CMat::identity(4, 4));
}

#[test]
fn commuting_generator_integrates_exactly() {
    let basis = build_basis(2).unwrap();
    let rep = defining(2);
    let spec = GeneratorSpec::new(&basis, true)
        .real_term(|t| 1.0 + t, gen(&basis, Generator::H(0)))
        .real_term(|t| t * t, gen(&basis, Generator::H(1)));
    assert!(spec.is_commuting());
    let path = evolve_ode(&spec, &grid(0.0, 1.0, 4), &rep, OdeOptions::default()).unwrap();
    let h1 = rep.generator(Generator::H(0));
    let h2 = rep.generator(Generator::H(1));
    let t: f64 = 1.0;
    let integral = &h1 * C64::from(t + t * t / 2.0) + &h2 * C64::from(t.powi(3) / 3.0);
    assert!(max_abs(&(path.last() - mat_exp(&(integral * minus_i())).unwrap())) < 1e-10);
    let mag = magnus_expand(&spec, 0.0, 1.0, 1, &rep).unwrap();
    assert!(max_abs(&(path.last() - mag)) < 1e-10);
}

#[test]
fn self_adjoint_path_stays_unitary() {
    let basis = build_basis(3).unwrap();
    let rep = defining(3);
    let spec = GeneratorSpec::new(&basis, true)
        .real_term(|t| 0.7 * (2.0 * t).sin(), sym(&basis, Generator::e(0, 2)))
        .real_term(|t| 1.0 - 0.3 * t, sym(&basis, Generator::U(1, 2)));
    let path = evolve_ode(&spec, &grid(0.0, 2.0, 20), &rep, OdeOptions::default()).unwrap();
    assert!(path.unitarity_drift() < 1e-9);
}

#[test]
fn flagged_non_hermitian_generator_is_rejected() {
    let basis = build_basis(1).unwrap();
    let spec = GeneratorSpec::constant(&basis, gen(&basis, Generator::e(0, 0)), true);
    let err = evolve_ode(&spec, &grid(0.0, 1.0, 2), &defining(1), OdeOptions::default()).unwrap_err();
    assert!(matches!(err, EvolutionError::NotSelfAdjoint(..)));
    let ok = GeneratorSpec::constant(&basis, gen(&basis, Generator::H(0)), true);
    assert!(matches!(
        evolve_ode(&ok, &[0.0, 0.0], &defining(1), OdeOptions::default()),
        Err(EvolutionError::BadGrid)
    ));
}

fn cross_check(n: usize) {
    let rep = defining(n);
    let spec = two_term(n);
    assert!(!spec.is_commuting());
    let g = grid(0.0, 0.5, 10);
    let ode = evolve_ode(&spec, &g, &rep, OdeOptions::default()).unwrap();
    let mag = evolve_magnus(&spec, &g, 4, 5, &rep).unwrap();
    let wn = wei_norman(&spec, &g, None, WeiNormanOptions { substeps: 5, ..Default::default() })
        .unwrap()
        .reconstruct(&rep)
        .unwrap();
    assert!(ode.max_distance(&mag) < 1e-7, "ode/magnus {}", ode.max_distance(&mag));
    assert!(ode.max_distance(&wn) < 1e-7, "ode/wn {}", ode.max_distance(&wn));
    assert!(mag.max_distance(&wn) < 1e-7);
    assert!(ode.unitarity_drift() < 1e-9);
    assert!(mag.unitarity_drift() < 1e-9);
}

#[test]
fn integrators_agree_rank_one() {
    cross_check(1);
}

#[test]
fn integrators_agree_rank_four() {
    cross_check(4);
}

#[test]
fn magnus_local_orders() {
    let rep = defining(1);
    let spec = two_term(1);
    for (order, min_slope) in [(2usize, 2.8), (4, 4.8)] {
        let errs: Vec<f64> = [0.2, 0.1, 0.05]
            .iter()
            .map(|&t| {
                let exact = evolve_ode(&spec, &[0.0, t], &rep, OdeOptions::default()).unwrap();
                frobenius(&(magnus_expand(&spec, 0.0, t, order, &rep).unwrap() - exact.last()))
            })
            .collect();
        for w in errs.windows(2) {
            let slope = (w[0] / w[1]).log2();
            assert!(slope > min_slope, "order {order}: slope {slope}");
        }
    }
    let ode = evolve_ode(&spec, &[0.0, 0.5], &rep, OdeOptions::default()).unwrap();
    let one = magnus_expand(&spec, 0.0, 0.5, 4, &rep).unwrap();
    assert!(frobenius(&(one - ode.last())) < 1e-3);
}

#[test]
fn magnus_guard_and_order() {
    let basis = build_basis(1).unwrap();
    let rep = defining(1);
    let spec = GeneratorSpec::constant(&basis, sym(&basis, Generator::e(0, 0)), true);
    assert!(matches!(magnus_expand(&spec, 0.0, 2.0, 4, &rep), Err(EvolutionError::MagnusGuard(_))));
    assert!(matches!(magnus_expand(&spec, 0.0, 0.1, 5, &rep), Err(EvolutionError::MagnusOrder(5))));
}

#[test]
fn wei_norman_cartan_coordinate_is_integral() {
    let basis = build_basis(2).unwrap();
    let spec = GeneratorSpec::new(&basis, true).real_term(|t| 2.0 + t.sin(), gen(&basis, Generator::H(1)));
    let coords = wei_norman(&spec, &grid(0.0, 1.0, 4), None, WeiNormanOptions::default()).unwrap();
    let h2 = basis.index_of(Generator::H(1)).unwrap();
    let series = coords.series(h2).unwrap();
    for (t, g) in coords.times.iter().zip(&series) {
        assert!((g - C64::from(2.0 * t + 1.0 - t.cos())).norm() < 1e-10);
    }
    for (k, idx) in coords.ordering.iter().enumerate() {
        if *idx != h2 {
            assert!(coords.gammas.iter().all(|g| g[k].norm() < 1e-14));
        }
    }
}

#[test]
fn wei_norman_reconstructs_rank_one_mixed_spec() {
    let rep = defining(1);
    let basis = build_basis(1).unwrap();
    let spec = GeneratorSpec::new(&basis, true)
        .real_term(|t| 1.0 + 0.5 * t, gen(&basis, Generator::H(0)))
        .real_term(|t| 0.4 * (3.0 * t).cos(), sym(&basis, Generator::e(0, 0)));
    let g = grid(0.0, 1.0, 10);
    let wn = wei_norman(&spec, &g, None, WeiNormanOptions { substeps: 10, ..Default::default() }).unwrap();
    let path = wn.reconstruct(&rep).unwrap();
    let ode = evolve_ode(&spec, &g, &rep, OdeOptions::default()).unwrap();
    assert!(path.max_distance(&ode) < 1e-8);
}

#[test]
fn wei_norman_triangular_support() {
    let basis = build_basis(2).unwrap();
    let spec = GeneratorSpec::new(&basis, false)
        .real_term(|_| 1.0, gen(&basis, Generator::H(0)))
        .real_term(|_| 0.1, gen(&basis, Generator::e(0, 0)));
    let g = grid(0.0, 1.0, 5);
    let full = wei_norman(&spec, &g, None, WeiNormanOptions::default()).unwrap();
    for k in basis.sector_indices(spq_algebra::Sector::ZMinus) {
        assert!(full.series(k).unwrap().iter().all(|c| c.norm() < 1e-12));
    }
    let partial: Vec<usize> = parabolic_ordering(&basis)
        .into_iter()
        .filter(|k| basis.label(*k).sector() != spq_algebra::Sector::ZMinus)
        .collect();
    let restricted = wei_norman(&spec, &g, Some(&partial), WeiNormanOptions::default()).unwrap();
    let rep = defining(2);
    let a = full.reconstruct(&rep).unwrap();
    let b = restricted.reconstruct(&rep).unwrap();
    assert!(a.max_distance(&b) < 1e-12);
}

#[test]
fn wei_norman_chart_failure() {
    let basis = build_basis(1).unwrap();
    let e = basis.index_of(Generator::e(0, 0)).unwrap();
    let spec = GeneratorSpec::constant(&basis, sym(&basis, Generator::e(0, 0)), true);
    let dup = [e, e, e];
    assert!(matches!(
        wei_norman(&spec, &grid(0.0, 0.1, 1), Some(&dup), WeiNormanOptions::default()),
        Err(EvolutionError::SingularFrame { .. })
    ));
}

#[test]
fn heisenberg_basics() {
    let basis = build_basis(2).unwrap();
    let rep = defining(2);
    let spec = GeneratorSpec::constant(&basis, gen(&basis, Generator::H(0)), true);
    let path = evolve_ode(&spec, &grid(0.0, 1.0, 5), &rep, OdeOptions::default()).unwrap();
    let x = rep.generator(Generator::H(1));
    for xt in heisenberg_evolve(&x, &path).unwrap() {
        assert!(max_abs(&(xt - &x)) < 1e-12);
    }
    assert!(matches!(
        heisenberg_evolve(&CMat::zeros(3, 3), &path),
        Err(EvolutionError::RealizationMismatch(_))
    ));
}

#[test]
fn heisenberg_trace_and_defect() {
    let rep = defining(2);
    let spec = two_term(2);
    let path = evolve_ode(&spec, &grid(0.0, 1.0, 1000), &rep, OdeOptions::default()).unwrap();
    let x = rep.generator(Generator::e_dag(0, 1)) + rep.generator(Generator::U(1, 0));
    let traj = heisenberg_evolve(&x, &path).unwrap();
    let tr0 = (&x * &x).trace();
    for xt in &traj {
        assert!(((xt * xt).trace() - tr0).norm() < 1e-9);
    }
    assert!(heisenberg_defect(&spec, &path, &x, &rep).unwrap() < 1e-5);
}

fn random_hermitian(basis: &std::sync::Arc<spq_algebra::AlgebraBasis>, seed: u64) -> AlgebraElement<f64> {
    let mut x = AlgebraElement::zero(basis);
    let mut s = seed;
    for g in basis.labels() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let c = ((s >> 33) as f64 / (1u64 << 31) as f64 - 0.5) * 0.6;
        match g {
            Generator::H(_) => x = &x + &(&gen(basis, *g) * c),
            Generator::E(..) | Generator::U(..) => x = &x + &(&sym(basis, *g) * c),
            Generator::EDag(..) => {}
        }
    }
    x
}

#[test]
fn second_order_identity() {
    let basis = build_basis(4).unwrap();
    let rep = defining(4);
    let h = rep.realize(&random_hermitian(&basis, 7));
    let x = rep.generator(Generator::e_dag(1, 2));
    for t in [0.0, 0.4, 1.3] {
        assert!(second_order_residual(&h, &x, t, 1e-3).unwrap() < 1e-6);
    }
}

#[test]
fn gauge_claims() {
    let basis = build_basis(4).unwrap();
    let rep = defining(4);
    let x = rep.generator(Generator::e_dag(0, 2));
    // internal: H in the u(4) span
    let internal = &(&sym(&basis, Generator::U(0, 1)) * 0.7) + &(&gen(&basis, Generator::H(2)) * -0.4);
    let hu = rep.realize(&(&internal + &(&sym(&basis, Generator::U(2, 3)) * 0.3)));
    for t in [0.2, 1.0] {
        assert!(gauge_defects(&hu, &x, t).unwrap().single < 1e-9);
    }
    // external: H ~ Σ (e ± e†)
    let mut ext = &sym(&basis, Generator::e(0, 1)) * 0.5;
    ext = &ext + &(&(&gen(&basis, Generator::e(2, 2)) - &gen(&basis, Generator::e_dag(2, 2))) * C64::new(0.0, 0.8));
    let he = rep.realize(&ext);
    assert!(max_abs(&(&he - he.adjoint())) < 1e-12);
    for t in [0.2, 1.0] {
        assert!(gauge_defects(&he, &x, t).unwrap().double < 1e-9);
    }
    // a generic H violates the internal identity
    let hg = rep.realize(&random_hermitian(&basis, 3));
    assert!(gauge_defects(&hg, &x, 0.5).unwrap().single > 1e-3);
}

fn one_box(n: usize) -> InducedRepSpec {
    let fock = spq_reps::build_fock(n, 4).unwrap();
    let mut p = vec![0; n];
    p[0] = 1;
    let part = Partition::new(p).unwrap();
    let m = spq_reps::u4_lowest_module(&fock, &part).unwrap();
    InducedRepSpec::with_default_shift(part, m)
}

#[test]
fn schrodinger_constant_under_u_action_on_trivial_module() {
    let basis = build_basis(2).unwrap();
    let induced = InducedRepSpec::new(Partition::new(vec![0, 0]).unwrap(), ModuleSpace::trivial(&basis), 0.0);
    let spec = GeneratorSpec::constant(&basis, sym(&basis, Generator::U(0, 1)), true);
    let psi = PolyWavefunction::constant(2, CMat::identity(1, 1));
    let traj = schrodinger_evolve(&psi, &spec, &induced, &grid(0.0, 1.0, 4), 4, 10).unwrap();
    assert!(traj.states.last().unwrap().sub(&psi).max_abs() < 1e-14);
}

#[test]
fn schrodinger_cartan_eigenphases() {
    let n = 3;
    let basis = build_basis(n).unwrap();
    let induced = one_box(n);
    let spec = GeneratorSpec::constant(&basis, gen(&basis, Generator::H(0)), true);
    // weight vector of the module and the monomial z11 z12 z23
    let k = 1;
    let w = induced.module().weights()[k][0] + induced.shift();
    let mut v = CMat::zeros(n, 1);
    v[k] = C64::from(1.0);
    let idx = spq_coherent::VarIndex::new(n);
    let mut exps = vec![0u8; idx.count()];
    exps[idx.of(0, 0)] = 1;
    exps[idx.of(0, 1)] = 1;
    exps[idx.of(1, 2)] = 1;
    let psi = PolyWavefunction::monomial(n, exps, v);
    // z11 counts twice, z12 once, z23 not at all
    let lambda = 2.0 + 1.0 + w;
    let direct = model_generator(Generator::H(0), &induced).apply(&psi);
    assert!(direct.sub(&psi.scale(C64::from(lambda))).max_abs() < 1e-14);
    let traj = schrodinger_evolve(&psi, &spec, &induced, &grid(0.0, 0.7, 7), 3, 100).unwrap();
    let want = psi.scale(C64::from_polar(1.0, -lambda * 0.7));
    let err = traj.states.last().unwrap().sub(&want).max_abs();
    assert!(err < 1e-9, "{err}");
}

#[test]
fn schrodinger_degree_cap() {
    let basis = build_basis(1).unwrap();
    let induced = one_box(1);
    let spec = GeneratorSpec::constant(&basis, gen(&basis, Generator::e(0, 0)), false);
    let psi = PolyWavefunction::constant(1, CMat::identity(1, 1));
    assert!(matches!(
        schrodinger_evolve(&psi, &spec, &induced, &grid(0.0, 1.0, 2), 2, 4),
        Err(EvolutionError::TruncationOverflow { .. })
    ));
}

#[test]
fn heisenberg_and_schrodinger_pictures_agree() {
    let rep = defining(2);
    let spec = two_term(2);
    let path = evolve_ode(&spec, &grid(0.0, 1.0, 5), &rep, OdeOptions::default()).unwrap();
    let o = rep.generator(Generator::e(0, 1)) + rep.generator(Generator::H(1));
    let phi = CVec::from_fn(4, |k, _| C64::new(k as f64 * 0.3, 1.0 - k as f64 * 0.2));
    let psi = CVec::from_fn(4, |k, _| C64::new(0.5 - k as f64 * 0.1, k as f64 * 0.4));
    let ot = heisenberg_evolve(&o, &path).unwrap();
    let phis = schrodinger_vectors(&path, &phi);
    let psis = schrodinger_vectors(&path, &psi);
    for k in 0..path.len() {
        let heis = phi.dotc(&(&ot[k] * &psi));
        let schr = phis[k].dotc(&(&o * &psis[k]));
        assert!((heis - schr).norm() < 1e-7);
    }
}

#[test]
fn parabolic_drift_cases() {
    let basis = build_basis(2).unwrap();
    let rep = defining(2);
    let g = grid(0.0, 1.0, 5);
    let inside = GeneratorSpec::new(&basis, false)
        .real_term(|_| 1.0, gen(&basis, Generator::H(0)))
        .real_term(|t| 0.5 + t, gen(&basis, Generator::U(0, 1)))
        .real_term(|_| 0.3, gen(&basis, Generator::e_dag(0, 1)));
    let path = evolve_ode(&inside, &g, &rep, OdeOptions::default()).unwrap();
    assert!(parabolic_drift(&path, &basis, &rep).unwrap().max() < 1e-10);

    let outside = GeneratorSpec::constant(&basis, sym(&basis, Generator::e(0, 0)), true);
    let moved = evolve_ode(&outside, &g, &rep, OdeOptions::default()).unwrap();
    let report = parabolic_drift(&moved, &basis, &rep).unwrap();
    assert!(report.leakage[0] < 1e-12);
    assert!(report.leakage[1..].iter().all(|l| *l > 1e-3));
    assert_eq!(report.rows().len(), g.len());

    // conjugating by a fixed parabolic element keeps the zero set
    let q = mat_exp(&rep.realize(&(&gen(&basis, Generator::U(1, 0)) * 0.4))).unwrap();
    let qinv = q.clone().try_inverse().unwrap();
    for (src, zero) in [(path, true), (moved, false)] {
        let mut conj = src.clone();
        for m in conj.matrices.iter_mut() {
            *m = &q * &*m * &qinv;
        }
        let r = parabolic_drift(&conj, &basis, &rep).unwrap();
        assert_eq!(r.leakage[1..].iter().all(|l| *l < 1e-10), zero);
    }
}

#[test]
fn nonunitary_probe_rates() {
    let basis = build_basis(1).unwrap();
    let fock = FockRealization::build(1, 8, FockKind::Oscillator).unwrap();
    let mut vac = CVec::zeros(fock.space().dim());
    vac[0] = C64::from(1.0);
    let lambda = 0.5;
    let g = grid(0.0, 1.0, 10);
    let h1 = gen(&basis, Generator::H(0));
    let unitary = GeneratorSpec::constant(&basis, h1.clone(), true);
    assert!(nonunitary_probe(&unitary, &g, &fock, &vac).unwrap().max_drift() < 1e-9);
    for eps in [0.05, -0.05] {
        let spec = GeneratorSpec::new(&basis, false)
            .real_term(|_| 1.0, h1.clone())
            .term(move |_| C64::new(0.0, eps), h1.clone());
        let drift = nonunitary_probe(&spec, &g, &fock, &vac).unwrap();
        assert!((drift.log_rate() - 2.0 * eps * lambda).abs() < 1e-9);
    }
    let wild = GeneratorSpec::new(&basis, false).term(|_| C64::new(0.0, 60.0), h1);
    let res = nonunitary_probe(&wild, &g, &fock, &vac);
    assert!(matches!(res, Err(EvolutionError::BlowUp(_))), "{:?}", res.map(|d| d.max_drift()));
}

#[test]
fn path_rows_cover_entries() {
    let rep = defining(1);
    let path = evolve_ode(&two_term(1), &grid(0.0, 0.2, 2), &rep, OdeOptions::default()).unwrap();
    let rows = path.rows();
    assert_eq!(rows.len(), 3 * 4);
    assert_eq!(rows[0].method, "ode");
}
