mod common;

use common::*;
use spq_algebra::{build_basis, Generator, Realization};
use spq_coherent::*;
use spq_numerics::{hermitian_eigen, mat_exp, max_abs, CMat, CVec, C64};
use spq_reps::{FockKind, FockRealization, InducedRepSpec, ModuleSpace, Partition};

fn c(x: f64) -> C64 {
    C64::from(x)
}

fn one() -> CMat {
    CMat::identity(1, 1)
}

fn var(n: usize, a: usize, b: usize) -> PolyWavefunction {
    PolyWavefunction::variable(n, a, b, one())
}

#[test]
fn lowering_examples() {
    let spec = trivial(2);
    let low = cs_lowering(&spec);
    let constant = PolyWavefunction::constant(2, one());
    assert_eq!(low.get(0, 0).apply(&constant).degree(), None);
    let r = low.get(0, 0).apply(&var(2, 0, 0));
    assert_eq!(r, PolyWavefunction::constant(2, one().scale(2.0)));
    let r = low.get(0, 1).apply(&var(2, 0, 1));
    assert_eq!(r, PolyWavefunction::constant(2, one()));
    assert_eq!(low.get(1, 0), low.get(0, 1));
}

#[test]
fn degree_shifts() {
    let spec = one_box(2);
    for k in 0..2 {
        for l in 0..2 {
            assert_eq!(cs_lowering(&spec).get(k, l).degree_shift(), (-1, -1));
            assert_eq!(cs_raising(&spec, 2).get(k, l).degree_shift(), (1, 1));
            assert_eq!(cs_u_action(&spec).get(k, l).degree_shift(), (0, 0));
        }
    }
}

#[test]
fn raising_on_constant() {
    // [Z∂_Z − (d+1)]Z · 1 = (n − d) Z
    let n = 3;
    let spec = trivial(n);
    let constant = PolyWavefunction::constant(n, one());
    for d in [n, n - 1, 0] {
        let up = cs_raising(&spec, d);
        for k in 0..n {
            for l in 0..n {
                let got = up.get(k, l).apply(&constant);
                let want = var(n, k, l).scale(c(n as f64 - d as f64));
                assert!(got.sub(&want).max_abs() < 1e-15, "d={d}");
            }
        }
    }
}

#[test]
fn u_action_is_euler_on_trivial_module() {
    let spec = trivial(2);
    let u = cs_u_action(&spec);
    assert_eq!(u.get(0, 1).apply(&PolyWavefunction::constant(2, one())).degree(), None);
    let sq = var(2, 0, 1).mul_truncated(&var(2, 0, 1), 4);
    // each diagonal entry counts occurrences of its index: z12² carries
    // index 1 twice and index 2 twice.
    assert!(u.get(0, 0).apply(&sq).sub(&sq.scale(c(2.0))).max_abs() < 1e-15);
    assert!(u.get(1, 1).apply(&sq).sub(&sq.scale(c(2.0))).max_abs() < 1e-15);
    let trace = u.get(0, 0).add(u.get(1, 1));
    let cube = sq.mul_truncated(&var(2, 1, 1), 4);
    assert!(trace.apply(&cube).sub(&cube.scale(c(6.0))).max_abs() < 1e-15);
}

#[test]
fn homomorphism_rank_one() {
    for spec in [trivial(1), one_box(1), character(1, 0.5)] {
        assert!(homomorphism_defect(&spec, 4) < 1e-10);
    }
}

#[test]
fn homomorphism_rank_two() {
    assert!(homomorphism_defect(&one_box(2), 3) < 1e-10);
}

#[test]
fn homomorphism_rank_four_trivial() {
    assert!(homomorphism_defect(&trivial(4), 3) < 1e-8);
}

#[test]
fn homomorphism_rank_four_one_box() {
    assert!(homomorphism_defect(&one_box(4), 3) < 1e-8);
}

#[test]
fn lowering_raising_bracket_is_four_h() {
    // [−Ê₋, Ê₊] on the (1,1) entry reproduces 4 i_11
    let spec = one_box(2);
    let e = model_generator(Generator::e(0, 0), &spec);
    let ed = model_generator(Generator::e_dag(0, 0), &spec);
    let h = model_generator(Generator::H(0), &spec);
    let mut v = CMat::zeros(2, 1);
    v[0] = c(0.3);
    v[1] = C64::new(0.1, -0.7);
    let psi = PolyWavefunction::constant(2, v.clone())
        .add(&PolyWavefunction::variable(2, 0, 1, v.clone()))
        .add(&PolyWavefunction::variable(2, 1, 1, v).mul_truncated(&var(2, 0, 0), 4));
    let lhs = e.apply(&ed.apply(&psi)).sub(&ed.apply(&e.apply(&psi)));
    let rhs = h.apply(&psi).scale(c(4.0));
    assert!(lhs.sub(&rhs).max_abs() < 1e-12);
}

#[test]
fn raising_needs_d_equal_rank() {
    let spec = trivial(2);
    // The (1,1) bracket with d = n − 1 misses the linear Z term.
    let e = cs_raising(&spec, 1).get(0, 0).clone();
    let ed = cs_lowering(&spec).get(0, 0).scale(c(-1.0));
    let h = model_generator(Generator::H(0), &spec);
    let psi = PolyWavefunction::constant(2, one());
    let lhs = e.apply(&ed.apply(&psi)).sub(&ed.apply(&e.apply(&psi)));
    assert!(lhs.sub(&h.apply(&psi).scale(c(4.0))).max_abs() > 0.5);
}

#[test]
fn vacuum_relations() {
    let spec = one_box(4);
    let n = 4;
    let mut v = CMat::zeros(4, 1);
    v[2] = c(1.0);
    v[0] = C64::new(0.0, 0.5);
    let psi0 = PolyWavefunction::constant(n, v.clone());
    let low = cs_lowering(&spec);
    let u = cs_u_action(&spec);
    let up = cs_raising(&spec, n);
    for k in 0..n {
        for l in 0..n {
            assert_eq!(low.get(k, l).apply(&psi0).degree(), None);
            let want = PolyWavefunction::constant(n, spec.u_matrix(k, l) * &v);
            assert!(u.get(k, l).apply(&psi0).sub(&want).max_abs() < 1e-14);
            // Ê₊Ψ₀ = Sym(Z ⊗ 𝕌)Ψ₀
            let mut sym = PolyWavefunction::zero(n, 4, 1);
            for b in 0..n {
                sym = sym.add(&PolyWavefunction::variable(n, l, b, spec.u_matrix(k, b) * &v));
                sym = sym.add(&PolyWavefunction::variable(n, k, b, spec.u_matrix(l, b) * &v));
            }
            assert!(up.get(k, l).apply(&psi0).sub(&sym).max_abs() < 1e-14);
        }
    }
}

#[test]
fn kernel_at_origin_is_identity() {
    let spec = one_box(4);
    let mut r = rng(3);
    let z = contraction(4, 0.6, &mut r);
    let k = overlap_kernel(&SymCoord::zero(4), &z, &spec).unwrap();
    assert!(max_abs(&(k - CMat::identity(4, 4))) < 1e-13);
}

/// ⟨Z′|Z*⟩ from truncated Fock states exp(½ Σ z̄_ab e_ab) v.
fn fock_overlap(fock: &FockRealization, vecs: &[CVec], zp: &SymCoord, z: &SymCoord) -> CMat {
    let left: Vec<CVec> = vecs.iter().map(|v| exp_cs(zp, fock, v).unwrap()).collect();
    let right: Vec<CVec> = vecs.iter().map(|v| exp_cs(z, fock, v).unwrap()).collect();
    CMat::from_fn(vecs.len(), vecs.len(), |a, b| left[a].dotc(&right[b]))
}

#[test]
fn rank_one_kernel_matches_fock_series() {
    let fock = FockRealization::build(1, 60, FockKind::Oscillator).unwrap();
    let mut vac = CVec::zeros(fock.space().dim());
    vac[0] = c(1.0);
    let basis = build_basis(1).unwrap();
    // i_11 acts on the oscillator vacuum by ½
    let spec = InducedRepSpec::new(Partition::new(vec![0]).unwrap(), ModuleSpace::character(&basis, 0.5), 0.0);
    let samples = [
        (C64::new(0.5, 0.0), C64::new(0.5, 0.0)),
        (C64::new(0.3, -0.4), C64::new(-0.2, 0.45)),
        (C64::from_polar(0.5, 2.0), C64::from_polar(0.5, -0.3)),
        (C64::new(0.0, 0.1), C64::new(0.25, 0.0)),
    ];
    for (a, b) in samples {
        let zp = SymCoord::from_vars(1, &[a]);
        let z = SymCoord::from_vars(1, &[b]);
        let want = fock_overlap(&fock, &[vac.clone()], &zp, &z)[(0, 0)];
        let got = overlap_kernel(&zp, &z.conj(), &spec).unwrap()[(0, 0)];
        assert!((want - got).norm() < 1e-8, "{a} {b}: {want} vs {got}");
    }
}

#[test]
fn one_particle_kernel_matches_fock() {
    // Odd oscillator sector: lowest u(2) module spanned by a_a†|0⟩.
    let n = 2;
    let fock = FockRealization::build(n, 40, FockKind::Oscillator).unwrap();
    let d = fock.space().dim();
    let cols: Vec<CVec> = (0..n)
        .map(|a| {
            let mut occ = vec![0u8; n];
            occ[a] = 1;
            let mut v = CVec::zeros(d);
            v[fock.space().index_of(&occ).unwrap()] = c(1.0);
            v
        })
        .collect();
    let module = ModuleSpace::from_span("one particle", &fock, CMat::from_columns(&cols)).unwrap();
    assert!(module.invariance_residual() < 1e-12);
    assert!(module.zminus_residual() < 1e-12);
    let vecs: Vec<CVec> = (0..n).map(|k| module.ambient().unwrap().column(k).into_owned()).collect();
    let spec = InducedRepSpec::new(Partition::new(vec![1, 0]).unwrap(), module, 0.0);
    let mut r = rng(11);
    for _ in 0..4 {
        let zp = contraction(n, 0.45, &mut r);
        let z = contraction(n, 0.45, &mut r);
        let want = fock_overlap(&fock, &vecs, &zp, &z);
        let got = overlap_kernel(&zp, &z.conj(), &spec).unwrap();
        assert!(max_abs(&(want - got)) < 1e-8);
    }
}

#[test]
fn kernel_hermiticity() {
    let spec = one_box(4);
    let mut r = rng(5);
    for _ in 0..5 {
        let zp = contraction(4, 0.7, &mut r);
        let z = contraction(4, 0.7, &mut r);
        let a = overlap_kernel(&zp, &z.conj(), &spec).unwrap();
        let b = overlap_kernel(&z, &zp.conj(), &spec).unwrap();
        assert!(max_abs(&(a.adjoint() - b)) < 1e-10);
    }
}

fn gram(spec: &InducedRepSpec, points: &[SymCoord]) -> CMat {
    let d = spec.module().dim();
    let p = points.len();
    let mut g = CMat::zeros(p * d, p * d);
    for (i, zi) in points.iter().enumerate() {
        for (j, zj) in points.iter().enumerate() {
            let k = overlap_kernel(zi, &zj.conj(), spec).unwrap();
            g.view_mut((i * d, j * d), (d, d)).copy_from(&k);
        }
    }
    g
}

#[test]
fn kernel_gram_is_positive() {
    let mut r = rng(17);
    for spec in [one_box(4), character(4, 5.0), one_box(1)] {
        let n = spec.n();
        let points: Vec<SymCoord> = (0..10).map(|k| contraction(n, 0.1 + 0.08 * k as f64, &mut r)).collect();
        let g = gram(&spec, &points);
        assert!(max_abs(&(&g - g.adjoint())) < 1e-10);
        let (vals, _) = hermitian_eigen(&(&g + g.adjoint()).scale(0.5));
        assert!(vals.iter().all(|v| *v >= -1e-9), "{vals}");
    }
}

#[test]
fn character_kernel_is_determinant_power() {
    let spec = character(4, 2.5);
    let mut r = rng(23);
    let zp = contraction(4, 0.6, &mut r);
    let z = contraction(4, 0.6, &mut r);
    let k = overlap_kernel(&zp, &z, &spec).unwrap()[(0, 0)];
    let det = (CMat::identity(4, 4) - zp.matrix() * z.matrix()).determinant();
    assert!((k - det.powf(-2.5)).norm() < 1e-10 * k.norm());
}

#[test]
fn kernel_domain_and_symmetry_errors() {
    let spec = character(1, 2.0);
    let z = SymCoord::from_vars(1, &[c(1.0)]);
    assert!(matches!(overlap_kernel(&z, &z, &spec), Err(CoherentError::KernelDomain(_))));
    let mut m = CMat::zeros(2, 2);
    m[(0, 1)] = c(0.1);
    assert!(matches!(SymCoord::new(m), Err(CoherentError::NotSymmetric)));
}

#[test]
fn resolution_normalization_matches_beta_integral() {
    for lambda in [2.0, 3.0] {
        let spec = character(1, lambda);
        let norm = resolution_normalization(&spec, 12).unwrap();
        assert!((norm - (lambda - 1.0) / std::f64::consts::PI).abs() < 1e-12);
        let p0 = resolution_measure(&SymCoord::zero(1), &spec, norm).unwrap();
        assert!((p0[(0, 0)] - norm).norm() < 1e-14);
    }
}

#[test]
fn resolution_reconstructs_identity() {
    for lambda in [2.0, 3.0] {
        let spec = character(1, lambda);
        let r = identity_reconstruction(&spec, 5, 12).unwrap();
        assert!(max_abs(&(r - CMat::identity(6, 6))) < 1e-6);
    }
}

#[test]
fn resolution_density_positive() {
    let spec = one_box(4);
    let mut r = rng(29);
    for k in 0..8 {
        let z = contraction(4, 0.1 * k as f64 + 0.05, &mut r);
        let p = resolution_measure(&z, &spec, 1.0).unwrap();
        let (vals, _) = hermitian_eigen(&(&p + p.adjoint()).scale(0.5));
        assert!(vals.iter().all(|v| *v > 0.0));
    }
}

#[test]
fn symbol_of_identity_is_kernel() {
    let spec = one_box(2);
    let mut r = rng(31);
    let zp = contraction(2, 0.3, &mut r);
    let z = contraction(2, 0.3, &mut r);
    let id = CsOperator::identity(2, 2);
    let s = operator_symbol(&id, &zp, &z, &spec, 14).unwrap();
    let k = overlap_kernel(&zp, &z, &spec).unwrap();
    assert!(max_abs(&(s - k)) < 1e-10);
}

#[test]
fn symbol_of_u_action_at_origin() {
    let spec = trivial(4);
    let u = cs_u_action(&spec);
    let zero = SymCoord::zero(4);
    for (k, l) in [(0, 0), (1, 3)] {
        let s = operator_symbol(u.get(k, l), &zero, &zero, &spec, 3).unwrap();
        assert_eq!(max_abs(&s), 0.0);
    }
}

#[test]
fn symbol_of_lowering_is_holomorphic_derivative() {
    let spec = character(1, 2.0);
    let low = cs_lowering(&spec);
    let zs = SymCoord::from_vars(1, &[C64::new(0.2, -0.3)]);
    let z0 = C64::new(0.25, 0.1);
    let s = operator_symbol(low.get(0, 0), &SymCoord::from_vars(1, &[z0]), &zs, &spec, 40).unwrap()[(0, 0)];
    let h = 1e-5;
    let k = |z: C64| overlap_kernel(&SymCoord::from_vars(1, &[z]), &zs, &spec).unwrap()[(0, 0)];
    let fd = (k(z0 + h) - k(z0 - h)) / (2.0 * h);
    assert!((s - fd * 2.0).norm() < 1e-8);
}

#[test]
fn gauge_trace_invariance() {
    let spec = one_box(4);
    let mut r = rng(37);
    let zp = contraction(4, 0.3, &mut r);
    let z = contraction(4, 0.3, &mut r);
    let s = operator_symbol(cs_u_action(&spec).get(1, 2), &zp, &z, &spec, 5).unwrap();
    let mut x = CMat::zeros(4, 4);
    for (a, b, w) in [(0, 1, 0.3), (2, 2, -0.4), (3, 0, 0.7)] {
        x += spec.u_matrix(a, b) * c(w);
    }
    let p = mat_exp(&x).unwrap();
    let pinv = p.clone().try_inverse().unwrap();
    let conj = &p * &s * pinv;
    assert!((conj.trace() - s.trace()).norm() < 1e-9);
}

#[test]
fn cayley_basics() {
    let fock = FockRealization::build(2, 12, FockKind::Oscillator).unwrap();
    let d = fock.space().dim();
    let mut vac = CVec::zeros(d);
    vac[0] = c(1.0);
    let zero = SymCoord::zero(2);
    assert_eq!(cayley_cs(&zero, &fock, &vac).unwrap(), vac);
    let mut r = rng(41);
    let z = contraction(2, 0.2, &mut r);
    let plus = cayley_matrix(&z, &fock).unwrap();
    let minus = cayley_matrix(&z.scale(c(-1.0)), &fock).unwrap();
    assert!(max_abs(&(plus * minus - CMat::identity(d, d))) < 1e-12);
}

#[test]
fn cayley_agrees_with_exponential_to_third_order() {
    let fock = FockRealization::build(1, 30, FockKind::Oscillator).unwrap();
    let mut vac = CVec::zeros(fock.space().dim());
    vac[0] = c(1.0);
    let dir = C64::from_polar(1.0, 0.7);
    let errs: Vec<(f64, f64)> = [0.02, 0.04, 0.08]
        .iter()
        .map(|&s| {
            let z = SymCoord::from_vars(1, &[dir * s]);
            let diff = cayley_cs(&z, &fock, &vac).unwrap() - exp_cs(&z, &fock, &vac).unwrap();
            (s, diff.norm())
        })
        .collect();
    for w in errs.windows(2) {
        let slope = (w[1].1 / w[0].1).ln() / (w[1].0 / w[0].0).ln();
        assert!((slope - 3.0).abs() < 0.1, "slope {slope}");
    }
    assert!(errs[0].1 < 1e-4);
}

#[test]
fn kernel_table_rows() {
    let spec = one_box(2);
    let mut r = rng(43);
    let pts: Vec<(SymCoord, SymCoord)> = (0..3).map(|_| (contraction(2, 0.4, &mut r), contraction(2, 0.4, &mut r))).collect();
    let rows = kernel_table(&pts, &spec).unwrap();
    assert_eq!(rows.len(), 3 * 4);
    assert!(rows[0].zp.starts_with("z11="));
}

#[test]
fn realization_dimension_for_cayley() {
    let fock = FockRealization::build(1, 8, FockKind::Oscillator).unwrap();
    assert_eq!(Realization::<f64>::dim(&fock), 9);
}
