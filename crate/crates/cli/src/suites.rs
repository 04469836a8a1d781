//! Invariant suites driven by `verify` and by the acceptance tests.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spq_algebra::relations;
use spq_algebra::{build_basis, AlgebraBasis, AlgebraElement, DefiningRep, Generator, Rank, Realization, Sector};
use spq_coherent::{exp_cs, homomorphism_defect, identity_reconstruction, overlap_kernel, SymCoord};
use spq_evolution::{
    evolve_magnus, evolve_ode, gauge_defects, heisenberg_evolve, schrodinger_vectors, second_order_residual, wei_norman,
    GeneratorSpec, OdeOptions, WeiNormanOptions,
};
use spq_involutions::build_involutions;
use spq_numerics::{commutator, hermitian_eigen, mat_exp, max_abs, CMat, CVec, C64};
use spq_observables::{
    boltzmann_flow, build_phase_ops, classical_bracket, ehrenfest_flow, expectation, generator_expectations, mode_basis,
    mode_expansion_flow, vev_metric, DensityState, ModeLadder, PreGeometry,
};
use spq_reps::{
    build_fock, u4_lowest_module, weight_decompose, weyl_dimension, FockKind, FockRealization, InducedRepSpec, ModuleSpace,
    Partition,
};

use crate::check::Check;
use crate::config::Suite;
use crate::RunError;

/// Parameters shared by all suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteParams {
    pub rank: usize,
    pub cutoff: usize,
    pub samples: usize,
    pub seed: u64,
}

pub fn run_suite(suite: Suite, p: SuiteParams) -> Result<Vec<Check>, RunError> {
    // independent stream per suite so selection and order do not matter
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(suite as u64 + 1)));
    let n = p.rank;
    let mut out = Vec::new();
    match suite {
        Suite::Algebra => {
            out.push(census(n)?);
            out.push(commutation_defining(n)?);
            out.extend(commutation_fock(n, p.cutoff)?);
            out.push(jacobi(n)?);
        }
        Suite::Involutions => {
            out.push(quaternion(n)?);
            out.push(real_form_exponentials(n, p.samples, &mut rng)?);
        }
        Suite::Rep => {
            out.push(weyl_fundamentals(n)?);
            out.push(defining_weights(n)?);
        }
        Suite::Cs => {
            out.extend(homomorphism(n)?);
            out.push(kernel_gram(n, &mut rng)?);
            if n == 1 {
                out.push(kernel_vs_fock(&mut rng)?);
                out.push(resolution()?);
            }
        }
        Suite::Evolution => {
            out.extend(integrators(n)?);
            out.push(second_order(n, &mut rng)?);
            out.extend(gauge(n)?);
        }
        Suite::Observables => {
            out.extend(geometry(n)?);
            out.extend(ehrenfest(n, &mut rng)?);
            out.extend(flows(n, &mut rng)?);
        }
    }
    Ok(out)
}

fn basis(n: usize) -> Result<Arc<AlgebraBasis>, RunError> {
    Ok(build_basis(n)?)
}

fn defining(n: usize) -> Result<DefiningRep<f64>, RunError> {
    Ok(DefiningRep::new(Rank::new(n)?))
}

fn gen(b: &Arc<AlgebraBasis>, g: Generator) -> AlgebraElement<f64> {
    AlgebraElement::generator(b, g).expect("generator in basis")
}

fn sym(b: &Arc<AlgebraBasis>, g: Generator) -> AlgebraElement<f64> {
    &gen(b, g) + &gen(b, g.dagger())
}

fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> CVec {
    let v = CVec::from_fn(dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    &v / C64::from(v.norm())
}

/// Real combination of `h`, `e + e†` and `u_ab + u_ba`.
pub fn random_hermitian(b: &Arc<AlgebraBasis>, scale: f64, rng: &mut ChaCha8Rng) -> AlgebraElement<f64> {
    let mut x = AlgebraElement::zero(b);
    for g in b.labels() {
        let c = rng.gen_range(-scale..scale);
        x = match g {
            Generator::H(_) => &x + &(&gen(b, *g) * c),
            Generator::E(..) => &x + &(&sym(b, *g) * c),
            Generator::U(i, j) if i < j => &x + &(&sym(b, *g) * c),
            _ => x,
        };
    }
    x
}

// algebra

/// Generator and sector counts against `2n² + n`, `n(n+1)/2`, `n²`.
pub fn census(n: usize) -> Result<Check, RunError> {
    let b = basis(n)?;
    let zp = b.sector_indices(Sector::ZPlus).len();
    let u = b.sector_indices(Sector::Unitary).len();
    let p = b.parabolic_indices().len();
    let got = [b.len(), zp, u, p, b.len() - p, b.len() - u];
    let sym = n * (n + 1) / 2;
    let want = [2 * n * n + n, sym, n * n, sym + n * n, sym, 2 * sym];
    let text = |v: &[usize; 6]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("/");
    Ok(Check::exact("algebra.census", got == want, format!("generators/z+/u/p/z/sp-u = {}", text(&got))))
}

/// Every closed-form bracket family in the defining matrices.
pub fn commutation_defining(n: usize) -> Result<Check, RunError> {
    let b = basis(n)?;
    let rep = defining(n)?;
    let mats: Vec<CMat> = b.labels().iter().map(|g| rep.generator(*g)).collect();
    let mut worst = 0.0f64;
    for (ia, a) in b.labels().iter().enumerate() {
        for (ic, c) in b.labels().iter().enumerate() {
            let mut rhs = CMat::zeros(2 * n, 2 * n);
            for (g, k) in relations::bracket(*a, *c).1 {
                rhs += &mats[b.index_of(g)?] * C64::from(k as f64);
            }
            worst = worst.max(max_abs(&(commutator(&mats[ia], &mats[ic]) - rhs)));
        }
    }
    Ok(Check::below("algebra.commutation.defining", worst, 1e-9))
}

/// Relation families and `[e_i, e†_j] = 4δ_ij h_i` on the Fock cutoff interior.
pub fn commutation_fock(n: usize, cutoff: usize) -> Result<Vec<Check>, RunError> {
    let f = build_fock(n, cutoff)?;
    let relations = f.max_relation_defect();
    let mut worst = 0.0f64;
    for i in 0..n {
        let e = f.sparse_generator(Generator::E(i, i));
        for j in 0..n {
            let ed = f.sparse_generator(Generator::EDag(j, j));
            let mut c = f.interior_dense(&(e * ed)) - f.interior_dense(&(ed * e));
            if i == j {
                c -= f.interior_dense(f.sparse_generator(Generator::H(i))) * C64::from(4.0);
            }
            worst = worst.max(max_abs(&c));
        }
    }
    let label = format!("n={n}, cutoff={cutoff}, dim={}", f.space().dim());
    Ok(vec![
        Check::below("algebra.commutation.fock", relations, 1e-9).with_detail(label.clone()),
        Check::below("algebra.pairing.fock", worst, 1e-9).with_detail(label),
    ])
}

pub fn jacobi(n: usize) -> Result<Check, RunError> {
    let b = basis(n)?;
    let sc = b.constants();
    let r = if sc.is_antisymmetric() { sc.max_jacobi_residual() } else { f64::INFINITY };
    Ok(Check::below("algebra.jacobi", r, 1e-9).with_detail(format!("{} triples", b.len().pow(3))))
}

// involutions

pub fn quaternion(n: usize) -> Result<Check, RunError> {
    let inv = build_involutions::<f64>(n)?;
    let r = inv.quaternion_residual();
    Ok(Check::exact("involutions.quaternion", r == 0.0, format!("max residual {r:e}")))
}

pub fn real_form_exponentials(n: usize, samples: usize, rng: &mut ChaCha8Rng) -> Result<Check, RunError> {
    let b = basis(n)?;
    let inv = build_involutions::<f64>(n)?;
    let rep = defining(n)?;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let c: Vec<f64> = (0..b.len()).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let x = AlgebraElement::from_real(&b, &c)?;
        let g = mat_exp(&rep.realize(&x))?;
        worst = worst.max(inv.symplectic_defect(&g));
    }
    Ok(Check::below("involutions.symplectic_exponentials", worst, 1e-9).with_detail(format!("{samples} samples")))
}

// representations

/// Weyl dimensions of the zero weight and the fundamental weights.
pub fn weyl_fundamentals(n: usize) -> Result<Check, RunError> {
    let table: [&[u128]; 4] = [&[1, 2], &[1, 4, 5], &[1, 6, 14, 14], &[1, 8, 27, 48, 42]];
    let mut got = Vec::new();
    for k in 0..=n {
        let mut w = vec![0i64; n];
        if k > 0 {
            w[k - 1] = 1;
        }
        got.push(weyl_dimension(&w)?);
    }
    let text = got.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
    Ok(Check::exact("rep.weyl_fundamentals", got == table[n - 1], format!("{{{text}}}")))
}

pub fn defining_weights(n: usize) -> Result<Check, RunError> {
    let b = basis(n)?;
    let m = ModuleSpace::from_realization("defining", &b, &defining(n)?)?;
    let ws = weight_decompose(&m)?;
    let ok = ws.len() == 2 * n && ws.iter().all(|w| w.multiplicity() == 1);
    Ok(Check::exact("rep.defining_weights", ok, format!("{} weights", ws.len())))
}

// coherent states

fn one_box(n: usize) -> Result<InducedRepSpec, RunError> {
    let fock = build_fock(n, 4)?;
    let mut parts = vec![0; n];
    parts[0] = 1;
    let part = Partition::new(parts)?;
    let module = u4_lowest_module(&fock, &part)?;
    Ok(InducedRepSpec::with_default_shift(part, module))
}

fn trivial(n: usize) -> Result<InducedRepSpec, RunError> {
    let b = basis(n)?;
    Ok(InducedRepSpec::new(Partition::new(vec![0; n])?, ModuleSpace::trivial(&b), 0.0))
}

fn character(n: usize, lambda: f64) -> Result<InducedRepSpec, RunError> {
    let b = basis(n)?;
    Ok(InducedRepSpec::new(Partition::new(vec![0; n])?, ModuleSpace::character(&b, lambda), 0.0))
}

/// Polynomial-model brackets against the structure constants, degree ≤ 3.
pub fn homomorphism(n: usize) -> Result<Vec<Check>, RunError> {
    Ok(vec![
        Check::below("cs.homomorphism.trivial", homomorphism_defect(&trivial(n)?, 3), 1e-8),
        Check::below("cs.homomorphism.defining_type", homomorphism_defect(&one_box(n)?, 3), 1e-8),
    ])
}

fn contraction(n: usize, radius: f64, rng: &mut ChaCha8Rng) -> Result<SymCoord, RunError> {
    let mut z = CMat::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            z[(a, b)] = c;
            z[(b, a)] = c;
        }
    }
    let s = z.singular_values()[0];
    Ok(SymCoord::new(z * C64::from(radius / s))?)
}

/// Smallest eigenvalue of the kernel Gram matrix at 10 points.
pub fn kernel_gram(n: usize, rng: &mut ChaCha8Rng) -> Result<Check, RunError> {
    let spec = one_box(n)?;
    let d = spec.module().dim();
    let points: Vec<SymCoord> = (0..10).map(|k| contraction(n, 0.1 + 0.08 * k as f64, rng)).collect::<Result<_, _>>()?;
    let p = points.len();
    let mut g = CMat::zeros(p * d, p * d);
    for (i, zi) in points.iter().enumerate() {
        for (j, zj) in points.iter().enumerate() {
            let k = overlap_kernel(zi, &zj.conj(), &spec)?;
            g.view_mut((i * d, j * d), (d, d)).copy_from(&k);
        }
    }
    let (vals, _) = hermitian_eigen(&((&g + g.adjoint()) * C64::from(0.5)));
    let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(Check::below("cs.kernel_gram_psd", (-min).max(0.0), 1e-9).with_detail(format!("min eigenvalue {min:.3e}")))
}

/// Rank-one overlap kernel against the truncated oscillator Fock series.
pub fn kernel_vs_fock(rng: &mut ChaCha8Rng) -> Result<Check, RunError> {
    let fock = FockRealization::build(1, 60, FockKind::Oscillator)?;
    let mut vac = CVec::zeros(fock.space().dim());
    vac[0] = C64::from(1.0);
    let spec = character(1, 0.5)?;
    let mut worst = 0.0f64;
    for k in 0..8 {
        let draw = |rng: &mut ChaCha8Rng| C64::from_polar(0.5 * rng.gen_range(0.0f64..1.0).sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
        let (a, b) = if k == 0 { (C64::from(0.5), C64::from(0.5)) } else { (draw(rng), draw(rng)) };
        let zp = SymCoord::from_vars(1, &[a]);
        let z = SymCoord::from_vars(1, &[b]);
        let left = exp_cs(&zp, &fock, &vac)?;
        let right = exp_cs(&z, &fock, &vac)?;
        let got = overlap_kernel(&zp, &z.conj(), &spec)?[(0, 0)];
        worst = worst.max((left.dotc(&right) - got).norm());
    }
    Ok(Check::below("cs.kernel_vs_fock", worst, 1e-8).with_detail("n=1, |z| <= 0.5"))
}

/// Quadrature reconstruction of the identity on monomials of degree ≤ 5.
pub fn resolution() -> Result<Check, RunError> {
    let mut worst = 0.0f64;
    for lambda in [2.0, 3.0] {
        let r = identity_reconstruction(&character(1, lambda)?, 5, 12)?;
        worst = worst.max(max_abs(&(r - CMat::identity(6, 6))));
    }
    Ok(Check::below("cs.resolution_of_identity", worst, 1e-6))
}

// evolution

/// `(1 + t) h_1 + cos(t) (e_ab + e†_ab)` with `b = 1` when available.
pub fn two_term(n: usize) -> Result<GeneratorSpec, RunError> {
    let b = basis(n)?;
    let j = if n == 1 { 0 } else { 1 };
    Ok(GeneratorSpec::new(&b, true)
        .real_term(|t| 1.0 + t, gen(&b, Generator::H(0)))
        .real_term(f64::cos, sym(&b, Generator::e(0, j))))
}

/// ODE, Magnus(4) and Wei–Norman on `[0, 0.5]` for the two-term generator;
/// Magnus uses 5 substeps per interval and Wei–Norman 20.
pub fn integrators(n: usize) -> Result<Vec<Check>, RunError> {
    let rep = defining(n)?;
    let spec = two_term(n)?;
    let g: Vec<f64> = (0..=10).map(|k| 0.05 * k as f64).collect();
    let ode = evolve_ode(&spec, &g, &rep, OdeOptions::default())?;
    let mag = evolve_magnus(&spec, &g, 4, 5, &rep)?;
    let wn = wei_norman(&spec, &g, None, WeiNormanOptions { substeps: 20, ..Default::default() })?.reconstruct(&rep)?;
    let agree = ode.max_distance(&mag).max(ode.max_distance(&wn)).max(mag.max_distance(&wn));
    let drift = ode.unitarity_drift().max(mag.unitarity_drift()).max(wn.unitarity_drift());
    Ok(vec![
        Check::below("evolution.integrators_agree", agree, 1e-7),
        Check::below("evolution.unitarity", drift, 1e-9),
    ])
}

/// Central second difference with step `2.5e−4`: the `δ²` truncation and the
/// `ε/δ²` round-off are both near `1e−8` for coefficients of size 0.3.
pub fn second_order(n: usize, rng: &mut ChaCha8Rng) -> Result<Check, RunError> {
    let b = basis(n)?;
    let rep = defining(n)?;
    let h = rep.realize(&random_hermitian(&b, 0.3, rng));
    let x = rep.generator(Generator::e_dag(0, n - 1));
    let mut worst = 0.0f64;
    for t in [0.0, 0.4, 1.3] {
        worst = worst.max(second_order_residual(&h, &x, t, 2.5e-4)?);
    }
    Ok(Check::below("evolution.second_order", worst, 1e-6))
}

/// Internal (unitary-sector) and external (raising/lowering) generators.
pub fn gauge(n: usize) -> Result<Vec<Check>, RunError> {
    let b = basis(n)?;
    let rep = defining(n)?;
    let last = n - 1;
    let x = rep.generator(Generator::e_dag(0, last.min(2)));
    let mut internal = &gen(&b, Generator::H(last)) * -0.4;
    if n > 1 {
        internal = &internal + &(&sym(&b, Generator::U(0, 1)) * 0.7);
    }
    let hu = rep.realize(&internal);
    let mut ext = &sym(&b, Generator::e(0, 1.min(last))) * 0.5;
    let k = 2.min(last);
    ext = &ext + &(&(&gen(&b, Generator::e(k, k)) - &gen(&b, Generator::e_dag(k, k))) * C64::new(0.0, 0.8));
    let he = rep.realize(&ext);
    let (mut single, mut double) = (0.0f64, 0.0f64);
    for t in [0.2, 1.0] {
        single = single.max(gauge_defects(&hu, &x, t)?.single);
        double = double.max(gauge_defects(&he, &x, t)?.double);
    }
    Ok(vec![Check::below("evolution.gauge.internal", single, 1e-9), Check::below("evolution.gauge.external", double, 1e-9)])
}

// observables

/// Ladder ground state with signature `(n−1, 1)` and its drift under
/// `e_1 + e†_1`.
pub fn geometry(n: usize) -> Result<Vec<Check>, RunError> {
    let (kp, km) = if n == 1 { (0, 1) } else { (n - 1, 1) };
    let levels = if n == 4 { 4 } else { 5 };
    let ladder = ModeLadder::signature(kp, km, 1.0, levels)?;
    let geo = PreGeometry::from_ladder(&ladder)?;
    let base = vev_metric(&ladder.ground(), &geo, None)?;
    let mut want = CMat::identity(n, n);
    want[(n - 1, n - 1)] = C64::from(-1.0);
    let exact = base.eta() == want && base.signature == (kp, km);
    let h = ladder.generator(Generator::E(0, 0)).expect("diagonal raising") + ladder.generator(Generator::EDag(0, 0)).expect("diagonal lowering");
    let u = mat_exp(&(h * C64::new(0.0, -0.3)))?;
    let moved = vev_metric(&(&u * &ladder.ground()), &geo, Some(base.scale))?;
    Ok(vec![
        Check::exact(
            "observables.geometry.ground",
            exact,
            format!("signature ({}, {}), max deviation {:e}", base.signature.0, base.signature.1, max_abs(&(base.eta() - want))),
        ),
        Check::above("observables.geometry.drift", moved.eta_distance(&base), 1e-3),
    ])
}

/// Quantum `d⟨Π⟩/dt` against the classical bracket, and energy drift on `[0, 5]`.
pub fn ehrenfest(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, RunError> {
    let b = basis(n)?;
    let rep = defining(n)?;
    let h = random_hermitian(&b, 0.4, rng);
    let hm = rep.realize(&h);
    let psi = random_state(2 * n, rng);
    let init = generator_expectations(&b, &rep, &psi)?;
    let g: Vec<f64> = (0..=50).map(|k| 0.1 * k as f64).collect();
    let traj = ehrenfest_flow(&h, &init, &g)?;
    let ops = build_phase_ops(&b, &rep);
    let spec = GeneratorSpec::constant(&b, h.clone(), true);
    let delta = 1e-3;
    let (mut rate_err, mut flow_err) = (0.0f64, 0.0f64);
    for k in [10usize, 25, 50] {
        let t = g[k];
        let local = [0.0, t - 2.0 * delta, t - delta, t, t + delta, t + 2.0 * delta];
        let path = evolve_ode(&spec, &local, &rep, OdeOptions::default())?;
        let psi_t = &path.matrices[3] * &psi;
        for i in 0..n {
            for j in i..n {
                let p = ops.pi.get(i, j);
                let pt = heisenberg_evolve(p, &path)?;
                let v: Vec<C64> = pt.iter().map(|x| expectation(x, &psi)).collect::<Result<_, _>>()?;
                // fourth-order central difference
                let rate = (v[1] - v[2] * 8.0 + v[4] * 8.0 - v[5]) / (12.0 * delta);
                rate_err = rate_err.max((rate - classical_bracket(&hm, p, &psi_t)?).norm());
                flow_err = flow_err.max((traj.pi(k)[(i, j)] - v[3]).norm());
            }
        }
    }
    Ok(vec![
        Check::below("observables.ehrenfest.bracket", rate_err, 1e-6),
        Check::below("observables.ehrenfest.trajectory", flow_err, 1e-8),
        Check::below("observables.ehrenfest.energy_drift", traj.energy_drift(), 1e-7),
    ])
}

/// Boltzmann trace and pure-state fidelity, and the two-level Rabi oracle.
pub fn flows(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, RunError> {
    let b = basis(n)?;
    let rep = defining(n)?;
    let d = 2 * n;
    let g: Vec<f64> = (0..=10).map(|k| 0.1 * k as f64).collect();
    let spec = two_term(n)?;

    let a = random_state(d, rng);
    let c = random_state(d, rng);
    let mixed = DensityState::new((&a * a.adjoint()) * C64::from(0.4) + (&c * c.adjoint()) * C64::from(0.6))?;
    let h = GeneratorSpec::constant(&b, random_hermitian(&b, 0.5, rng), true);
    let trace = boltzmann_flow(&mixed, &h, &rep, &g)?.trace_drift();

    let psi = random_state(d, rng);
    let pure = boltzmann_flow(&DensityState::pure(&psi)?, &spec, &rep, &g)?;
    let path = evolve_ode(&spec, &g, &rep, OdeOptions::default())?;
    let fid = pure.fidelities(&schrodinger_vectors(&path, &psi)).into_iter().fold(1.0, f64::min);

    let (e1, e2, coupling) = (0.3, 1.1, 0.25);
    let t_op = CMat::from_diagonal(&CVec::from_vec(vec![C64::from(e1), C64::from(e2)]));
    let v = CMat::from_row_slice(2, 2, &[C64::from(0.0), C64::from(coupling), C64::from(coupling), C64::from(0.0)]);
    let modes = mode_basis(&t_op)?;
    let times: Vec<f64> = (0..=40).map(|k| 0.25 * k as f64).collect();
    let traj = mode_expansion_flow(&CVec::from_vec(vec![C64::from(1.0), C64::from(0.0)]), &modes, &v, &times)?;
    let (mean, half) = ((e1 + e2) / 2.0, (e1 - e2) / 2.0);
    let omega = (half * half + coupling * coupling).sqrt();
    let mut rabi = 0.0f64;
    for (k, t) in times.iter().enumerate() {
        let (cs, sn) = ((omega * t).cos(), (omega * t).sin());
        let phase = C64::from_polar(1.0, -mean * t);
        let want = [
            phase * C64::new(cs, -sn * half / omega) * C64::from_polar(1.0, e1 * t),
            phase * C64::new(0.0, -sn * coupling / omega) * C64::from_polar(1.0, e2 * t),
        ];
        let got = traj.coefficient_vector(k);
        rabi = rabi.max((got[0] - want[0]).norm()).max((got[1] - want[1]).norm());
    }
    Ok(vec![
        Check::below("observables.boltzmann.trace", trace, 1e-10),
        Check::below("observables.boltzmann.fidelity", 1.0 - fid, 1e-8).with_detail(format!("min fidelity {fid:.12}")),
        Check::below("observables.modes.rabi", rabi, 1e-7),
    ])
}
