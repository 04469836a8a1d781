use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spq_algebra::{DefiningRep, Generator, Rank, Realization, Sector};
use spq_coherent::PolyWavefunction;
use spq_evolution::{
    evolve_magnus, evolve_ode, nonunitary_probe, parabolic_drift, schrodinger_evolve, schrodinger_vectors, wei_norman,
    EvolutionPath, OdeOptions, WeiNormanOptions,
};
use spq_numerics::{gauss_legendre, mat_exp, CMat, CVec, C64};
use spq_observables::{boltzmann_flow, ehrenfest_flow, generator_expectations, vev_metric, DensityState, ModeLadder, PreGeometry};
use spq_reps::{build_fock, u4_lowest_module, FockKind, FockRealization, InducedRepSpec, ModuleSpace, Partition};

use crate::check::Check;
use crate::config::{InitialState, Method, RealizationChoice, ScenarioConfig, ScenarioKind};
use crate::table::{Cell, Table};
use crate::RunError;

/// Defining or Fock realization chosen by a scenario.
pub enum AnyRealization {
    Defining(DefiningRep<f64>),
    Fock(FockRealization),
}

impl AnyRealization {
    pub fn build(n: usize, choice: RealizationChoice) -> Result<Self, RunError> {
        Ok(match choice {
            RealizationChoice::Defining => AnyRealization::Defining(DefiningRep::new(Rank::new(n)?)),
            RealizationChoice::Fock { cutoff } => AnyRealization::Fock(build_fock(n, cutoff)?),
            RealizationChoice::Oscillator { cutoff } => AnyRealization::Fock(FockRealization::build(n, cutoff, FockKind::Oscillator)?),
        })
    }
}

impl Realization<f64> for AnyRealization {
    fn rank(&self) -> Rank {
        match self {
            AnyRealization::Defining(r) => r.rank(),
            AnyRealization::Fock(r) => r.rank(),
        }
    }

    fn dim(&self) -> usize {
        match self {
            AnyRealization::Defining(r) => r.dim(),
            AnyRealization::Fock(r) => r.dim(),
        }
    }

    fn generator(&self, g: Generator) -> CMat {
        match self {
            AnyRealization::Defining(r) => r.generator(g),
            AnyRealization::Fock(r) => r.generator(g),
        }
    }
}

/// FNV-1a, so per-scenario streams depend only on the seed and the id.
fn stream(seed: u64, id: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn initial_state(dim: usize, state: InitialState, rng: &mut ChaCha8Rng) -> CVec {
    match state {
        InitialState::Vacuum => {
            let mut v = CVec::zeros(dim);
            v[0] = C64::from(1.0);
            v
        }
        InitialState::Random => {
            let v = CVec::from_fn(dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            &v / C64::from(v.norm())
        }
    }
}

fn context(id: &str) -> impl Fn(RunError) -> RunError + '_ {
    move |e| RunError::Scenario { id: id.to_string(), message: e.to_string() }
}

/// Runs one scenario; returns its checks and data table.
pub fn run_scenario(sc: &ScenarioConfig, seed: u64) -> Result<(Vec<Check>, Table), RunError> {
    let mut rng = stream(seed, &sc.id);
    let out = match &sc.kind {
        ScenarioKind::Evolution { methods, magnus_order, substeps, tolerance } => {
            evolution(sc, methods, *magnus_order, *substeps, *tolerance)
        }
        ScenarioKind::Ehrenfest => ehrenfest(sc, &mut rng),
        ScenarioKind::Drift => drift(sc),
        ScenarioKind::Probe => probe(sc),
        ScenarioKind::Boltzmann { mixture } => boltzmann(sc, *mixture, &mut rng),
        ScenarioKind::Geometry { signature, weight, levels } => geometry(sc, *signature, *weight, *levels),
        ScenarioKind::Schrodinger { degree, substeps } => schrodinger(sc, *degree, *substeps),
    };
    out.map_err(context(&sc.id))
}

fn evolution(
    sc: &ScenarioConfig,
    methods: &[Method],
    order: usize,
    substeps: usize,
    tolerance: f64,
) -> Result<(Vec<Check>, Table), RunError> {
    let rep = AnyRealization::build(sc.rank(), sc.realization)?;
    let spec = sc.spec();
    let grid = sc.grid.points();
    let mut paths: Vec<(Method, EvolutionPath)> = Vec::new();
    for m in methods {
        let path = match m {
            Method::Ode => evolve_ode(&spec, &grid, &rep, OdeOptions::default())?,
            Method::Magnus => evolve_magnus(&spec, &grid, order, substeps, &rep)?,
            Method::WeiNorman => {
                wei_norman(&spec, &grid, None, WeiNormanOptions { substeps, ..Default::default() })?.reconstruct(&rep)?
            }
        };
        paths.push((*m, path));
    }
    let mut checks = Vec::new();
    for a in 0..paths.len() {
        for b in a + 1..paths.len() {
            let name = format!("evolution.agree.{}.{}", paths[a].0.name(), paths[b].0.name());
            checks.push(Check::below(name, paths[a].1.max_distance(&paths[b].1), tolerance));
        }
    }
    if sc.self_adjoint {
        for (m, p) in &paths {
            checks.push(Check::below(format!("evolution.unitarity.{}", m.name()), p.unitarity_drift(), 1e-9));
        }
    }
    let rows: Vec<_> = paths.iter().flat_map(|(_, p)| p.rows()).collect();
    Ok((checks, Table::from_records(&rows)?))
}

fn ehrenfest(sc: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<(Vec<Check>, Table), RunError> {
    let rep = AnyRealization::build(sc.rank(), sc.realization)?;
    let h = sc.constant_element();
    let psi = initial_state(rep.dim(), sc.state, rng);
    let init = generator_expectations(&sc.basis, &rep, &psi)?;
    let grid = sc.grid.points();
    let traj = ehrenfest_flow(&h, &init, &grid)?;
    let mut checks = vec![Check::below("ehrenfest.energy_drift", traj.energy_drift(), 1e-7)];
    if rep.dim() <= 64 {
        let span = grid[grid.len() - 1] - grid[0];
        let u = mat_exp(&(rep.realize(&h) * C64::new(0.0, -span)))?;
        let quantum = generator_expectations(&sc.basis, &rep, &(&u * &psi))?;
        let last = traj.values.last().expect("non-empty grid");
        let err = quantum.iter().zip(last).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        checks.push(Check::below("ehrenfest.quantum_endpoint", err, 1e-8));
    }
    Ok((checks, Table::from_records(&traj.rows())?))
}

fn drift(sc: &ScenarioConfig) -> Result<(Vec<Check>, Table), RunError> {
    let rep = AnyRealization::build(sc.rank(), sc.realization)?;
    let path = evolve_ode(&sc.spec(), &sc.grid.points(), &rep, OdeOptions::default())?;
    let report = parabolic_drift(&path, &sc.basis, &rep)?;
    let mut checks = vec![Check::below("drift.initial", report.leakage[0], 1e-12)];
    if sc.is_parabolic() {
        checks.push(Check::below("drift.parabolic_zero", report.max(), 1e-10));
    }
    Ok((checks, Table::from_records(&report.rows())?))
}

/// `ln ⟨φ(t)|φ(t)⟩ = 2 ∫ Im λ` when every term fixes the vacuum line with
/// eigenvalue contribution `λ_k`.
fn probe(sc: &ScenarioConfig) -> Result<(Vec<Check>, Table), RunError> {
    let rep = AnyRealization::build(sc.rank(), sc.realization)?;
    let vac = initial_state(rep.dim(), InitialState::Vacuum, &mut stream(0, ""));
    let grid = sc.grid.points();
    let drift = nonunitary_probe(&sc.spec(), &grid, &rep, &vac)?;
    let mut eigen = Vec::new();
    for term in &sc.terms {
        let v = rep.realize(&term.element) * &vac;
        let lambda = v[0];
        if (&v - &vac * lambda).norm() > 1e-12 {
            eigen.clear();
            break;
        }
        eigen.push((term.expr.clone(), lambda));
    }
    let stabilizes = eigen.len() == sc.terms.len()
        && sc.terms.iter().all(|t| {
            sc.basis.sector_indices(Sector::ZPlus).iter().all(|k| t.element.coeffs()[*k] == C64::from(0.0))
        });
    let mut table = Table::new(&["t", "norm", "oracle"]);
    let mut checks = Vec::new();
    if stabilizes {
        let (nodes, weights) = gauss_legendre::<f64>(8);
        let rate = |t: f64| eigen.iter().map(|(e, l)| (e.eval(t) * l).im).sum::<f64>();
        let mut integral = 0.0;
        let mut worst = 0.0f64;
        for (k, t) in grid.iter().enumerate() {
            if k > 0 {
                let (a, b) = (grid[k - 1], *t);
                let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
                integral += nodes.iter().zip(&weights).map(|(x, w)| w * half * rate(mid + half * x)).sum::<f64>();
            }
            let oracle = (2.0 * integral).exp();
            worst = worst.max((drift.norms[k] - oracle).abs() / oracle);
            table.push(vec![Cell::from(*t), Cell::from(drift.norms[k]), Cell::from(oracle)]);
        }
        checks.push(Check::below("probe.rate_oracle", worst, 1e-8));
    } else {
        for (t, n) in grid.iter().zip(&drift.norms) {
            table.push(vec![Cell::from(*t), Cell::from(*n), Cell::from("")]);
        }
    }
    checks.push(Check::below("probe.initial_norm", (drift.norms[0] - 1.0).abs(), 1e-14).with_detail(format!("log rate {:.6e}", drift.log_rate())));
    Ok((checks, table))
}

fn boltzmann(sc: &ScenarioConfig, mixture: usize, rng: &mut ChaCha8Rng) -> Result<(Vec<Check>, Table), RunError> {
    let rep = AnyRealization::build(sc.rank(), sc.realization)?;
    let d = rep.dim();
    let states: Vec<CVec> = (0..mixture).map(|_| initial_state(d, sc.state, rng)).collect();
    let mut rho = CMat::zeros(d, d);
    for s in &states {
        rho += s * s.adjoint() * C64::from(1.0 / mixture as f64);
    }
    let spec = sc.spec();
    let grid = sc.grid.points();
    let traj = boltzmann_flow(&DensityState::new(rho)?, &spec, &rep, &grid)?;
    let mut checks = vec![Check::below("boltzmann.trace", traj.trace_drift(), 1e-10)];
    let fidelities = if mixture == 1 && sc.self_adjoint {
        let path = evolve_ode(&spec, &grid, &rep, OdeOptions::default())?;
        let f = traj.fidelities(&schrodinger_vectors(&path, &states[0]));
        let worst = f.iter().cloned().fold(1.0, f64::min);
        checks.push(Check::below("boltzmann.fidelity", 1.0 - worst, 1e-8));
        Some(f)
    } else {
        None
    };
    let mut table = Table::new(&["t", "trace_re", "trace_im", "min_eigenvalue", "fidelity"]);
    for (k, t) in grid.iter().enumerate() {
        let tr = traj.states[k].trace();
        let fid = fidelities.as_ref().map_or(Cell::from(""), |f| Cell::from(f[k]));
        table.push(vec![Cell::from(*t), Cell::from(tr.re), Cell::from(tr.im), Cell::from(traj.min_eigenvalues[k]), fid]);
    }
    Ok((checks, table))
}

fn geometry(sc: &ScenarioConfig, signature: (usize, usize), weight: f64, levels: usize) -> Result<(Vec<Check>, Table), RunError> {
    let n = sc.rank();
    let ladder = ModeLadder::signature(signature.0, signature.1, weight, levels)?;
    let geo = PreGeometry::from_ladder(&ladder)?;
    let ground = ladder.ground();
    let base = vev_metric(&ground, &geo, None)?;
    let h_el = sc.constant_element();
    let mut h = CMat::zeros(ladder.dim(), ladder.dim());
    for (k, c) in h_el.coeffs().iter().enumerate() {
        if *c != C64::from(0.0) {
            h += ladder.generator(sc.basis.label(k)).expect("validated mode-diagonal generator") * *c;
        }
    }
    let mut want = CMat::identity(n, n);
    for i in signature.0..n {
        want[(i, i)] = C64::from(-1.0);
    }
    let mut checks = vec![Check::exact(
        "geometry.ground",
        base.eta() == want && base.signature == signature,
        format!("signature ({}, {})", base.signature.0, base.signature.1),
    )];
    let mut table = Table::new(&["t", "i", "j", "eta_re", "eta_im", "distance"]);
    let mut symmetry = 0.0f64;
    for t in sc.grid.points() {
        let u = mat_exp(&(&h * C64::new(0.0, -(t - sc.grid.start))))?;
        let vev = vev_metric(&(&u * &ground), &geo, Some(base.scale))?;
        symmetry = symmetry.max(vev.symmetry_residual());
        let (eta, dist) = (vev.eta(), vev.eta_distance(&base));
        for i in 0..n {
            for j in i..n {
                table.push(vec![
                    Cell::from(t),
                    Cell::from(i + 1),
                    Cell::from(j + 1),
                    Cell::from(eta[(i, j)].re),
                    Cell::from(eta[(i, j)].im),
                    Cell::from(dist),
                ]);
            }
        }
    }
    checks.push(Check::below("geometry.symmetry", symmetry, 1e-10));
    Ok((checks, table))
}

fn schrodinger(sc: &ScenarioConfig, degree: usize, substeps: usize) -> Result<(Vec<Check>, Table), RunError> {
    let n = sc.rank();
    let part = sc.modules.first().cloned().unwrap_or(Partition::new(vec![0; n])?);
    let module = if part.parts().iter().all(|p| *p == 0) {
        ModuleSpace::trivial(&sc.basis)
    } else {
        let size: i64 = part.parts().iter().sum();
        let fock = build_fock(n, 4.max(size as usize + 1))?;
        u4_lowest_module(&fock, &part)?
    };
    let d = module.dim();
    let mut value = CMat::zeros(d, 1);
    value[(module.lowest(), 0)] = C64::from(1.0);
    let induced = InducedRepSpec::with_default_shift(part, module);
    let psi = PolyWavefunction::constant(n, value);
    let grid = sc.grid.points();
    let traj = schrodinger_evolve(&psi, &sc.spec(), &induced, &grid, degree, substeps)?;
    let mut table = Table::new(&["t", "degree", "constant_term", "max_coefficient"]);
    for (t, s) in grid.iter().zip(&traj.states) {
        let c0 = s.coefficient(&vec![0u8; n * (n + 1) / 2]).map_or(0.0, |m| m.norm());
        table.push(vec![Cell::from(*t), Cell::from(s.degree().unwrap_or(0)), Cell::from(c0), Cell::from(s.max_abs())]);
    }
    Ok((vec![Check::below("schrodinger.truncation", traj.truncation_defect, 1e-8)], table))
}
