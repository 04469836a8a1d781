//! TOML scenario files.
//!
//! ```toml
//! schema_version = 1
//! seed = 7
//!
//! [verify]
//! rank = 4
//! cutoff = 6
//! suites = ["algebra", "involutions", "rep", "cs", "evolution", "observables"]
//!
//! [[scenario]]
//! id = "ehrenfest"
//! kind = "ehrenfest"
//! rank = 2
//! realization = "defining"
//! grid = { start = 0.0, end = 5.0, steps = 50 }
//! [scenario.generator]
//! "h1" = "1"
//! "e12 + ed12" = "0.3"
//!
//! [export]
//! rank = 4
//! partitions = [[0, 0, 0, 0], [1, 0, 0, 0]]
//! ```
//!
//! Generator keys are sums of basis names with optional plain decimal
//! factors (`"e12 + ed12"`, `"0.5 u12 - 0.5 u21"`); values are coefficient
//! expressions in `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde::Deserialize;
use spq_algebra::{build_basis, AlgebraBasis, AlgebraElement, Generator, Rank, Sector};
use spq_evolution::GeneratorSpec;
use spq_numerics::C64;
use spq_reps::Partition;
use thiserror::Error;
use toml::Spanned;

use crate::expr::Expr;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Syntax(String),
    #[error("line {line}: {field}: {message}")]
    Field { line: usize, field: String, message: String },
    #[error("{field}: {message}")]
    Missing { field: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Algebra,
    Involutions,
    Rep,
    Cs,
    Evolution,
    Observables,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Algebra, Suite::Involutions, Suite::Rep, Suite::Cs, Suite::Evolution, Suite::Observables];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Involutions => "involutions",
            Suite::Rep => "rep",
            Suite::Cs => "cs",
            Suite::Evolution => "evolution",
            Suite::Observables => "observables",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite '{s}' (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub rank: usize,
    pub cutoff: usize,
    pub suites: Vec<Suite>,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizationChoice {
    Defining,
    /// Paired (number-conserving) Fock realization.
    Fock { cutoff: usize },
    /// Single-mode oscillator realization.
    Oscillator { cutoff: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        (0..=self.steps).map(|k| self.start + (self.end - self.start) * k as f64 / self.steps as f64).collect()
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorTerm {
    pub label: String,
    pub element: AlgebraElement<f64>,
    pub expr: Expr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    Random,
    Vacuum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Ode,
    Magnus,
    WeiNorman,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Ode => "ode",
            Method::Magnus => "magnus",
            Method::WeiNorman => "wei-norman",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioKind {
    Evolution { methods: Vec<Method>, magnus_order: usize, substeps: usize, tolerance: f64 },
    Ehrenfest,
    Drift,
    Probe,
    Boltzmann { mixture: usize },
    Geometry { signature: (usize, usize), weight: f64, levels: usize },
    Schrodinger { degree: usize, substeps: usize },
}

impl ScenarioKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Evolution { .. } => "evolution",
            ScenarioKind::Ehrenfest => "ehrenfest",
            ScenarioKind::Drift => "drift",
            ScenarioKind::Probe => "probe",
            ScenarioKind::Boltzmann { .. } => "boltzmann",
            ScenarioKind::Geometry { .. } => "geometry",
            ScenarioKind::Schrodinger { .. } => "schrodinger",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outputs {
    pub csv: bool,
    pub json: bool,
}

#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub id: String,
    pub kind: ScenarioKind,
    pub basis: Arc<AlgebraBasis>,
    pub realization: RealizationChoice,
    pub modules: Vec<Partition>,
    pub terms: Vec<GeneratorTerm>,
    pub self_adjoint: bool,
    pub grid: Grid,
    pub outputs: Outputs,
    pub state: InitialState,
}

impl ScenarioConfig {
    pub fn rank(&self) -> usize {
        self.basis.n()
    }

    pub fn spec(&self) -> GeneratorSpec {
        let mut spec = GeneratorSpec::new(&self.basis, self.self_adjoint);
        for term in &self.terms {
            let e = term.expr.clone();
            spec = spec.term(move |t| e.eval(t), term.element.clone());
        }
        spec
    }

    /// `Σ_k α_k(t₀) x_k`; meaningful for time-independent coefficients.
    pub fn constant_element(&self) -> AlgebraElement<f64> {
        self.spec().element_at(self.grid.start)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| !t.expr.depends_on_time())
    }

    /// True when every term lies in the parabolic subalgebra.
    pub fn is_parabolic(&self) -> bool {
        let zp = self.basis.sector_indices(Sector::ZPlus);
        self.terms.iter().all(|t| zp.iter().all(|k| t.element.coeffs()[*k] == C64::from(0.0)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExportConfig {
    pub rank: usize,
    pub partitions: Vec<Partition>,
    pub kernel_samples: usize,
}

#[derive(Debug, Clone)]
pub struct Config {
    pub seed: Option<u64>,
    pub verify: Option<VerifyConfig>,
    pub scenarios: Vec<ScenarioConfig>,
    pub export: Option<ExportConfig>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema_version: Spanned<i64>,
    seed: Option<u64>,
    verify: Option<Spanned<RawVerify>>,
    #[serde(default)]
    scenario: Vec<Spanned<RawScenario>>,
    export: Option<Spanned<RawExport>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVerify {
    rank: Option<Spanned<usize>>,
    cutoff: Option<Spanned<usize>>,
    suites: Option<Vec<Spanned<String>>>,
    samples: Option<Spanned<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    start: f64,
    end: f64,
    steps: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    id: Spanned<String>,
    kind: Spanned<String>,
    rank: Spanned<usize>,
    realization: Option<Spanned<String>>,
    cutoff: Option<Spanned<usize>>,
    #[serde(default)]
    modules: Vec<Spanned<Vec<i64>>>,
    #[serde(default)]
    generator: BTreeMap<Spanned<String>, Spanned<String>>,
    self_adjoint: Option<bool>,
    grid: Spanned<RawGrid>,
    outputs: Option<Vec<Spanned<String>>>,
    state: Option<Spanned<String>>,
    methods: Option<Vec<Spanned<String>>>,
    magnus_order: Option<Spanned<usize>>,
    substeps: Option<Spanned<usize>>,
    tolerance: Option<Spanned<f64>>,
    mixture: Option<Spanned<usize>>,
    signature: Option<Spanned<[usize; 2]>>,
    weight: Option<Spanned<f64>>,
    levels: Option<Spanned<usize>>,
    degree: Option<Spanned<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExport {
    rank: Option<Spanned<usize>>,
    #[serde(default)]
    partitions: Vec<Spanned<Vec<i64>>>,
    kernel_samples: Option<Spanned<usize>>,
}

/// Byte offsets to one-based line numbers.
struct Lines<'a>(&'a str);

impl Lines<'_> {
    fn at(&self, offset: usize) -> usize {
        self.0[..offset.min(self.0.len())].bytes().filter(|b| *b == b'\n').count() + 1
    }

    fn err<T, S>(&self, span: &Spanned<S>, field: impl fmt::Display, message: impl fmt::Display) -> Result<T, ConfigError> {
        Err(ConfigError::Field { line: self.at(span.span().start), field: field.to_string(), message: message.to_string() })
    }
}

pub fn load(path: &Path) -> Result<Config, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.to_path_buf(), source })?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Config, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string().trim_end().to_string()))?;
    let lines = Lines(text);
    if *raw.schema_version.get_ref() != SCHEMA_VERSION as i64 {
        return lines.err(
            &raw.schema_version,
            "schema_version",
            format!("unsupported version {} (expected {SCHEMA_VERSION})", raw.schema_version.get_ref()),
        );
    }
    let verify = raw.verify.as_ref().map(|v| verify_config(&lines, v)).transpose()?;
    let mut scenarios = Vec::with_capacity(raw.scenario.len());
    for (k, s) in raw.scenario.iter().enumerate() {
        let sc = scenario_config(&lines, k, s)?;
        if scenarios.iter().any(|o: &ScenarioConfig| o.id == sc.id) {
            return lines.err(&s.get_ref().id, format!("scenario[{k}].id"), format!("duplicate id '{}'", sc.id));
        }
        scenarios.push(sc);
    }
    let export = raw.export.as_ref().map(|e| export_config(&lines, e)).transpose()?;
    if verify.is_none() && scenarios.is_empty() && export.is_none() {
        return Err(ConfigError::Missing { field: "config".into(), message: "no [verify], [[scenario]] or [export] section".into() });
    }
    Ok(Config { seed: raw.seed, verify, scenarios, export })
}

fn rank(lines: &Lines, span: &Spanned<usize>, field: &str) -> Result<usize, ConfigError> {
    match Rank::new(*span.get_ref()) {
        Ok(r) => Ok(r.get()),
        Err(e) => lines.err(span, field, e),
    }
}

fn partition(lines: &Lines, span: &Spanned<Vec<i64>>, n: usize, field: &str) -> Result<Partition, ConfigError> {
    if span.get_ref().len() != n {
        return lines.err(span, field, format!("partition needs {n} parts"));
    }
    Partition::new(span.get_ref().clone()).or_else(|e| lines.err(span, field, e))
}

fn verify_config(lines: &Lines, v: &Spanned<RawVerify>) -> Result<VerifyConfig, ConfigError> {
    let raw = v.get_ref();
    let rank = match &raw.rank {
        Some(r) => rank(lines, r, "verify.rank")?,
        None => 4,
    };
    let cutoff = match &raw.cutoff {
        Some(c) if *c.get_ref() < 4 => return lines.err(c, "verify.cutoff", "cutoff must be at least 4"),
        Some(c) => *c.get_ref(),
        None => 6,
    };
    let samples = match &raw.samples {
        Some(s) if *s.get_ref() == 0 => return lines.err(s, "verify.samples", "samples must be positive"),
        Some(s) => *s.get_ref(),
        None => 20,
    };
    let mut suites = Vec::new();
    match &raw.suites {
        None => suites.extend(Suite::ALL),
        Some(list) => {
            for s in list {
                let suite = s.get_ref().parse::<Suite>().or_else(|e| lines.err(s, "verify.suites", e))?;
                if suites.contains(&suite) {
                    return lines.err(s, "verify.suites", format!("suite '{}' listed twice", suite.name()));
                }
                suites.push(suite);
            }
        }
    }
    suites.sort();
    Ok(VerifyConfig { rank, cutoff, suites, samples })
}

/// Parses `"0.5 e12 + ed12 - 2*u12"` into a real combination of generators.
fn generator_key(basis: &Arc<AlgebraBasis>, key: &str) -> Result<AlgebraElement<f64>, String> {
    let mut pieces = Vec::new();
    let mut current = String::new();
    let mut sign = 1.0;
    let mut pending = false;
    for c in key.chars() {
        if c == '+' || c == '-' {
            if current.trim().is_empty() {
                if pending {
                    return Err("misplaced sign".into());
                }
            } else {
                pieces.push((sign, std::mem::take(&mut current)));
            }
            current.clear();
            sign = if c == '-' { -1.0 } else { 1.0 };
            pending = true;
        } else {
            current.push(c);
        }
    }
    if current.trim().is_empty() {
        return Err("empty generator term".into());
    }
    pieces.push((sign, current));
    let mut x = AlgebraElement::zero(basis);
    for (sign, piece) in pieces {
        let words: Vec<&str> = piece.split(|c: char| c == '*' || c.is_whitespace()).filter(|w| !w.is_empty()).collect();
        let (name, factors) = words.split_last().ok_or("empty generator term")?;
        let mut scale = sign;
        for f in factors {
            scale *= f.parse::<f64>().map_err(|_| format!("bad factor '{f}'"))?;
        }
        let g: Generator = name.parse().map_err(|e| format!("{e}"))?;
        let k = basis.index_of(g).map_err(|_| format!("generator '{name}' is not in the rank-{} basis", basis.n()))?;
        x = &x + &(&AlgebraElement::basis_vector(basis, k) * scale);
    }
    Ok(x)
}

fn positive(lines: &Lines, s: &Option<Spanned<usize>>, field: String, default: usize) -> Result<usize, ConfigError> {
    match s {
        Some(v) if *v.get_ref() == 0 => lines.err(v, field, "must be positive"),
        Some(v) => Ok(*v.get_ref()),
        None => Ok(default),
    }
}

fn scenario_config(lines: &Lines, k: usize, span: &Spanned<RawScenario>) -> Result<ScenarioConfig, ConfigError> {
    let raw = span.get_ref();
    let f = |name: &str| format!("scenario[{k}].{name}");
    let id = raw.id.get_ref().clone();
    if id.is_empty() || !id.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
        return lines.err(&raw.id, f("id"), "ids use letters, digits, '-' and '_' only");
    }
    let n = rank(lines, &raw.rank, &f("rank"))?;
    let basis = build_basis(n).expect("validated rank");

    let cutoff = |default: usize| -> Result<usize, ConfigError> {
        match &raw.cutoff {
            Some(c) if *c.get_ref() < 4 => lines.err(c, f("cutoff"), "cutoff must be at least 4"),
            Some(c) => Ok(*c.get_ref()),
            None => Ok(default),
        }
    };
    let realization = match raw.realization.as_ref().map(|r| (r, r.get_ref().as_str())) {
        None | Some((_, "defining")) => RealizationChoice::Defining,
        Some((_, "fock")) => RealizationChoice::Fock { cutoff: cutoff(4)? },
        Some((_, "oscillator")) => RealizationChoice::Oscillator { cutoff: cutoff(8)? },
        Some((r, other)) => {
            return lines.err(r, f("realization"), format!("unknown realization '{other}' (expected defining, fock or oscillator)"))
        }
    };

    let grid = {
        let g = raw.grid.get_ref();
        if g.steps < 2 {
            return lines.err(&raw.grid, f("grid.steps"), "grid needs at least 2 steps");
        }
        if !(g.end > g.start) || !g.start.is_finite() || !g.end.is_finite() {
            return lines.err(&raw.grid, f("grid.end"), "grid end must exceed start");
        }
        Grid { start: g.start, end: g.end, steps: g.steps }
    };

    let mut terms = Vec::new();
    for (key, value) in &raw.generator {
        let field = format!("scenario[{k}].generator.\"{}\"", key.get_ref());
        let element = generator_key(&basis, key.get_ref()).or_else(|e| lines.err(key, &field, e))?;
        let expr: Expr = value.get_ref().parse().or_else(|e| lines.err(value, &field, e))?;
        terms.push(GeneratorTerm { label: key.get_ref().trim().to_string(), element, expr });
    }
    if terms.is_empty() {
        return lines.err(span, f("generator"), "at least one generator term is required");
    }

    let mut modules = Vec::new();
    for m in &raw.modules {
        modules.push(partition(lines, m, n, &f("modules"))?);
    }

    let mut outputs = Outputs { csv: true, json: true };
    if let Some(list) = &raw.outputs {
        outputs = Outputs { csv: false, json: false };
        for o in list {
            match o.get_ref().as_str() {
                "csv" => outputs.csv = true,
                "json" => outputs.json = true,
                other => return lines.err(o, f("outputs"), format!("unknown output '{other}' (expected csv or json)")),
            }
        }
    }
    let state = match raw.state.as_ref().map(|s| (s, s.get_ref().as_str())) {
        None | Some((_, "random")) => InitialState::Random,
        Some((_, "vacuum")) => InitialState::Vacuum,
        Some((s, other)) => return lines.err(s, f("state"), format!("unknown state '{other}' (expected random or vacuum)")),
    };

    let kind = match raw.kind.get_ref().as_str() {
        "evolution" => {
            let mut methods = Vec::new();
            match &raw.methods {
                None => methods.extend([Method::Ode, Method::Magnus, Method::WeiNorman]),
                Some(list) => {
                    for m in list {
                        let method = match m.get_ref().as_str() {
                            "ode" => Method::Ode,
                            "magnus" => Method::Magnus,
                            "wei-norman" => Method::WeiNorman,
                            other => {
                                return lines.err(m, f("methods"), format!("unknown method '{other}' (expected ode, magnus or wei-norman)"))
                            }
                        };
                        if !methods.contains(&method) {
                            methods.push(method);
                        }
                    }
                }
            }
            let magnus_order = positive(lines, &raw.magnus_order, f("magnus_order"), 4)?;
            if magnus_order > 4 {
                return lines.err(raw.magnus_order.as_ref().unwrap(), f("magnus_order"), "magnus order is at most 4");
            }
            let tolerance = match &raw.tolerance {
                Some(t) if !(*t.get_ref() > 0.0) => return lines.err(t, f("tolerance"), "tolerance must be positive"),
                Some(t) => *t.get_ref(),
                None => 1e-7,
            };
            ScenarioKind::Evolution { methods, magnus_order, substeps: positive(lines, &raw.substeps, f("substeps"), 5)?, tolerance }
        }
        "ehrenfest" => ScenarioKind::Ehrenfest,
        "drift" => ScenarioKind::Drift,
        "probe" => ScenarioKind::Probe,
        "boltzmann" => ScenarioKind::Boltzmann { mixture: positive(lines, &raw.mixture, f("mixture"), 1)? },
        "geometry" => {
            let (kp, km) = match &raw.signature {
                Some(s) => (s.get_ref()[0], s.get_ref()[1]),
                None => (n.saturating_sub(1), n.min(1)),
            };
            if kp + km != n {
                let span = raw.signature.as_ref().map_or(&raw.rank as &dyn HasSpan, |s| s as &dyn HasSpan);
                return Err(ConfigError::Field {
                    line: lines.at(span.start()),
                    field: f("signature"),
                    message: format!("signature entries must add up to the rank {n}"),
                });
            }
            let weight = match &raw.weight {
                Some(w) if !(*w.get_ref() > 0.0) => return lines.err(w, f("weight"), "weight must be positive"),
                Some(w) => *w.get_ref(),
                None => 1.0,
            };
            let levels = match &raw.levels {
                Some(l) if *l.get_ref() < 2 => return lines.err(l, f("levels"), "at least 2 levels per mode"),
                Some(l) => *l.get_ref(),
                None => 4,
            };
            for t in &terms {
                for (idx, c) in t.element.coeffs().iter().enumerate() {
                    let ok = matches!(basis.label(idx), Generator::H(_) | Generator::E(..) | Generator::EDag(..))
                        && match basis.label(idx) {
                            Generator::E(i, j) | Generator::EDag(i, j) => i == j,
                            _ => true,
                        };
                    if *c != C64::from(0.0) && !ok {
                        let key = raw.generator.keys().find(|key| key.get_ref().trim() == t.label).unwrap();
                        return lines.err(key, f("generator"), "geometry scenarios accept only h_i, e_i and ed_i");
                    }
                }
            }
            ScenarioKind::Geometry { signature: (kp, km), weight, levels }
        }
        "schrodinger" => ScenarioKind::Schrodinger {
            degree: positive(lines, &raw.degree, f("degree"), 6)?,
            substeps: positive(lines, &raw.substeps, f("substeps"), 40)?,
        },
        other => {
            return lines.err(
                &raw.kind,
                f("kind"),
                format!("unknown kind '{other}' (expected evolution, ehrenfest, drift, probe, boltzmann, geometry or schrodinger)"),
            )
        }
    };

    let constant = terms.iter().all(|t| !t.expr.depends_on_time());
    if matches!(kind, ScenarioKind::Ehrenfest | ScenarioKind::Geometry { .. }) && !constant {
        let (key, _) = raw.generator.iter().find(|(_, v)| v.get_ref().parse::<Expr>().unwrap().depends_on_time()).unwrap();
        return lines.err(key, f("generator"), format!("{} scenarios need time-independent coefficients", raw.kind.get_ref()));
    }
    if matches!(kind, ScenarioKind::Probe) && !matches!(realization, RealizationChoice::Oscillator { .. }) {
        let at = raw.realization.as_ref().map_or(&raw.kind as &dyn HasSpan, |r| r as &dyn HasSpan);
        return Err(ConfigError::Field {
            line: lines.at(at.start()),
            field: f("realization"),
            message: "probe scenarios need the oscillator realization".into(),
        });
    }
    if matches!(kind, ScenarioKind::Schrodinger { .. }) && modules.len() > 1 {
        return lines.err(&raw.modules[1], f("modules"), "schrodinger scenarios take one module");
    }

    Ok(ScenarioConfig {
        id,
        basis,
        realization,
        modules,
        terms,
        // drift, probe and geometry generators are complex by nature
        self_adjoint: raw.self_adjoint.unwrap_or(!matches!(
            kind,
            ScenarioKind::Drift | ScenarioKind::Probe | ScenarioKind::Geometry { .. }
        )),
        grid,
        outputs,
        state,
        kind,
    })
}

trait HasSpan {
    fn start(&self) -> usize;
}

impl<T> HasSpan for Spanned<T> {
    fn start(&self) -> usize {
        self.span().start
    }
}

fn export_config(lines: &Lines, e: &Spanned<RawExport>) -> Result<ExportConfig, ConfigError> {
    let raw = e.get_ref();
    let n = match &raw.rank {
        Some(r) => rank(lines, r, "export.rank")?,
        None => 4,
    };
    let mut partitions = Vec::new();
    for p in &raw.partitions {
        partitions.push(partition(lines, p, n, "export.partitions")?);
    }
    if partitions.is_empty() {
        partitions.push(Partition::new(vec![0; n]).expect("zero partition"));
    }
    Ok(ExportConfig { rank: n, partitions, kernel_samples: positive(lines, &raw.kernel_samples, "export.kernel_samples".into(), 4)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"
schema_version = 1
seed = 3

[verify]
rank = 2
suites = ["cs", "algebra"]

[[scenario]]
id = "free"
kind = "ehrenfest"
rank = 2
grid = { start = 0.0, end = 1.0, steps = 4 }
[scenario.generator]
"h1" = "1"
"0.5 e12 + 0.5 ed12" = "0.3"
"#;

    #[test]
    fn parses_good_config() {
        let c = parse(GOOD).unwrap();
        assert_eq!(c.seed, Some(3));
        let v = c.verify.unwrap();
        assert_eq!(v.suites, vec![Suite::Algebra, Suite::Cs]);
        assert_eq!((v.rank, v.cutoff, v.samples), (2, 6, 20));
        let s = &c.scenarios[0];
        assert_eq!(s.terms.len(), 2);
        assert!(s.is_constant() && !s.is_parabolic());
        let x = &s.terms[0].element;
        let b = &s.basis;
        assert_eq!(x.coeffs()[b.lookup("e12").unwrap()], C64::from(0.5));
        assert_eq!(s.grid.points().len(), 5);
    }

    fn field_error(text: &str) -> (usize, String, String) {
        match parse(text).unwrap_err() {
            ConfigError::Field { line, field, message } => (line, field, message),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn diagnostics_carry_lines_and_fields() {
        let bad = GOOD.replace("\"h1\" = \"1\"", "\"h3\" = \"1\"");
        let (line, field, msg) = field_error(&bad);
        assert_eq!(line, 15);
        assert!(field.contains("generator"), "{field}");
        assert!(msg.contains("rank-2"), "{msg}");

        let bad = GOOD.replace("steps = 4", "steps = 1");
        let (line, field, _) = field_error(&bad);
        assert_eq!((line, field.as_str()), (13, "scenario[0].grid.steps"));

        let bad = GOOD.replace("\"0.3\"", "\"0.3 exp(t)\"");
        let (line, _, msg) = field_error(&bad);
        assert_eq!(line, 16);
        assert!(msg.contains("column 5"), "{msg}");

        let bad = GOOD.replace("\"cs\"", "\"nope\"");
        assert_eq!(field_error(&bad).1, "verify.suites");

        let bad = GOOD.replace("\"1\"\n", "\"t\"\n");
        assert!(field_error(&bad).2.contains("time-independent"));

        let bad = GOOD.replace("schema_version = 1", "schema_version = 2");
        assert_eq!(field_error(&bad).0, 2);
    }

    #[test]
    fn syntax_errors_mention_line() {
        let bad = GOOD.replace("rank = 2\nsuites", "rank = \nsuites");
        let msg = parse(&bad).unwrap_err().to_string();
        assert!(msg.contains("line 6"), "{msg}");
        let unknown = GOOD.replace("seed = 3", "sead = 3");
        assert!(parse(&unknown).unwrap_err().to_string().contains("sead"));
    }

    #[test]
    fn generator_keys() {
        let b = build_basis(2).unwrap();
        let x = generator_key(&b, "e12 - 2*ed12 + h2").unwrap();
        assert_eq!(x.coeffs()[b.lookup("ed12").unwrap()], C64::from(-2.0));
        assert_eq!(x.coeffs()[b.lookup("h2").unwrap()], C64::from(1.0));
        assert_eq!(generator_key(&b, "-h1").unwrap().coeffs()[b.lookup("h1").unwrap()], C64::from(-1.0));
        assert!(generator_key(&b, "h1 +").is_err());
        assert!(generator_key(&b, "h1 + + h2").is_err());
        assert!(generator_key(&b, "x1").is_err());
    }
}
