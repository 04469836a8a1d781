//! Configuration-driven runner for the verification suites and evolution
//! scenarios.

pub mod check;
pub mod config;
pub mod export;
pub mod expr;
pub mod run;
pub mod scenario;
pub mod suites;
pub mod table;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use check::{Check, Report};
pub use config::{load, parse, Config, ConfigError};
pub use run::{run_export, run_scenarios, run_verify};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("algebra: {0}")]
    Algebra(#[from] spq_algebra::AlgebraError),
    #[error("numerics: {0}")]
    Numerics(#[from] spq_numerics::NumericsError),
    #[error("involutions: {0}")]
    Involution(#[from] spq_involutions::InvolutionError),
    #[error("representation: {0}")]
    Rep(#[from] spq_reps::RepError),
    #[error("coherent states: {0}")]
    Coherent(#[from] spq_coherent::CoherentError),
    #[error("evolution: {0}")]
    Evolution(#[from] spq_evolution::EvolutionError),
    #[error("observables: {0}")]
    Observable(#[from] spq_observables::ObservableError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("scenario '{id}': {message}")]
    Scenario { id: String, message: String },
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl RunError {
    pub fn io(path: &Path, e: std::io::Error) -> Self {
        RunError::Io { path: path.to_path_buf(), message: e.to_string() }
    }

    pub fn csv(path: &Path, e: csv::Error) -> Self {
        RunError::Io { path: path.to_path_buf(), message: e.to_string() }
    }

    /// 2 for configuration problems, 3 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            _ => 3,
        }
    }
}
