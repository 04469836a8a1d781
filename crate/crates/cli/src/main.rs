use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spq_cli::{load, run_export, run_scenarios, run_verify, Report, RunError};

#[derive(Parser)]
#[command(name = "spq", version, about = "Symplectic algebra verification and evolution runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the invariant suites in [verify]
    Verify(Common),
    /// Run every [[scenario]] and write CSV/JSON outputs
    Scenario(Common),
    /// Write structure constants, weight tables and kernel samples
    Export(Common),
}

#[derive(Args)]
struct Common {
    /// TOML configuration file
    #[arg(long)]
    config: PathBuf,
    /// Output directory
    #[arg(long, default_value = "spq-out")]
    out: PathBuf,
    /// Random seed; overrides the config value
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn print(report: &Report) {
    for c in &report.checks {
        println!("[{}] {}", report.scenario, c.line());
    }
}

fn run(cli: Cli) -> Result<bool, RunError> {
    let (Command::Verify(common) | Command::Scenario(common) | Command::Export(common)) = &cli.command;
    let config = load(&common.config)?;
    let seed = common.seed.or(config.seed).unwrap_or(0);
    let reports = match &cli.command {
        Command::Verify(_) => vec![run_verify(&config, seed, &common.out, common.jobs)?],
        Command::Scenario(_) => run_scenarios(&config, seed, &common.out, common.jobs)?,
        Command::Export(_) => vec![run_export(&config, seed, &common.out)?],
    };
    reports.iter().for_each(print);
    let failures: usize = reports.iter().map(Report::failures).sum();
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    println!("{} of {total} checks passed", total - failures);
    Ok(failures == 0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
