use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::check::Report;
use crate::config::{Config, ConfigError, ExportConfig, Suite, VerifyConfig};
use crate::export::export_tables;
use crate::scenario::run_scenario;
use crate::suites::{run_suite, SuiteParams};
use crate::table::write_json;
use crate::RunError;

/// Applies `f` to every item on up to `jobs` threads; results keep input order.
pub fn parallel_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let jobs = jobs.clamp(1, items.len().max(1));
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= items.len() {
                    break;
                }
                let r = f(&items[k]);
                slots.lock().expect("result slots")[k] = Some(r);
            });
        }
    });
    slots.into_inner().expect("result slots").into_iter().map(|r| r.expect("every item ran")).collect()
}

fn create_dir(out: &Path) -> Result<(), RunError> {
    std::fs::create_dir_all(out).map_err(|e| RunError::io(out, e))
}

pub fn run_verify(config: &Config, seed: u64, out: &Path, jobs: usize) -> Result<Report, RunError> {
    let v = config.verify.clone().unwrap_or(VerifyConfig { rank: 4, cutoff: 6, suites: Suite::ALL.to_vec(), samples: 20 });
    let params = SuiteParams { rank: v.rank, cutoff: v.cutoff, samples: v.samples, seed };
    let results = parallel_map(&v.suites, jobs, |s| run_suite(*s, params));
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    create_dir(out)?;
    let name = "verify.json";
    let report = Report::new("verify", checks, vec![name.to_string()]);
    write_json(&out.join(name), &report)?;
    Ok(report)
}

/// Runs every scenario; reports are ordered by scenario id.
pub fn run_scenarios(config: &Config, seed: u64, out: &Path, jobs: usize) -> Result<Vec<Report>, RunError> {
    if config.scenarios.is_empty() {
        return Err(ConfigError::Missing { field: "scenario".into(), message: "no [[scenario]] entries".into() }.into());
    }
    create_dir(out)?;
    let results = parallel_map(&config.scenarios, jobs, |sc| -> Result<Report, RunError> {
        let (checks, table) = run_scenario(sc, seed)?;
        let mut artifacts = Vec::new();
        if sc.outputs.csv {
            let name = format!("{}.csv", sc.id);
            table.write_csv(&out.join(&name))?;
            artifacts.push(name);
        }
        if sc.outputs.json {
            let name = format!("{}.data.json", sc.id);
            table.write_json(&out.join(&name))?;
            artifacts.push(name);
        }
        let name = format!("{}.report.json", sc.id);
        artifacts.push(name.clone());
        let report = Report::new(sc.id.clone(), checks, artifacts);
        write_json(&out.join(name), &report)?;
        Ok(report)
    });
    let mut reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    reports.sort_by(|a, b| a.scenario.cmp(&b.scenario));
    write_json(&out.join("scenarios.json"), &reports)?;
    Ok(reports)
}

pub fn run_export(config: &Config, seed: u64, out: &Path) -> Result<Report, RunError> {
    let cfg = config.export.clone().unwrap_or_else(|| ExportConfig {
        rank: 4,
        partitions: vec![spq_reps::Partition::new(vec![0; 4]).expect("zero partition")],
        kernel_samples: 4,
    });
    create_dir(out)?;
    let (checks, mut artifacts) = export_tables(&cfg, seed, out)?;
    let name = "export.json";
    artifacts.push(name.to_string());
    let report = Report::new("export", checks, artifacts);
    write_json(&out.join(name), &report)?;
    Ok(report)
}
