use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spq_algebra::{build_basis, BasisExport, DefiningRep};
use spq_coherent::{kernel_table, SymCoord};
use spq_numerics::{CMat, C64};
use spq_reps::{build_fock, u4_lowest_module, weight_decompose, InducedRepSpec, ModuleSpace, Partition};

use crate::check::Check;
use crate::config::ExportConfig;
use crate::table::{write_json, Cell, Table};
use crate::RunError;

fn module_for(n: usize, part: &Partition) -> Result<ModuleSpace, RunError> {
    let basis = build_basis(n)?;
    if part.parts().iter().all(|p| *p == 0) {
        return Ok(ModuleSpace::trivial(&basis));
    }
    let size: i64 = part.parts().iter().sum();
    Ok(u4_lowest_module(&build_fock(n, 4.max(size as usize + 1))?, part)?)
}

fn partition_name(part: &Partition) -> String {
    part.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join("-")
}

/// Writes constants, weights, module and kernel tables under `out`;
/// returns checks and artifact paths relative to `out`.
pub fn export_tables(cfg: &ExportConfig, seed: u64, out: &Path) -> Result<(Vec<Check>, Vec<String>), RunError> {
    let n = cfg.rank;
    let basis = build_basis(n)?;
    let mut artifacts = Vec::new();
    let mut checks = Vec::new();

    let constants = BasisExport::from_basis(&basis);
    let name = "structure_constants.json";
    write_json(&out.join(name), &constants)?;
    artifacts.push(name.to_string());
    let text = std::fs::read_to_string(out.join(name)).map_err(|e| RunError::io(&out.join(name), e))?;
    let back: BasisExport = serde_json::from_str(&text)?;
    let round_trip = back == constants && back.rebuild().map(|b| b.constants() == basis.constants()).unwrap_or(false);
    checks.push(Check::exact("export.constants_round_trip", round_trip, format!("{} entries", constants.constants.len())));

    let defining = ModuleSpace::from_realization("defining", &basis, &DefiningRep::<f64>::new(basis.rank()))?;
    let weights = weight_decompose(&defining)?;
    let mut cols: Vec<String> = vec!["index".into()];
    cols.extend((1..=n).map(|i| format!("w{i}")));
    cols.push("multiplicity".into());
    let mut table = Table { columns: cols, rows: Vec::new() };
    for (k, w) in weights.iter().enumerate() {
        let mut row = vec![Cell::from(k)];
        row.extend(w.weight.iter().map(|x| Cell::from(*x)));
        row.push(Cell::from(w.multiplicity()));
        table.push(row);
    }
    let name = "weights.csv";
    table.write_csv(&out.join(name))?;
    artifacts.push(name.to_string());
    checks.push(Check::exact("export.weight_rows", table.rows.len() == 2 * n, format!("{} rows", table.rows.len())));

    std::fs::create_dir_all(out.join("modules")).map_err(|e| RunError::io(&out.join("modules"), e))?;
    for part in &cfg.partitions {
        let m = module_for(n, part)?;
        let name = format!("modules/{}.json", partition_name(part));
        write_json(&out.join(&name), &m.export())?;
        artifacts.push(name);
    }

    let part = cfg.partitions[0].clone();
    let module = module_for(n, &part)?;
    let d = module.dim();
    let spec = InducedRepSpec::with_default_shift(part, module);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = |r: f64| -> Result<SymCoord, RunError> {
        let mut z = CMat::zeros(n, n);
        for a in 0..n {
            for b in a..n {
                let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                z[(a, b)] = c;
                z[(b, a)] = c;
            }
        }
        let s = z.singular_values()[0];
        Ok(SymCoord::new(z * C64::from(r / s))?)
    };
    let mut points = vec![(SymCoord::zero(n), random(0.5)?)];
    for _ in 1..cfg.kernel_samples {
        points.push((random(0.5)?, random(0.5)?));
    }
    let rows = kernel_table(&points, &spec)?;
    let origin = rows
        .iter()
        .filter(|r| r.sample == 0)
        .map(|r| (C64::new(r.re, r.im) - C64::from(if r.row == r.col { 1.0 } else { 0.0 })).norm())
        .fold(0.0, f64::max);
    checks.push(Check::below("export.kernel_origin_identity", origin, 1e-12).with_detail(format!("{d}x{d} blocks")));
    let name = "kernel.csv";
    Table::from_records(&rows)?.write_csv(&out.join(name))?;
    artifacts.push(name.to_string());
    Ok((checks, artifacts))
}
