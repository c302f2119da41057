use std::path::{Path, PathBuf};

use clap::Args;
use mrey_core::params::centrifugal;
use mrey_core::recover::{recover_params, reference_tables, Recovery, ReferenceTable};
use serde::Deserialize;

use crate::output::{write_output, Records};
use crate::{CliError, CliResult, ConfigArgs};

#[derive(Debug, Args)]
pub struct RecoverArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// CSV with columns n,l,E at the configured α; the five built-in tables
    /// when omitted
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
struct Row {
    n: u32,
    l: u32,
    #[serde(rename = "E")]
    e: f64,
}

pub fn read_table(path: &Path, alpha: f64) -> CliResult<ReferenceTable> {
    let bad = |msg: String| CliError::Config(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| bad(e.to_string()))?;
    let mut rows = Vec::new();
    for row in reader.deserialize::<Row>() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        rows.push((row.n, row.l, row.e));
    }
    if rows.is_empty() {
        return Err(bad("no rows".into()));
    }
    let name = path
        .file_stem()
        .map_or_else(|| "table".into(), |s| s.to_string_lossy().into_owned());
    Ok(ReferenceTable { name, alpha, rows })
}

/// One row per table: fitted couplings, residuals and the verdict.
pub fn summary_records(results: &[(ReferenceTable, Recovery)]) -> Records {
    let mut r = Records::new([
        "table",
        "alpha",
        "a1",
        "a2",
        "a3",
        "rms",
        "max_residual",
        "bound_violations",
        "bound_rms",
        "verdict",
    ]);
    for (t, rec) in results {
        r.push(vec![
            t.name.clone().into(),
            t.alpha.into(),
            rec.params.a1.into(),
            rec.params.a2.into(),
            rec.params.a3.into(),
            rec.rms.into(),
            rec.max_residual.into(),
            rec.bound_violations.into(),
            rec.bound_rms.into(),
            rec.verdict.as_str().into(),
        ]);
    }
    r
}

/// Per-entry comparison, with the ceiling Q₁(l) every model energy obeys.
pub fn residual_records(results: &[(ReferenceTable, Recovery)], hbar: f64, mu: f64) -> Records {
    let mut r = Records::new(["table", "n", "l", "E_table", "E_model", "residual", "Q1"]);
    for (t, rec) in results {
        let q1_scale = hbar * hbar * t.alpha * t.alpha / (2.0 * mu);
        for (&(n, l, e), &res) in t.rows.iter().zip(&rec.residuals) {
            r.push(vec![
                t.name.clone().into(),
                n.into(),
                l.into(),
                e.into(),
                (e + res).into(),
                res.into(),
                (q1_scale * centrifugal(l)).into(),
            ]);
        }
    }
    r
}

pub fn run(args: &RecoverArgs) -> CliResult<()> {
    let cfg = args.config.resolve()?;
    let tables = match &args.table {
        Some(path) => vec![read_table(path, cfg.potential.alpha)?],
        None => reference_tables(),
    };
    let mut results = Vec::new();
    for t in tables {
        let rec = recover_params(&t, &cfg.constants)?;
        results.push((t, rec));
    }
    let summary = summary_records(&results);
    let residuals = residual_records(&results, cfg.constants.hbar, cfg.constants.mu);
    let ext = cfg.format.extension();
    let summary_path = cfg.output_dir.join(format!("recover_params.{ext}"));
    let residual_path = cfg.output_dir.join(format!("recover_residuals.{ext}"));
    write_output(&summary, cfg.format, &summary_path)?;
    write_output(&residuals, cfg.format, &residual_path)?;
    print!("{}", summary.render(cfg.format));
    eprintln!(
        "mrey: wrote {} and {}",
        summary_path.display(),
        residual_path.display()
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn reads_columns_by_name() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mine.csv");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "l, n, E\n0, 0, -0.28125\n0, 1, 0.0").unwrap();
        let t = read_table(&path, 0.5).unwrap();
        assert_eq!(t.name, "mine");
        assert_eq!(t.rows, vec![(0, 0, -0.28125), (1, 0, 0.0)]);
    }

    #[test]
    fn malformed_table_is_a_config_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "n,l,E\n0,0,abc\n").unwrap();
        assert_eq!(read_table(&path, 0.5).unwrap_err().exit_code(), 2);
    }
}
