use std::path::{Path, PathBuf};

use clap::Args;
use mrey_core::spectrum::spectrum_table;
use mrey_core::SpectrumTable;

use crate::config::{self, load_config_file, Format, RunConfig};
use crate::output::{write_output, Records};
use crate::{CliError, CliResult, ConfigArgs};

/// The screening values of the published tables.
pub const DEFAULT_ALPHAS: [f64; 5] = [0.1, 0.2, 0.3, 0.4, 0.5];

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// One row per n with a column of energies for each l
    #[arg(long)]
    pub wide: bool,
}

pub fn compute(cfg: &RunConfig) -> SpectrumTable {
    spectrum_table(&cfg.potential, &cfg.constants, cfg.n_max, cfg.l_max)
}

/// `n,l,E,valid`, sorted by l then n. Angular momenta without a real δ are
/// left out.
pub fn long_records(table: &SpectrumTable) -> Records {
    let mut r = Records::new(["n", "l", "E", "valid"]);
    for level in &table.rows {
        r.push(vec![
            level.n.into(),
            level.l.into(),
            level.energy.into(),
            level.valid_bound_state.into(),
        ]);
    }
    r
}

/// `n,E_l0,E_l1,…`; a missing l reads NaN.
pub fn wide_records(table: &SpectrumTable, n_max: u32, l_max: u32) -> Records {
    let mut r = Records::new(
        std::iter::once("n".to_string()).chain((0..=l_max).map(|l| format!("E_l{l}"))),
    );
    for n in 0..=n_max {
        let mut row = vec![n.into()];
        row.extend((0..=l_max).map(|l| table.get(n, l).map_or(f64::NAN, |v| v.energy).into()));
        r.push(row);
    }
    r
}

pub fn file_name(alpha: f64, wide: bool, format: Format) -> String {
    let suffix = if wide { "_wide" } else { "" };
    format!("table_alpha_{alpha}{suffix}.{}", format.extension())
}

fn alphas(args: &TableArgs, path: Option<&Path>) -> CliResult<Vec<f64>> {
    if !args.config.alpha.is_empty() {
        return Ok(args.config.alpha.clone());
    }
    let from_file = path
        .map(load_config_file)
        .transpose()?
        .and_then(|o| o.alpha);
    Ok(from_file.map_or_else(|| DEFAULT_ALPHAS.to_vec(), |a| vec![a]))
}

pub fn run(args: &TableArgs) -> CliResult<()> {
    let path = args.config.config.as_deref();
    let mut flags = args.config.overrides()?;
    let mut written: Vec<PathBuf> = Vec::new();
    for alpha in alphas(args, path)? {
        flags.alpha = Some(alpha);
        let cfg = config::resolve(path, &flags)?;
        let table = compute(&cfg);
        for (l, e) in &table.errors {
            eprintln!("mrey: alpha = {alpha}, l = {l} skipped: {e}");
        }
        if table.rows.is_empty() {
            let (_, e) = table
                .errors
                .into_iter()
                .next()
                .expect("l range is non-empty");
            return Err(CliError::Core(e));
        }
        let records = if args.wide {
            wide_records(&table, cfg.n_max, cfg.l_max)
        } else {
            long_records(&table)
        };
        let out = cfg.output_dir.join(file_name(alpha, args.wide, cfg.format));
        write_output(&records, cfg.format, &out)?;
        written.push(out);
    }
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_table_has_the_published_shape() {
        let cfg = RunConfig::default();
        let t = compute(&cfg);
        let r = long_records(&t);
        assert_eq!(r.rows.len(), 24);
        assert!(r
            .to_csv()
            .starts_with("n,l,E,valid\n0,0,-0.28125000000000000,true\n"));
        let w = wide_records(&t, 5, 3);
        assert_eq!(w.columns, ["n", "E_l0", "E_l1", "E_l2", "E_l3"]);
        assert_eq!(w.rows.len(), 6);
    }

    #[test]
    fn names() {
        assert_eq!(file_name(0.5, false, Format::Csv), "table_alpha_0.5.csv");
        assert_eq!(
            file_name(0.1, true, Format::Json),
            "table_alpha_0.1_wide.json"
        );
    }
}
