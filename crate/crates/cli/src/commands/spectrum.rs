use std::path::PathBuf;

use clap::Args;
use mrey_core::params::spectral_coefficients;
use mrey_core::spectrum::level_from_coefficients;
use mrey_core::EnergyLevel;

use crate::config::RunConfig;
use crate::output::{write_output, Records};
use crate::{CliError, CliResult, ConfigArgs};

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Radial quantum number; all of 0..=n_max when omitted
    #[arg(long)]
    pub n: Option<u32>,
    /// Angular momentum; all of 0..=l_max when omitted
    #[arg(long)]
    pub l: Option<u32>,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Levels for the requested n and l, sorted by l then n. An l without a real
/// δ is an error when it was asked for explicitly and skipped otherwise.
pub fn levels(cfg: &RunConfig, n: Option<u32>, l: Option<u32>) -> CliResult<Vec<EnergyLevel>> {
    let ns: Vec<u32> = n.map_or_else(|| (0..=cfg.n_max).collect(), |n| vec![n]);
    let ls: Vec<u32> = l.map_or_else(|| (0..=cfg.l_max).collect(), |l| vec![l]);
    let mut out = Vec::new();
    let mut first_err = None;
    for &l in &ls {
        match spectral_coefficients(&cfg.potential, &cfg.constants, l) {
            Ok(c) => out.extend(ns.iter().map(|&n| level_from_coefficients(&c, n, l))),
            Err(e) if ls.len() > 1 => {
                eprintln!("mrey: l = {l} skipped: {e}");
                first_err.get_or_insert(e);
            }
            Err(e) => return Err(CliError::Core(e)),
        }
    }
    match first_err {
        Some(e) if out.is_empty() => Err(CliError::Core(e)),
        _ => Ok(out),
    }
}

pub fn records(levels: &[EnergyLevel]) -> Records {
    let mut r = Records::new(["n", "l", "E", "valid"]);
    for v in levels {
        r.push(vec![
            v.n.into(),
            v.l.into(),
            v.energy.into(),
            v.valid_bound_state.into(),
        ]);
    }
    r
}

pub fn run(args: &SpectrumArgs) -> CliResult<()> {
    let cfg = args.config.resolve()?;
    let r = records(&levels(&cfg, args.n, args.l)?);
    match &args.out {
        Some(path) => write_output(&r, cfg.format, path),
        None => {
            print!("{}", r.render(cfg.format));
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_level() {
        let v = levels(&RunConfig::default(), Some(0), Some(0)).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].energy, -0.28125);
        assert!(v[0].valid_bound_state);
    }

    #[test]
    fn ranges_follow_the_config() {
        let cfg = RunConfig {
            n_max: 2,
            l_max: 1,
            ..RunConfig::default()
        };
        assert_eq!(levels(&cfg, None, None).unwrap().len(), 6);
        assert_eq!(levels(&cfg, Some(4), None).unwrap().len(), 2);
    }

    #[test]
    fn explicit_l_without_real_delta_fails() {
        let mut cfg = RunConfig::default();
        cfg.potential.a1 = 1.0;
        assert!(levels(&cfg, Some(0), Some(0)).is_err());
        let v = levels(&cfg, None, None).unwrap();
        assert!(v.iter().all(|v| v.l > 0));
    }
}
