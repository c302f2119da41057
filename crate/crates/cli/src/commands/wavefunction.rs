use std::path::PathBuf;

use clap::Args;
use mrey_core::numeric::linspace;
use mrey_core::wavefunction::wave_for;
use mrey_core::RadialWave;

use crate::config::RunConfig;
use crate::output::{write_output, Records};
use crate::{CliError, CliResult, ConfigArgs};

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// Number of evenly spaced radii, r = 0 included
    #[arg(long, default_value_t = 1001)]
    pub points: usize,
    /// Largest radius; by default where ∫ψ² beyond it is below 1e-13
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Output file; `wavefunction_n<n>_l<l>.<ext>` in the output directory by default
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// The normalized wave and its samples as `r,psi`.
pub fn samples(
    cfg: &RunConfig,
    n: u32,
    l: u32,
    points: usize,
    r_max: Option<f64>,
) -> CliResult<(RadialWave, Records)> {
    if points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    if let Some(r) = r_max {
        if !(r.is_finite() && r > 0.0) {
            return Err(CliError::Usage(format!(
                "--r-max must be positive, got {r}"
            )));
        }
    }
    let wave = wave_for(&cfg.potential, &cfg.constants, n, l)?;
    let mut rec = Records::new(["r", "psi"]);
    for r in linspace(0.0, r_max.unwrap_or(wave.extent), points) {
        rec.push(vec![r.into(), wave.value(r).into()]);
    }
    Ok((wave, rec))
}

pub fn run(args: &WavefunctionArgs) -> CliResult<()> {
    let cfg = args.config.resolve()?;
    let (wave, rec) = samples(&cfg, args.n, args.l, args.points, args.r_max)?;
    let path = args.out.clone().unwrap_or_else(|| {
        cfg.output_dir.join(format!(
            "wavefunction_n{}_l{}.{}",
            args.n,
            args.l,
            cfg.format.extension()
        ))
    });
    write_output(&rec, cfg.format, &path)?;
    println!(
        "wrote {} (E = {}, {} points)",
        path.display(),
        wave.level.energy,
        rec.rows.len()
    );
    Ok(())
}
