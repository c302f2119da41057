use clap::Args;
use mrey_core::params::spectral_coefficients;
use mrey_core::spectrum::lambda_max;
use mrey_core::thermo::thermo_curve;
use mrey_core::{Error, SpectralCoefficients, Sweep, SweepVariable, ThermoCurve, ThermoPoint};
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::output::{write_text, Records};
use crate::{CliError, CliResult, ConfigArgs};

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long)]
    pub beta_min: Option<f64>,
    #[arg(long)]
    pub beta_max: Option<f64>,
    #[arg(long)]
    pub beta_points: Option<usize>,
    #[arg(long)]
    pub lambda_min: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    #[arg(long)]
    pub lambda_points: Option<usize>,
    /// β held fixed along the λ sweep
    #[arg(long, default_value_t = 1.0)]
    pub beta_fixed: f64,
    /// Angular momentum of the levels summed over
    #[arg(long, default_value_t = 0)]
    pub l: u32,
}

type Quantity = (&'static str, fn(&ThermoPoint) -> f64);

/// The quantities plotted, in output order.
pub const QUANTITIES: [Quantity; 5] = [
    ("Z", |p| p.z),
    ("U", |p| p.u),
    ("S", |p| p.s),
    ("F", |p| p.f),
    ("C", |p| p.c),
];

#[derive(Debug, Clone)]
pub struct FigureSet {
    pub coeffs: SpectralCoefficients,
    pub l: u32,
    pub beta_fixed: f64,
    /// λ of the β sweep and where it came from.
    pub lambda_fixed: f64,
    pub lambda_source: &'static str,
    pub beta_sweep: ThermoCurve,
    pub lambda_sweep: ThermoCurve,
}

pub fn compute(cfg: &RunConfig, l: u32, beta_fixed: f64) -> CliResult<FigureSet> {
    if !(beta_fixed.is_finite() && beta_fixed > 0.0) {
        return Err(CliError::Config(format!(
            "beta_fixed must be finite and positive, got {beta_fixed}"
        )));
    }
    let coeffs = spectral_coefficients(&cfg.potential, &cfg.constants, l)?;
    let (lambda_fixed, lambda_source) = match cfg.lambda_fixed {
        Some(v) => (v, "lambda_fixed"),
        None => match lambda_max(&coeffs) {
            Ok(v) if v > 0.0 => (v, "lambda_max"),
            Ok(_) | Err(Error::NoStationaryPoint) => {
                return Err(CliError::Config(
                    "E(n) has no interior maximum on n > 0; set lambda_fixed".into(),
                ))
            }
            Err(e) => return Err(e.into()),
        },
    };
    let k = cfg.constants.k_boltzmann;
    let beta_sweep = thermo_curve(
        &coeffs,
        k,
        &Sweep::Beta {
            grid: cfg.beta_grid.values(),
            lambda: lambda_fixed,
        },
    )?;
    let lambda_sweep = thermo_curve(
        &coeffs,
        k,
        &Sweep::Lambda {
            grid: cfg.lambda_grid.values(),
            beta: beta_fixed,
        },
    )?;
    for c in [&beta_sweep, &lambda_sweep] {
        if c.points.is_empty() {
            let (_, e) = c.errors[0].clone();
            return Err(e.into());
        }
    }
    Ok(FigureSet {
        coeffs,
        l,
        beta_fixed,
        lambda_fixed,
        lambda_source,
        beta_sweep,
        lambda_sweep,
    })
}

fn sweep_name(v: SweepVariable) -> &'static str {
    match v {
        SweepVariable::Beta => "beta",
        SweepVariable::Lambda => "lambda",
    }
}

/// `beta,lambda,Z,U,S,F,C`
pub fn curve_records(curve: &ThermoCurve) -> Records {
    let mut r = Records::new(
        ["beta", "lambda"]
            .into_iter()
            .chain(QUANTITIES.iter().map(|q| q.0)),
    );
    for p in &curve.points {
        let mut row = vec![p.beta.into(), p.lambda.into()];
        row.extend(QUANTITIES.iter().map(|q| q.1(p).into()));
        r.push(row);
    }
    r
}

/// `beta,lambda,<name>` for one quantity.
pub fn series_records(curve: &ThermoCurve, name: &str, pick: fn(&ThermoPoint) -> f64) -> Records {
    let mut r = Records::new(["beta", "lambda", name]);
    for p in &curve.points {
        r.push(vec![p.beta.into(), p.lambda.into(), pick(p).into()]);
    }
    r
}

/// File name and contents of the two full curves and the ten single series.
pub fn render(set: &FigureSet, format: Format) -> Vec<(String, String)> {
    let ext = format.extension();
    let mut files = Vec::new();
    for curve in [&set.beta_sweep, &set.lambda_sweep] {
        let var = sweep_name(curve.sweep_variable);
        files.push((
            format!("thermo_{var}_sweep.{ext}"),
            curve_records(curve).render(format),
        ));
    }
    for curve in [&set.beta_sweep, &set.lambda_sweep] {
        let var = sweep_name(curve.sweep_variable);
        for (name, pick) in QUANTITIES {
            files.push((
                format!("{}_vs_{var}.{ext}", name.to_lowercase()),
                series_records(curve, name, pick).render(format),
            ));
        }
    }
    files
}

/// Everything needed to regenerate the files.
pub fn metadata(cfg: &RunConfig, set: &FigureSet, files: &[String]) -> Value {
    let skipped: Vec<Value> = [&set.beta_sweep, &set.lambda_sweep]
        .iter()
        .flat_map(|c| {
            c.errors.iter().map(|(x, e)| {
                json!({"sweep": sweep_name(c.sweep_variable), "value": x, "error": e.to_string()})
            })
        })
        .collect();
    let overflow = |c: &ThermoCurve| c.points.iter().filter(|p| p.z.is_infinite()).count();
    json!({
        "config": cfg.to_json(),
        "l": set.l,
        "beta_fixed": set.beta_fixed,
        "lambda_fixed": set.lambda_fixed,
        "lambda_source": set.lambda_source,
        "coefficients": {
            "q1": set.coeffs.q1,
            "q2": set.coeffs.q2,
            "q3": set.coeffs.q3,
            "delta": set.coeffs.delta,
        },
        "beta_values": cfg.beta_grid.values(),
        "lambda_values": cfg.lambda_grid.values(),
        "z_overflow_points": {
            "beta": overflow(&set.beta_sweep),
            "lambda": overflow(&set.lambda_sweep),
        },
        "skipped_points": skipped,
        "files": files,
    })
}

pub fn effective_config(args: &FiguresArgs) -> CliResult<RunConfig> {
    let mut cfg = args.config.resolve()?;
    cfg.beta_grid = cfg
        .beta_grid
        .with_bounds(true, args.beta_min, args.beta_max, args.beta_points);
    cfg.lambda_grid =
        cfg.lambda_grid
            .with_bounds(false, args.lambda_min, args.lambda_max, args.lambda_points);
    cfg.validate()?;
    Ok(cfg)
}

pub fn run(args: &FiguresArgs) -> CliResult<()> {
    let cfg = effective_config(args)?;
    let set = compute(&cfg, args.l, args.beta_fixed)?;
    let files = render(&set, cfg.format);
    let names: Vec<String> = files.iter().map(|f| f.0.clone()).collect();
    for (name, text) in &files {
        write_text(text, &cfg.output_dir.join(name))?;
    }
    let mut meta = serde_json::to_string_pretty(&metadata(&cfg, &set, &names)).expect("json");
    meta.push('\n');
    let meta_path = cfg.output_dir.join("figures_meta.json");
    write_text(&meta, &meta_path)?;
    for name in &names {
        println!("wrote {}", cfg.output_dir.join(name).display());
    }
    println!("wrote {}", meta_path.display());
    Ok(())
}
