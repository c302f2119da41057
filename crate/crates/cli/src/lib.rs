//! `mrey`: spectra, wavefunctions and thermodynamics of the Manning-Rosen plus
//! exponential Yukawa potential from the command line.
//!
//! Exit codes: 0 success, 1 failed `verify`, 2 invalid config or parameters,
//! 3 numerical or IO failure, 64 usage error.

pub mod commands;
pub mod config;
mod error;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{load_config, Format, GridSpec, Overrides, RunConfig};
pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "mrey",
    version,
    about = "MREY potential bound states and thermodynamics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand that reads a configuration.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// TOML config file; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    /// Boltzmann constant
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a3: Option<f64>,
    /// Screening parameter; `table` accepts a comma-separated list
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<f64>,
    #[arg(long)]
    pub n_max: Option<u32>,
    #[arg(long)]
    pub l_max: Option<u32>,
    /// `lin:lo:hi:count` or `log:lo:hi:count`
    #[arg(long)]
    pub beta_grid: Option<String>,
    /// `lin:lo:hi:count` or `log:lo:hi:count`
    #[arg(long)]
    pub lambda_grid: Option<String>,
    #[arg(long)]
    pub lambda_fixed: Option<f64>,
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl ConfigArgs {
    pub fn overrides(&self) -> CliResult<Overrides> {
        let grid = |key: &str, s: &Option<String>| -> CliResult<Option<GridSpec>> {
            s.as_deref()
                .map(|s| GridSpec::parse(s).map_err(|e| CliError::Usage(format!("--{key}: {e}"))))
                .transpose()
        };
        Ok(Overrides {
            hbar: self.hbar,
            mu: self.mu,
            k: self.k,
            a1: self.a1,
            a2: self.a2,
            a3: self.a3,
            alpha: self.alpha.last().copied(),
            n_max: self.n_max,
            l_max: self.l_max,
            beta_grid: grid("beta-grid", &self.beta_grid)?,
            lambda_grid: grid("lambda-grid", &self.lambda_grid)?,
            lambda_fixed: self.lambda_fixed,
            output_dir: self.output_dir.clone(),
            format: self.format,
        })
    }

    /// The effective configuration; more than one α is a usage error.
    pub fn resolve(&self) -> CliResult<RunConfig> {
        if self.alpha.len() > 1 {
            return Err(CliError::Usage(
                "only `table` accepts several --alpha values".into(),
            ));
        }
        config::resolve(self.config.as_deref(), &self.overrides()?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy tables E(n, l), one file per α
    Table(commands::table::TableArgs),
    /// Energies of one level or a range, printed to stdout
    Spectrum(commands::spectrum::SpectrumArgs),
    /// (r, ψ) samples of one radial wavefunction
    Wavefunction(commands::wavefunction::WavefunctionArgs),
    /// Z, U, S, F, C against β and against λ
    Figures(commands::figures::FiguresArgs),
    /// Fit (A₁, A₂, A₃) to a tabulated spectrum
    RecoverParams(commands::recover::RecoverArgs),
    /// Run the consistency checks and print a report
    Verify(commands::verify::VerifyArgs),
}

pub fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Table(a) => commands::table::run(&a),
        Command::Spectrum(a) => commands::spectrum::run(&a),
        Command::Wavefunction(a) => commands::wavefunction::run(&a),
        Command::Figures(a) => commands::figures::run(&a),
        Command::RecoverParams(a) => commands::recover::run(&a),
        Command::Verify(a) => commands::verify::run(&a),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Errors go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("mrey: {e}");
            e.exit_code()
        }
    }
}
