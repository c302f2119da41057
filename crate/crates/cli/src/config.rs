//! Run configuration: built-in defaults, an optional TOML file, then flags.
//!
//! ```toml
//! alpha = 0.3
//! a3 = 1.5
//! beta_grid = "log:0.1:100:50"
//! lambda_grid = [1.0, 5.0, 20.0]
//! format = "json"
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use mrey_core::numeric::{linspace, logspace};
use mrey_core::{PhysicalConstants, PotentialParams};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Every key a config file may contain.
pub const KEYS: [&str; 14] = [
    "hbar",
    "mu",
    "k",
    "a1",
    "a2",
    "a3",
    "alpha",
    "n_max",
    "l_max",
    "beta_grid",
    "lambda_grid",
    "lambda_fixed",
    "output_dir",
    "format",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    fn parse(s: &str) -> Option<Format> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// A sample grid, either spelled out or generated.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Lin { lo: f64, hi: f64, count: usize },
    Log { lo: f64, hi: f64, count: usize },
    List(Vec<f64>),
}

impl GridSpec {
    /// Parses `lin:lo:hi:count` or `log:lo:hi:count`.
    pub fn parse(s: &str) -> Result<GridSpec, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [kind, lo, hi, count] = parts[..] else {
            return Err(format!("expected kind:lo:hi:count, got {s:?}"));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("{t:?} is not a number"))
        };
        let (lo, hi) = (num(lo)?, num(hi)?);
        let count = count
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("{count:?} is not a point count"))?;
        match kind.trim() {
            "lin" => Ok(GridSpec::Lin { lo, hi, count }),
            "log" => Ok(GridSpec::Log { lo, hi, count }),
            other => Err(format!("unknown grid kind {other:?} (lin or log)")),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match self {
            GridSpec::Lin { lo, hi, count } => linspace(*lo, *hi, *count),
            GridSpec::Log { lo, hi, count } => logspace(*lo, *hi, *count),
            GridSpec::List(v) => v.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            GridSpec::Lin { count, .. } | GridSpec::Log { count, .. } => *count,
            GridSpec::List(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Replaces whichever of the endpoints and count are given. A list
    /// becomes a grid of `kind` spanning its old range.
    pub fn with_bounds(
        &self,
        log: bool,
        lo: Option<f64>,
        hi: Option<f64>,
        count: Option<usize>,
    ) -> GridSpec {
        if lo.is_none() && hi.is_none() && count.is_none() {
            return self.clone();
        }
        let v = self.values();
        let lo = lo.unwrap_or(v.first().copied().unwrap_or(f64::NAN));
        let hi = hi.unwrap_or(v.last().copied().unwrap_or(f64::NAN));
        let count = count.unwrap_or(self.len());
        match (self, log) {
            (GridSpec::Lin { .. }, _) => GridSpec::Lin { lo, hi, count },
            (GridSpec::Log { .. }, _) => GridSpec::Log { lo, hi, count },
            (GridSpec::List(_), true) => GridSpec::Log { lo, hi, count },
            (GridSpec::List(_), false) => GridSpec::Lin { lo, hi, count },
        }
    }

    fn validate(&self, key: &str) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Config(format!("{key}: {msg}")));
        if let GridSpec::Log { lo, .. } = self {
            if lo.is_nan() || *lo <= 0.0 {
                return bad(format!("log grid needs a positive lower end, got {lo}"));
            }
        }
        let v = self.values();
        if v.is_empty() {
            return bad("grid is empty".into());
        }
        if v.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return bad("grid values must be finite and positive".into());
        }
        if v.windows(2).any(|w| w[1] <= w[0]) {
            return bad("grid must be strictly increasing".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        match self {
            GridSpec::List(v) => json!(v),
            other => json!(other.to_string()),
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridSpec::Lin { lo, hi, count } => write!(f, "lin:{lo}:{hi}:{count}"),
            GridSpec::Log { lo, hi, count } => write!(f, "log:{lo}:{hi}:{count}"),
            GridSpec::List(v) => {
                let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", items.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub constants: PhysicalConstants,
    pub potential: PotentialParams,
    pub n_max: u32,
    pub l_max: u32,
    pub beta_grid: GridSpec,
    pub lambda_grid: GridSpec,
    /// λ for β sweeps; λ_max of the spectrum when absent.
    pub lambda_fixed: Option<f64>,
    pub output_dir: PathBuf,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            constants: PhysicalConstants::NATURAL,
            potential: PotentialParams {
                a1: 0.0,
                a2: 0.0,
                a3: 1.0,
                alpha: 0.5,
            },
            n_max: 5,
            l_max: 3,
            beta_grid: GridSpec::Log {
                lo: 0.1,
                hi: 100.0,
                count: 50,
            },
            lambda_grid: GridSpec::Lin {
                lo: 1.0,
                hi: 700.0,
                count: 100,
            },
            lambda_fixed: None,
            output_dir: PathBuf::from("out"),
            format: Format::Csv,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        self.constants
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        self.potential
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        self.beta_grid.validate("beta_grid")?;
        self.lambda_grid.validate("lambda_grid")?;
        if let Some(l) = self.lambda_fixed {
            if !(l.is_finite() && l > 0.0) {
                return Err(CliError::Config(format!(
                    "lambda_fixed must be finite and positive, got {l}"
                )));
            }
        }
        Ok(())
    }

    /// The effective configuration, as written next to generated files.
    pub fn to_json(&self) -> Value {
        json!({
            "hbar": self.constants.hbar,
            "mu": self.constants.mu,
            "k": self.constants.k_boltzmann,
            "a1": self.potential.a1,
            "a2": self.potential.a2,
            "a3": self.potential.a3,
            "alpha": self.potential.alpha,
            "n_max": self.n_max,
            "l_max": self.l_max,
            "beta_grid": self.beta_grid.to_json(),
            "lambda_grid": self.lambda_grid.to_json(),
            "lambda_fixed": self.lambda_fixed,
            "output_dir": self.output_dir.display().to_string(),
            "format": self.format.extension(),
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum GridValue {
    Spec(String),
    List(Vec<f64>),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    hbar: Option<f64>,
    mu: Option<f64>,
    k: Option<f64>,
    a1: Option<f64>,
    a2: Option<f64>,
    a3: Option<f64>,
    alpha: Option<f64>,
    n_max: Option<u32>,
    l_max: Option<u32>,
    beta_grid: Option<GridValue>,
    lambda_grid: Option<GridValue>,
    lambda_fixed: Option<f64>,
    output_dir: Option<String>,
    format: Option<String>,
}

/// Values given explicitly, by file or flag. Later layers win.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub hbar: Option<f64>,
    pub mu: Option<f64>,
    pub k: Option<f64>,
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    pub a3: Option<f64>,
    pub alpha: Option<f64>,
    pub n_max: Option<u32>,
    pub l_max: Option<u32>,
    pub beta_grid: Option<GridSpec>,
    pub lambda_grid: Option<GridSpec>,
    pub lambda_fixed: Option<f64>,
    pub output_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut RunConfig) {
        let c = &mut cfg.constants;
        c.hbar = self.hbar.unwrap_or(c.hbar);
        c.mu = self.mu.unwrap_or(c.mu);
        c.k_boltzmann = self.k.unwrap_or(c.k_boltzmann);
        let p = &mut cfg.potential;
        p.a1 = self.a1.unwrap_or(p.a1);
        p.a2 = self.a2.unwrap_or(p.a2);
        p.a3 = self.a3.unwrap_or(p.a3);
        p.alpha = self.alpha.unwrap_or(p.alpha);
        cfg.n_max = self.n_max.unwrap_or(cfg.n_max);
        cfg.l_max = self.l_max.unwrap_or(cfg.l_max);
        if let Some(g) = &self.beta_grid {
            cfg.beta_grid = g.clone();
        }
        if let Some(g) = &self.lambda_grid {
            cfg.lambda_grid = g.clone();
        }
        if self.lambda_fixed.is_some() {
            cfg.lambda_fixed = self.lambda_fixed;
        }
        if let Some(d) = &self.output_dir {
            cfg.output_dir = d.clone();
        }
        cfg.format = self.format.unwrap_or(cfg.format);
    }
}

fn grid_from(key: &str, v: Option<GridValue>) -> CliResult<Option<GridSpec>> {
    match v {
        None => Ok(None),
        Some(GridValue::List(v)) => Ok(Some(GridSpec::List(v))),
        Some(GridValue::Spec(s)) => GridSpec::parse(&s)
            .map(Some)
            .map_err(|e| CliError::Config(format!("{key}: {e}"))),
    }
}

/// Parses config text into the overrides it sets.
pub fn parse_config(text: &str) -> CliResult<Overrides> {
    let file: FileConfig =
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string().trim_end().into()))?;
    let format = match file.format {
        None => None,
        Some(s) => Some(Format::parse(&s).ok_or_else(|| {
            CliError::Config(format!("format: expected \"csv\" or \"json\", got {s:?}"))
        })?),
    };
    Ok(Overrides {
        hbar: file.hbar,
        mu: file.mu,
        k: file.k,
        a1: file.a1,
        a2: file.a2,
        a3: file.a3,
        alpha: file.alpha,
        n_max: file.n_max,
        l_max: file.l_max,
        beta_grid: grid_from("beta_grid", file.beta_grid)?,
        lambda_grid: grid_from("lambda_grid", file.lambda_grid)?,
        lambda_fixed: file.lambda_fixed,
        output_dir: file.output_dir.map(PathBuf::from),
        format,
    })
}

pub fn load_config_file(path: &Path) -> CliResult<Overrides> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Defaults overlaid with the file at `path`.
pub fn load_config(path: &Path) -> CliResult<RunConfig> {
    resolve(Some(path), &Overrides::default())
}

/// Defaults, then the file if any, then `flags`; validated.
pub fn resolve(path: Option<&Path>, flags: &Overrides) -> CliResult<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = path {
        load_config_file(path)?.apply(&mut cfg);
    }
    flags.apply(&mut cfg);
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let mut cfg = RunConfig::default();
        parse_config("").unwrap().apply(&mut cfg);
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.potential.a3, 1.0);
        assert_eq!(cfg.potential.alpha, 0.5);
        assert_eq!((cfg.n_max, cfg.l_max), (5, 3));
        assert_eq!(cfg.constants, PhysicalConstants::NATURAL);
    }

    #[test]
    fn every_key_is_accepted() {
        let text = r#"
hbar = 1.0
mu = 2
k = 1.0
a1 = -0.01
a2 = 0.0
a3 = 1.5
alpha = 0.3
n_max = 4
l_max = 2
beta_grid = "log:0.5:50:10"
lambda_grid = [1, 2, 3.5]
lambda_fixed = 3.0
output_dir = "results"
format = "json"
"#;
        let mut cfg = RunConfig::default();
        parse_config(text).unwrap().apply(&mut cfg);
        cfg.validate().unwrap();
        assert_eq!(cfg.constants.mu, 2.0);
        assert_eq!(cfg.potential.a1, -0.01);
        assert_eq!(cfg.beta_grid.len(), 10);
        assert_eq!(cfg.lambda_grid.values(), vec![1.0, 2.0, 3.5]);
        assert_eq!(cfg.lambda_fixed, Some(3.0));
        assert_eq!(cfg.format, Format::Json);
        let json_keys: Vec<String> = cfg.to_json().as_object().unwrap().keys().cloned().collect();
        assert_eq!(json_keys, KEYS);
    }

    #[test]
    fn unknown_key_is_named() {
        let err = parse_config("alpah = 0.5").unwrap_err().to_string();
        assert!(err.contains("alpah"), "{err}");
    }

    #[test]
    fn type_errors_name_the_key_and_position() {
        let err = parse_config("alpha = 0.5\na1 = \"abc\"\n").unwrap_err();
        assert!(matches!(err, CliError::Config(_)));
        let msg = err.to_string();
        assert!(msg.contains("a1"), "{msg}");
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn flags_override_the_file() {
        let mut cfg = RunConfig::default();
        parse_config("alpha = 0.5").unwrap().apply(&mut cfg);
        Overrides {
            alpha: Some(0.2),
            ..Default::default()
        }
        .apply(&mut cfg);
        assert_eq!(cfg.potential.alpha, 0.2);
    }

    #[test]
    fn grids_are_checked() {
        assert!(GridSpec::parse("cubic:1:2:3").is_err());
        assert!(GridSpec::parse("lin:1:2").is_err());
        let g = GridSpec::parse("lin:1:700:100").unwrap();
        assert_eq!(g.values().len(), 100);
        assert_eq!(g.to_string(), "lin:1:700:100");
        assert!(GridSpec::List(vec![1.0, 1.0]).validate("g").is_err());
        assert!(GridSpec::List(vec![]).validate("g").is_err());
        assert!(GridSpec::parse("log:0:1:5").unwrap().validate("g").is_err());
    }

    #[test]
    fn bounds_replace_only_what_is_given() {
        let g = RunConfig::default().beta_grid;
        let h = g.with_bounds(true, Some(0.2), None, None);
        assert_eq!(h.to_string(), "log:0.2:100:50");
        let l = GridSpec::List(vec![1.0, 2.0, 4.0]).with_bounds(false, None, Some(8.0), None);
        assert_eq!(l.to_string(), "lin:1:8:3");
    }

    #[test]
    fn bad_format_value() {
        let err = parse_config("format = \"xml\"").unwrap_err().to_string();
        assert!(err.contains("format"));
    }
}
