//! Run configuration: defaults, a flat `key = value` file, the thread-count
//! environment variable, and command-line flags, applied in that order.

use std::path::{Path, PathBuf};

use casimir_qubit::casimir::Field;
use casimir_qubit::{ModeWindow, SlabGeometry};
use clap::ValueEnum;
use serde::Serialize;

use crate::CliError;

pub const THREADS_ENV: &str = "CASIMIR_QUBIT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FieldArg {
    Scalar,
    Fermion,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Scalar => Field::ScalarPerDof,
            FieldArg::Fermion => Field::DiracFermion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum MethodArg {
    Zeta,
    Cutoff,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub geometry: SlabGeometry,
    pub window: ModeWindow,
    /// Cutoff regulators in units of `L`.
    pub delta_grid: Vec<f64>,
    pub beta_grid: Vec<f64>,
    pub pmax: u32,
    /// Replaces every check tolerance when set.
    pub tolerance: Option<f64>,
    /// Randomized mode samples per suite.
    pub samples: usize,
    pub seed: u64,
    pub field: FieldArg,
    pub method: MethodArg,
    pub format: Format,
    #[serde(skip)]
    pub threads: Option<usize>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            geometry: SlabGeometry::unit(1.0),
            window: ModeWindow {
                jmax: 2,
                kmax: 2,
                lmax: 3,
                nmax: 3,
            },
            delta_grid: vec![0.2, 0.1, 0.05, 0.025],
            beta_grid: vec![8.0, 16.0, 32.0, 64.0],
            pmax: 5,
            tolerance: None,
            samples: 1000,
            seed: 20_240_601,
            field: FieldArg::Scalar,
            method: MethodArg::Zeta,
            format: Format::Json,
            threads: None,
            out: None,
        }
    }
}

/// Optional settings from one source; `None` leaves the lower layer alone.
#[derive(Debug, Clone, Default, PartialEq, clap::Args)]
pub struct Overrides {
    /// Plate separation
    #[arg(long = "L", global = true)]
    pub l: Option<f64>,
    #[arg(long = "Lx", global = true)]
    pub lx: Option<f64>,
    #[arg(long = "Ly", global = true)]
    pub ly: Option<f64>,
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true)]
    pub mass: Option<f64>,
    /// Mode window bounds `j,k,l,n`
    #[arg(long, global = true, value_parser = parse_window)]
    pub window: Option<ModeWindow>,
    #[arg(long = "delta-grid", global = true, value_delimiter = ',')]
    pub delta_grid: Option<Vec<f64>>,
    #[arg(long = "beta-grid", global = true, value_delimiter = ',')]
    pub beta_grid: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub pmax: Option<u32>,
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub field: Option<FieldArg>,
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

pub fn parse_window(s: &str) -> Result<ModeWindow, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected j,k,l,n, got {s:?}"));
    }
    let mut v = [0u32; 4];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|e| format!("bad window bound {p:?}: {e}"))?;
    }
    ModeWindow::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    value
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Config(format!("{key}: {e}")))
        })
        .collect()
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| CliError::Config(format!("{key}: {e}")))
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T, CliError> {
    T::from_str(value, true).map_err(|e| CliError::Config(format!("{key}: {e}")))
}

impl Overrides {
    /// Parses a flat `key = value` file. Blank lines and `#` comments are
    /// ignored; keys use the flag names without dashes.
    pub fn from_file_contents(text: &str) -> Result<Self, CliError> {
        let mut o = Overrides::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "L" => o.l = Some(parse_value(key, value)?),
                "Lx" => o.lx = Some(parse_value(key, value)?),
                "Ly" => o.ly = Some(parse_value(key, value)?),
                "beta" => o.beta = Some(parse_value(key, value)?),
                "mass" => o.mass = Some(parse_value(key, value)?),
                "window" => o.window = Some(parse_window(value).map_err(CliError::Config)?),
                "delta_grid" | "delta-grid" => o.delta_grid = Some(parse_list(key, value)?),
                "beta_grid" | "beta-grid" => o.beta_grid = Some(parse_list(key, value)?),
                "pmax" => o.pmax = Some(parse_value(key, value)?),
                "tolerance" => o.tolerance = Some(parse_value(key, value)?),
                "samples" => o.samples = Some(parse_value(key, value)?),
                "seed" => o.seed = Some(parse_value(key, value)?),
                "field" => o.field = Some(parse_enum(key, value)?),
                "method" => o.method = Some(parse_enum(key, value)?),
                "format" => o.format = Some(parse_enum(key, value)?),
                "threads" => o.threads = Some(parse_value(key, value)?),
                "out" => o.out = Some(PathBuf::from(value)),
                other => {
                    return Err(CliError::Config(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(o)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_file_contents(&text)
    }

    pub fn apply(&self, cfg: &mut RunConfig) {
        let g = &mut cfg.geometry;
        if let Some(v) = self.l {
            g.l = v;
        }
        if let Some(v) = self.lx {
            g.lx = v;
        }
        if let Some(v) = self.ly {
            g.ly = v;
        }
        if let Some(v) = self.beta {
            g.beta = v;
        }
        if let Some(v) = self.mass {
            g.mass = v;
        }
        if let Some(v) = self.window {
            cfg.window = v;
        }
        if let Some(v) = &self.delta_grid {
            cfg.delta_grid = v.clone();
        }
        if let Some(v) = &self.beta_grid {
            cfg.beta_grid = v.clone();
        }
        if let Some(v) = self.pmax {
            cfg.pmax = v;
        }
        if let Some(v) = self.tolerance {
            cfg.tolerance = Some(v);
        }
        if let Some(v) = self.samples {
            cfg.samples = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.field {
            cfg.field = v;
        }
        if let Some(v) = self.method {
            cfg.method = v;
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        if let Some(v) = self.threads {
            cfg.threads = Some(v);
        }
        if let Some(v) = &self.out {
            cfg.out = Some(v.clone());
        }
    }
}

/// Threads from the environment variable, if set.
pub fn threads_from_env(value: Option<&str>) -> Result<Option<usize>, CliError> {
    match value {
        None => Ok(None),
        Some(s) if s.trim().is_empty() => Ok(None),
        Some(s) => parse_value(THREADS_ENV, s.trim()).map(Some),
    }
}

/// Defaults ← file ← environment ← flags.
pub fn resolve(
    file: Option<&Path>,
    env_threads: Option<&str>,
    flags: &Overrides,
) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = file {
        Overrides::from_file(path)?.apply(&mut cfg);
    }
    if let Some(t) = threads_from_env(env_threads)? {
        cfg.threads = Some(t);
    }
    flags.apply(&mut cfg);
    cfg.validate()?;
    Ok(cfg)
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        self.geometry
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        self.window
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        if self.delta_grid.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
            return Err(CliError::Config("delta grid must be positive".into()));
        }
        if self.beta_grid.iter().any(|b| !(b.is_finite() && *b > 0.0)) {
            return Err(CliError::Config("beta grid must be positive".into()));
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(CliError::Config("tolerance must be non-negative".into()));
            }
        }
        if self.threads == Some(0) {
            return Err(CliError::Config("threads must be at least 1".into()));
        }
        if self.samples == 0 {
            return Err(CliError::Config("samples must be at least 1".into()));
        }
        Ok(())
    }

    /// Check tolerance after the optional global override.
    pub fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_parsing_and_precedence() {
        let file = Overrides::from_file_contents(
            "# slab\nL = 2\nbeta=3\nwindow = 1,1,2,2\nthreads = 4\nformat = csv\n",
        )
        .unwrap();
        let mut cfg = RunConfig::default();
        file.apply(&mut cfg);
        assert_eq!(cfg.geometry.l, 2.0);
        assert_eq!(cfg.window.lmax, 2);
        assert_eq!(cfg.threads, Some(4));
        assert_eq!(cfg.format, Format::Csv);

        if let Some(t) = threads_from_env(Some("2")).unwrap() {
            cfg.threads = Some(t);
        }
        assert_eq!(cfg.threads, Some(2));
        let flags = Overrides {
            threads: Some(8),
            l: Some(0.5),
            ..Default::default()
        };
        flags.apply(&mut cfg);
        assert_eq!(cfg.threads, Some(8));
        assert_eq!(cfg.geometry.l, 0.5);
        assert_eq!(cfg.geometry.beta, 3.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Overrides::from_file_contents("colour = red").is_err());
        assert!(Overrides::from_file_contents("L 2").is_err());
        assert!(parse_window("1,2,3").is_err());
        assert!(parse_window("1,0,1,1").is_err());
        let flags = Overrides {
            l: Some(-1.0),
            ..Default::default()
        };
        assert!(resolve(None, None, &flags).is_err());
    }
}
