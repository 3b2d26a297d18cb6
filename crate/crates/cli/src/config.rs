//! Run configuration assembled from a flat `key = value` file and flags.
//!
//! Keys mirror the long flag names. Flags override the file, the file
//! overrides `QUADCURVE_PRECISION_MARGIN`, which overrides the built-in
//! quadrature margin.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use quadcurve::expansion::DEFAULT_MARGIN;
use quadcurve::{CurveKind, Interval, WeightSpec};
use serde_json::{Map, Value};

use crate::CliError;

pub const MARGIN_ENV: &str = "QUADCURVE_PRECISION_MARGIN";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Raw settings: key to value text.
pub type Settings = BTreeMap<String, String>;

/// Parse `key = value` lines. `#` starts a comment; blank lines are skipped.
pub fn parse_config(text: &str) -> Result<Settings, CliError> {
    let mut out = Settings::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", i + 1)))?;
        let k = k.trim().trim_start_matches("--");
        if k.is_empty() {
            return Err(CliError::Config(format!("line {}: empty key", i + 1)));
        }
        out.insert(k.to_string(), unquote(v.trim()).to_string());
    }
    Ok(out)
}

fn unquote(v: &str) -> &str {
    v.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(v)
}

pub fn load_config(path: &Path) -> Result<Settings, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// Validated configuration for one subcommand run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub curve: Option<String>,
    pub weight: Option<String>,
    pub n: Option<usize>,
    pub eps: Option<f64>,
    pub output: Format,
    pub output_path: Option<PathBuf>,
    pub margin: usize,
    /// Every resolved setting, including subcommand-specific ones.
    pub settings: Settings,
}

const KNOWN: &[&str] = &[
    "curve", "weight", "alpha", "beta", "a", "b", "l", "n", "eps", "output", "output-path", "margin", "f", "grid",
    "points", "normalization", "problem", "ms", "ns", "h", "potential", "domain-r", "neigs", "states",
];

impl RunConfig {
    /// Merge the file settings under the flag settings and validate.
    pub fn resolve(command: &str, file: Settings, flags: Settings) -> Result<Self, CliError> {
        let mut settings = file;
        settings.extend(flags);
        if let Some(k) = settings.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            return Err(CliError::Config(format!("unknown key `{k}`")));
        }
        let env_margin = std::env::var(MARGIN_ENV).ok();
        let margin = match settings.get("margin").or(env_margin.as_ref()) {
            Some(v) => parse_num::<usize>("margin", v)?,
            None => DEFAULT_MARGIN,
        };
        if margin == 0 {
            return Err(CliError::Config("margin must be positive".into()));
        }
        let output = match settings.get("output").map(String::as_str) {
            None | Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some(other) => return Err(CliError::Config(format!("output must be csv or json, got `{other}`"))),
        };
        let cfg = Self {
            command: command.to_string(),
            curve: settings.get("curve").cloned(),
            weight: settings.get("weight").cloned(),
            n: settings.get("n").map(|v| parse_num("n", v)).transpose()?,
            eps: settings.get("eps").map(|v| parse_num("eps", v)).transpose()?,
            output,
            output_path: settings.get("output-path").map(PathBuf::from),
            margin,
            settings,
        };
        if let Some(e) = cfg.eps {
            if !(e >= 0.0) || !e.is_finite() {
                return Err(CliError::Config(format!("eps must be finite and nonnegative, got {e}")));
            }
        }
        Ok(cfg)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.settings.get(key).map(String::as_str)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        self.get(key).map_or(Ok(default), |v| parse_num(key, v))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize, CliError> {
        self.get(key).map_or(Ok(default), |v| parse_num(key, v))
    }

    /// Comma-separated list of counts.
    pub fn list_or(&self, key: &str, default: &[usize]) -> Result<Vec<usize>, CliError> {
        match self.get(key) {
            None => Ok(default.to_vec()),
            Some(v) => v.split(',').map(|s| parse_num(key, s.trim())).collect(),
        }
    }

    /// The curve, with `l` taken from `--l` or from `eps` as `√(1 + 1/ε²)`.
    pub fn curve_kind(&self) -> Result<CurveKind, CliError> {
        let name = self.curve.as_deref().unwrap_or("circle");
        Ok(match name {
            "circle" => CurveKind::Circle,
            "parabola" => CurveKind::Parabola,
            "hyperbola2" => CurveKind::HyperbolaTwoBranch,
            "hyperbola1" => {
                let l = match (self.get("l"), self.eps) {
                    (Some(v), _) => parse_num("l", v)?,
                    (None, Some(e)) if e > 0.0 => (1.0 + 1.0 / (e * e)).sqrt(),
                    _ => return Err(CliError::Config("hyperbola1 needs --l or a positive --eps".into())),
                };
                if !(l > 1.0) {
                    return Err(CliError::Config(format!("l must exceed 1, got {l}")));
                }
                CurveKind::HyperbolaOneBranch { l }
            }
            "lines" => CurveKind::IntersectingLines,
            "parallel" => CurveKind::ParallelLines,
            other => return Err(CliError::Config(format!("unknown curve `{other}`"))),
        })
    }

    /// The weight on the curve's parameter, defaulting to Legendre on the
    /// natural parameter interval.
    pub fn weight_spec(&self, kind: CurveKind) -> Result<WeightSpec, CliError> {
        let (a0, b0) = match kind {
            CurveKind::Circle | CurveKind::HyperbolaTwoBranch | CurveKind::ParallelLines => (-1.0, 1.0),
            CurveKind::Parabola | CurveKind::IntersectingLines => (0.0, 1.0),
            CurveKind::HyperbolaOneBranch { l } => (1.0, l),
        };
        let a = self.f64_or("a", a0)?;
        let b = self.f64_or("b", b0)?;
        let alpha = self.f64_or("alpha", 0.0)?;
        let beta = self.f64_or("beta", 0.0)?;
        let name = self.weight.as_deref().unwrap_or("legendre");
        let finite = |w: WeightSpec| {
            if a < b {
                Ok(w)
            } else {
                Err(CliError::Config(format!("empty interval [{a}, {b}]")))
            }
        };
        match name {
            "legendre" => finite(WeightSpec::legendre(a, b)),
            // dθ on the circle projects to (1 - x²)^(-1/2) dx
            "chebyshevT" | "chebyshev-t" if kind == CurveKind::Circle && (a, b) == (-1.0, 1.0) => {
                Ok(WeightSpec::legendre(-1.0, 1.0))
            }
            "chebyshevT" | "chebyshev-t" => finite(WeightSpec::chebyshev_t(a, b)),
            "jacobi" => finite(WeightSpec::jacobi_on(alpha, beta, a, b)),
            "laguerre" => Ok(WeightSpec::laguerre(alpha)),
            "hermite" => Ok(WeightSpec::hermite()),
            "shifted-jacobi" => Ok(WeightSpec::shifted_jacobi(alpha, beta)),
            other => Err(CliError::Config(format!("unknown weight `{other}`"))),
        }
    }

    /// Echo for the JSON `meta` object.
    pub fn meta(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::from(self.command.as_str()));
        m.insert("output".into(), Value::from(if self.output == Format::Json { "json" } else { "csv" }));
        m.insert("margin".into(), Value::from(self.margin));
        for (k, v) in &self.settings {
            if k != "output" && k != "margin" {
                m.insert(k.clone(), Value::from(v.as_str()));
            }
        }
        Value::Object(m)
    }
}

/// A finite window of the support for tabulation.
pub fn display_window(support: Interval) -> (f64, f64) {
    let a = if support.a.is_finite() { support.a } else { -3.0 };
    let b = if support.b.is_finite() { support.b } else { a.max(0.0) + if support.a.is_finite() { 6.0 } else { 3.0 } };
    (a, b)
}

pub fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim().parse::<T>().map_err(|_| CliError::Config(format!("invalid value `{v}` for `{key}`")))
}
