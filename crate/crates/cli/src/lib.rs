//! Command-line front end: expression parsing, configuration, tabular
//! output and the subcommands that drive the `quadcurve` library.

pub mod commands;
pub mod config;
pub mod expr;
pub mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::config::{load_config, Format, RunConfig, Settings};
use crate::output::{error_json, Table};

pub use crate::expr::{parse_expr, Bindings, Expr, ParseError, UnboundVariable};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Unbound(#[from] UnboundVariable),
    #[error(transparent)]
    Core(#[from] quadcurve::Error),
    #[error("configuration: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Unbound(_) => "unbound-variable",
            CliError::Core(_) => "numerical",
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "quadcurve", version, about = "Orthogonal polynomials and interpolation on quadratic curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Interpolation nodes and Gauss weights.
    Quad(Common),
    /// Tabulate Y_{k,1}, Y_{k,2} on a grid.
    Basis {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        points: Option<String>,
        /// orthonormal or monic.
        #[arg(long)]
        normalization: Option<String>,
    },
    /// Interpolate an expression in x, y, t, eps on a curve.
    Interp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Error and coefficient decay over a sweep of M.
    Convergence {
        #[command(flatten)]
        common: Common,
        /// sqrt or essential.
        #[arg(long)]
        problem: Option<String>,
        #[arg(long)]
        f: Option<String>,
        /// Comma-separated M values.
        #[arg(long)]
        ms: Option<String>,
    },
    /// Condition numbers against n.
    Cond {
        #[command(flatten)]
        common: Common,
        /// Comma-separated pair counts.
        #[arg(long)]
        ns: Option<String>,
    },
    /// Eigenpairs of -h² u'' + V u = λ u on [-r, r].
    Schrodinger {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        h: Option<String>,
        /// Expression in t and eps.
        #[arg(long)]
        potential: Option<String>,
        #[arg(long = "domain-r")]
        domain_r: Option<String>,
        #[arg(long)]
        neigs: Option<String>,
        /// Number of eigenstates to sample.
        #[arg(long)]
        states: Option<String>,
        #[arg(long)]
        points: Option<String>,
    },
    /// Interpolate f(θ) on the arc |θ| ≤ h.
    FourierExt {
        #[command(flatten)]
        common: Common,
        /// Expression in t (the angle).
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        grid: Option<String>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Flat key = value file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// circle, parabola, hyperbola1, hyperbola2, lines or parallel.
    #[arg(long)]
    pub curve: Option<String>,
    /// legendre, chebyshevT, jacobi, laguerre, hermite or shifted-jacobi.
    #[arg(long)]
    pub weight: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Right end of the one-branch hyperbola.
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    /// csv or json.
    #[arg(long)]
    pub output: Option<String>,
    #[arg(long = "output-path", short = 'o')]
    pub output_path: Option<PathBuf>,
}

fn put(s: &mut Settings, key: &str, v: &Option<String>) {
    if let Some(v) = v {
        s.insert(key.to_string(), v.clone());
    }
}

impl Common {
    fn settings(&self) -> Settings {
        let mut s = Settings::new();
        put(&mut s, "curve", &self.curve);
        put(&mut s, "weight", &self.weight);
        put(&mut s, "alpha", &self.alpha);
        put(&mut s, "beta", &self.beta);
        put(&mut s, "a", &self.a);
        put(&mut s, "b", &self.b);
        put(&mut s, "l", &self.l);
        put(&mut s, "n", &self.n);
        put(&mut s, "eps", &self.eps);
        put(&mut s, "output", &self.output);
        put(&mut s, "output-path", &self.output_path.as_ref().map(|p| p.display().to_string()));
        s
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Quad(_) => "quad",
            Command::Basis { .. } => "basis",
            Command::Interp { .. } => "interp",
            Command::Convergence { .. } => "convergence",
            Command::Cond { .. } => "cond",
            Command::Schrodinger { .. } => "schrodinger",
            Command::FourierExt { .. } => "fourier-ext",
        }
    }

    fn parts(&self) -> (&Common, Settings) {
        let mut s = Settings::new();
        let common = match self {
            Command::Quad(c) => c,
            Command::Basis { common, points, normalization } => {
                put(&mut s, "points", points);
                put(&mut s, "normalization", normalization);
                common
            }
            Command::Interp { common, f, grid } => {
                put(&mut s, "f", f);
                put(&mut s, "grid", grid);
                common
            }
            Command::Convergence { common, problem, f, ms } => {
                put(&mut s, "problem", problem);
                put(&mut s, "f", f);
                put(&mut s, "ms", ms);
                common
            }
            Command::Cond { common, ns } => {
                put(&mut s, "ns", ns);
                common
            }
            Command::Schrodinger { common, h, potential, domain_r, neigs, states, points } => {
                put(&mut s, "h", h);
                put(&mut s, "potential", potential);
                put(&mut s, "domain-r", domain_r);
                put(&mut s, "neigs", neigs);
                put(&mut s, "states", states);
                put(&mut s, "points", points);
                common
            }
            Command::FourierExt { common, f, h, grid } => {
                put(&mut s, "f", f);
                put(&mut s, "h", h);
                put(&mut s, "grid", grid);
                common
            }
        };
        let mut all = common.settings();
        all.extend(s);
        (common, all)
    }

    /// The resolved configuration for this invocation.
    pub fn config(&self) -> Result<RunConfig, CliError> {
        let (common, flags) = self.parts();
        let file = match &common.config {
            Some(p) => load_config(p)?,
            None => Settings::new(),
        };
        RunConfig::resolve(self.name(), file, flags)
    }
}

/// Run the subcommand named in `cfg.command`.
pub fn execute(cfg: &RunConfig) -> Result<Table, CliError> {
    match cfg.command.as_str() {
        "quad" => commands::quad(cfg),
        "basis" => commands::basis(cfg),
        "interp" => commands::interp(cfg),
        "convergence" => commands::convergence(cfg),
        "cond" => commands::cond(cfg),
        "schrodinger" => commands::schrodinger(cfg),
        "fourier-ext" => commands::fourier_ext(cfg),
        other => Err(CliError::Config(format!("unknown command `{other}`"))),
    }
}

/// Parse `argv` (without the program name) and run it, returning the
/// configuration and the table.
pub fn run_args<I, S>(argv: I) -> Result<(RunConfig, Table), CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("quadcurve")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Config(e.to_string()))?;
    let cfg = cli.command.config()?;
    let table = execute(&cfg)?;
    Ok((cfg, table))
}

/// Render a table in the configured format.
pub fn render(cfg: &RunConfig, table: &Table) -> String {
    match cfg.output {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(cfg.meta()),
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Entry point for the binary. Returns the process exit status.
pub fn main_with(cli: Cli) -> i32 {
    let cfg = match cli.command.config() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let result = execute(&cfg).and_then(|t| emit(cfg.output_path.as_ref(), &render(&cfg, &t)));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if cfg.output == Format::Json {
                let _ = emit(None, &error_json(e.kind(), &e.to_string()));
            }
            1
        }
    }
}
