//! The `flashhelp` command line: exponent sweeps, simulations and the
//! verification suites.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 a checked invariant
//! failed, 3 a resource guard refused the work.

pub mod format;
mod simulate;
mod sweep;
pub mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::prob::Pmf;
pub use format::{fmt_num, Axis, GridSpec, Units};
pub use simulate::{SAMPLE_BUDGET, SUMMARY_HEADER};
pub use sweep::{AWGN_HEADER, MAC_HEADER, MODULO_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "flashhelp", version, about = "Error exponents and simulations for noise-helped channels (nats)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// AWGN exponents over a rate grid: R,E_wsp,E_achievable,regime
    ExponentAwgn(AwgnArgs),
    /// Modulo-additive helper functions and bounds
    ExponentModulo(ModuloArgs),
    /// Gaussian MAC converse and classification over an (R1,R2) grid
    ExponentMac(MacArgs),
    /// Monte Carlo runs, one JSON line per configuration
    Simulate(SimulateArgs),
    /// Oracle-equivalence suites
    Verify(VerifyArgs),
}

/// Flags shared by the curve subcommands.
#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Output file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Units::Nats)]
    pub units: Units,
    /// Also write a gnuplot script next to the CSV (needs --out)
    #[arg(long)]
    pub emit_plotscript: bool,
    /// Worker threads for grid evaluation
    #[arg(long, default_value_t = 1)]
    #[serde(skip)]
    pub workers: usize,
    /// key=value file of default flags; explicit flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AwgnArgs {
    /// SNR P/sigma^2
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub rate_helper: f64,
    /// Flash fraction; the optimized limit is used when absent
    #[arg(long)]
    pub tau: Option<f64>,
    /// Sphere slack for an explicit tau
    #[arg(long, default_value_t = 1.0)]
    pub slack: f64,
    /// R=lo:hi:N (default 0 to 1.25 (R_h + C), 101 points)
    #[arg(long)]
    pub grid: Vec<GridSpec>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModuloArgs {
    /// Noise pmf as a comma list, or a file holding one
    #[arg(long)]
    pub pmf: String,
    #[arg(long, default_value_t = 0.0)]
    pub rate_helper: f64,
    /// Helped fraction for the overflow column (default R_h/ln K, or 0.5 when R_h = 0)
    #[arg(long)]
    pub tau: Option<f64>,
    /// Rate for the R-dependent columns when R is not the axis
    #[arg(long)]
    pub rate: Option<f64>,
    /// Threshold when theta is not the axis (default theta(R_h/tau))
    #[arg(long)]
    pub theta: Option<f64>,
    /// One of theta, R, R_h, tau as AXIS=lo:hi:N (default theta over its range)
    #[arg(long)]
    pub grid: Vec<GridSpec>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MacArgs {
    #[arg(long)]
    pub gamma1: f64,
    #[arg(long)]
    pub gamma2: f64,
    #[arg(long, default_value_t = 0.0)]
    pub rate_helper: f64,
    /// R1=lo:hi:N and R2=lo:hi:N
    #[arg(long)]
    pub grid: Vec<GridSpec>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    AwgnFlash,
    ModuloFixed,
    ModuloVariable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PowerPolicy {
    #[default]
    Report,
    Strict,
}

/// Numeric parameters accept comma lists; the records cover their product.
#[derive(Debug, Clone, Args, Serialize)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub scheme: Scheme,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads; results do not depend on it
    #[arg(long, default_value_t = 1)]
    #[serde(skip)]
    pub workers: usize,
    /// awgn-flash: SNR with unit noise variance
    #[arg(long, default_value = "1")]
    pub gamma: String,
    #[arg(long, default_value = "0.5")]
    pub rate_helper: String,
    #[arg(long, default_value = "0.1")]
    pub tau: String,
    /// awgn-flash: sphere slack
    #[arg(long, default_value = "1")]
    pub slack: String,
    /// modulo-fixed: threshold theta
    #[arg(long, default_value = "1")]
    pub theta: String,
    /// Noise pmf (modulo schemes)
    #[arg(long, default_value = "0.9,0.1")]
    pub pmf: String,
    /// Segment length t (awgn-flash, modulo-fixed) or block length n (modulo-variable)
    #[arg(long, default_value = "64")]
    pub length: String,
    /// modulo-variable: constant of the type-index overhead
    #[arg(long, default_value = "1")]
    pub overhead_const: String,
    #[arg(long, value_enum, default_value_t = PowerPolicy::Report)]
    pub power_policy: PowerPolicy,
    /// JSON-lines output; the summary CSV goes to <out>.summary.csv
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Units of the summary CSV; records are always in nats
    #[arg(long, value_enum, default_value_t = Units::Nats)]
    pub units: Units,
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Reduced grids and trial counts
    #[arg(long)]
    pub quick: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Zero the tolerance of one suite (negative test of the harness)
    #[arg(long, hide = true)]
    pub tamper: Option<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invariant(String),
    Guard(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Invariant(_) => EXIT_INVARIANT,
            CliError::Guard(_) => EXIT_GUARD,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant failed: {m}"),
            CliError::Guard(m) => write!(f, "refused: {m}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::EnumerationGuard { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T = ()> = std::result::Result<T, CliError>;

/// Reproducibility header written with every output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest<'a, C: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: Option<u64>,
    pub config: &'a C,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub started_unix: Option<u64>,
}

impl<'a, C: Serialize> RunManifest<'a, C> {
    pub fn new(command: &'static str, seed: Option<u64>, config: &'a C) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            config,
            started_unix: None,
        }
    }

    pub fn stamped(mut self) -> Self {
        self.started_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
        self
    }
}

/// Parses a pmf given inline or as a path to a file holding the list.
pub fn read_pmf(arg: &str) -> CliResult<Pmf> {
    let text = if Path::new(arg).is_file() {
        fs::read_to_string(arg)?
    } else {
        arg.to_string()
    };
    let cleaned: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join(",");
    let items: Vec<&str> = cleaned
        .split([',', ' ', '\t'])
        .filter(|s| !s.is_empty())
        .collect();
    items.join(",").parse::<Pmf>().map_err(CliError::from)
}

/// Splits a comma list of numbers.
pub fn parse_list<T: std::str::FromStr>(name: &str, s: &str) -> CliResult<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    let v: Result<Vec<T>, _> = s.split(',').map(|x| x.trim().parse::<T>()).collect();
    match v {
        Ok(v) if !v.is_empty() => Ok(v),
        Ok(_) => Err(CliError::Usage(format!("--{name} is empty"))),
        Err(e) => Err(CliError::Usage(format!("--{name} `{s}`: {e}"))),
    }
}

/// Inserts `key=value` lines of a `--config` file as flags right after the
/// subcommand, unless the same flag is already present.
fn expand_config(args: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let strs: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let pos = strs
        .iter()
        .position(|a| a == "--config")
        .map(|i| (i, strs.get(i + 1).cloned()))
        .or_else(|| {
            strs.iter()
                .position(|a| a.starts_with("--config="))
                .map(|i| (i, Some(strs[i]["--config=".len()..].to_string())))
        });
    let Some((_, Some(path))) = pos else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::Usage(format!("cannot read config file {path}: {e}")))?;
    let present = |flag: &str| {
        strs.iter()
            .any(|a| a == flag || a.starts_with(&format!("{flag}=")))
    };
    let mut extra: Vec<OsString> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("{path}:{}: expected key=value", lineno + 1))
        })?;
        let flag = format!("--{}", key.trim().replace('_', "-"));
        if present(&flag) {
            continue;
        }
        let value = value.trim();
        match value {
            "true" => extra.push(flag.into()),
            "false" => {}
            _ => {
                extra.push(flag.into());
                extra.push(value.into());
            }
        }
    }
    // after the program name and subcommand
    let mut out = args;
    let at = 2.min(out.len());
    out.splice(at..at, extra);
    Ok(out)
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            return e.code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    let res = match &cli.command {
        Command::ExponentAwgn(a) => sweep::exponent_awgn(a, stdout),
        Command::ExponentModulo(a) => sweep::exponent_modulo(a, stdout),
        Command::ExponentMac(a) => sweep::exponent_mac(a, stdout),
        Command::Simulate(a) => simulate::simulate(a, stdout, stderr),
        Command::Verify(a) => verify::verify(a, stdout),
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.code()
        }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Evaluates `f` on `0..count` with `workers` threads, preserving order.
pub(crate) fn par_map<T, F>(workers: usize, count: usize, f: F) -> CliResult<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    if workers <= 1 {
        return Ok((0..count).map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    Ok(pool.install(|| (0..count).into_par_iter().map(f).collect()))
}

/// Destination of a CSV or JSON-lines stream.
pub(crate) fn open_out<'a>(out: &Option<PathBuf>, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    Ok(match out {
        Some(p) => Box::new(std::io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(stdout),
    })
}
