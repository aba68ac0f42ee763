//! Command-line front end for the `starmeans` toolkit.
//!
//! Exit codes: 0 when every check passes, 1 when any inequality is
//! violated, 2 on configuration, usage or output errors.

pub mod commands;
pub mod config;
pub mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use starmeans::report::{fmt_f64, write_reports_csv, write_reports_json};
use starmeans::sweep::write_sweep_csv;
use starmeans::VerificationReport;

use crate::commands::StarSelector;
use crate::config::{Format, RunConfig};

pub const THREADS_ENV: &str = "STARMEANS_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("computation failed: {0}")]
    Numeric(String),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub(crate) fn output(e: impl std::fmt::Display) -> Self {
        CliError::Output(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "starmeans", version, about = "Integral means and star functions of Janowski-type classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub overrides: Overrides,
    /// Print the effective configuration as JSON and exit.
    #[arg(long, global = true)]
    pub print_config: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient tables of L_n, L_{n-1} and the majorant series.
    Series,
    /// Run every check over the grid; exit 1 on any violation.
    Verify {
        /// Add this offset to the coefficient a_2 of every grid member.
        #[arg(long, allow_negative_numbers = true)]
        perturb: Option<f64>,
    },
    /// Star functions of the selected function on [0, pi].
    Star {
        #[arg(long, value_enum, default_value = "derivative")]
        function: StarSelector,
    },
    /// Integral-mean margins over the parameter grid.
    Sweep,
    /// Taylor coefficients of seeded random members.
    Sample,
}

/// Flags that override fields of the configuration file.
#[derive(Debug, Default, Args)]
pub struct Overrides {
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,
    /// Starting series order N.
    #[arg(long, global = true, value_name = "N")]
    pub order: Option<usize>,
    /// Circle grid size M.
    #[arg(long, global = true, value_name = "M")]
    pub grid: Option<usize>,
    #[arg(long, global = true, value_delimiter = ',', value_name = "LIST")]
    pub radii: Option<Vec<f64>>,
    #[arg(long, global = true, value_name = "K")]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    #[arg(long, global = true, value_delimiter = ',', value_name = "LIST")]
    pub alphas: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',', value_name = "LIST")]
    pub ns: Option<Vec<u32>>,
    #[arg(long = "a", global = true, value_delimiter = ',', value_name = "LIST", allow_hyphen_values = true)]
    pub a: Option<Vec<f64>>,
    #[arg(long = "b", global = true, value_delimiter = ',', value_name = "LIST", allow_hyphen_values = true)]
    pub b: Option<Vec<f64>>,
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Accept radii above 0.95 (the series order is raised as needed).
    #[arg(long, global = true)]
    pub allow_high_r: bool,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut RunConfig) {
        fn set<T: Clone>(field: &mut T, value: &Option<T>) {
            if let Some(v) = value {
                *field = v.clone();
            }
        }
        set(&mut cfg.seed, &self.seed);
        set(&mut cfg.order, &self.order);
        set(&mut cfg.grid, &self.grid);
        set(&mut cfg.radii, &self.radii);
        set(&mut cfg.samples, &self.samples);
        set(&mut cfg.degree, &self.degree);
        set(&mut cfg.alphas, &self.alphas);
        set(&mut cfg.ns, &self.ns);
        set(&mut cfg.a, &self.a);
        set(&mut cfg.b, &self.b);
        set(&mut cfg.format, &self.format);
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        if self.allow_high_r {
            cfg.allow_high_r = true;
        }
    }
}

/// Configuration file (if any) with command-line overrides applied.
pub fn effective_config(overrides: &Overrides) -> Result<RunConfig, CliError> {
    let mut cfg = match &overrides.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    overrides.apply(&mut cfg);
    Ok(cfg)
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let n: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Config(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Config(e.to_string()))
}

/// Result of a subcommand: the rendered output and any failed checks.
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    fn data(bytes: Vec<u8>) -> Self {
        Self { bytes, checks: 0, failures: Vec::new() }
    }
}

fn describe(r: &VerificationReport) -> String {
    let mut s = format!("{} r={} phi={}", r.check_name, r.r, r.phi);
    if let Some(p) = &r.params {
        s.push_str(&format!(" alpha={} n={} a={} b={}", p.alpha, p.n, p.a, p.b));
    }
    s.push_str(&format!(
        " seed={} lhs={} rhs={} margin={}",
        r.seed,
        fmt_f64(r.lhs),
        fmt_f64(r.rhs),
        fmt_f64(r.margin)
    ));
    if let Some(t) = r.witness_theta {
        s.push_str(&format!(" witness_theta={}", fmt_f64(t)));
    }
    s
}

/// Runs one subcommand against a fully resolved configuration.
pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut bytes = Vec::new();
    match command {
        Command::Series => commands::cmd_series(cfg)?.write(&mut bytes, cfg.format)?,
        Command::Sample => commands::cmd_sample(cfg)?.write(&mut bytes, cfg.format)?,
        Command::Star { function } => commands::cmd_star(cfg, *function)?.write(&mut bytes, cfg.format)?,
        Command::Sweep => {
            let rows = commands::cmd_sweep(cfg)?;
            match cfg.format {
                Format::Csv => write_sweep_csv(&mut bytes, &rows).map_err(CliError::output)?,
                Format::Json => {
                    serde_json::to_writer_pretty(&mut bytes, &rows).map_err(CliError::output)?;
                    bytes.push(b'\n');
                }
            }
            let failures = rows
                .iter()
                .filter(|r| !r.pass)
                .map(|r| {
                    format!(
                        "{} {} r={} phi={} alpha={} n={} a={} b={} seed={} margin={}",
                        r.check, r.member, r.r, r.phi, r.alpha, r.n, r.a, r.b, r.seed, fmt_f64(r.margin)
                    )
                })
                .collect();
            return Ok(Outcome { bytes, checks: rows.len(), failures });
        }
        Command::Verify { perturb } => {
            let reports = commands::cmd_verify(cfg, *perturb)?;
            match cfg.format {
                Format::Csv => write_reports_csv(&mut bytes, &reports),
                Format::Json => write_reports_json(&mut bytes, &reports),
            }
            .map_err(CliError::output)?;
            let failures = reports.iter().filter(|r| !r.pass).map(describe).collect();
            return Ok(Outcome { bytes, checks: reports.len(), failures });
        }
    }
    Ok(Outcome::data(bytes))
}

fn emit(cfg: &RunConfig, bytes: &[u8]) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            w.write_all(bytes).and_then(|_| w.flush()).map_err(CliError::output)
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(CliError::output)
        }
    }
}

fn run_parsed(cli: Cli) -> Result<ExitCode, CliError> {
    let cfg = effective_config(&cli.overrides)?;
    if cli.print_config {
        let mut text = serde_json::to_vec_pretty(&cfg).map_err(CliError::output)?;
        text.push(b'\n');
        emit(&RunConfig { out: None, ..cfg }, &text)?;
        return Ok(ExitCode::SUCCESS);
    }
    let Some(command) = cli.command else {
        return Err(CliError::Config("no subcommand given (see --help)".into()));
    };
    let outcome = thread_pool()?.install(|| execute(&command, &cfg))?;
    emit(&cfg, &outcome.bytes)?;
    if outcome.failures.is_empty() {
        return Ok(ExitCode::SUCCESS);
    }
    let target = cfg.out.as_ref().map_or_else(|| "stdout".to_string(), |p| p.display().to_string());
    eprintln!("{} of {} checks failed; report written to {target}", outcome.failures.len(), outcome.checks);
    eprintln!("first failure: {}", outcome.failures[0]);
    Ok(ExitCode::from(1))
}

/// Parses `args` and runs the selected subcommand.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run_parsed(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
