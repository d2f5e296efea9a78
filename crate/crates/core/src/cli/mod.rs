//! Command-line front end of the `fracext` binary.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or
//! configuration error, 3 domain error from the numerics.

pub mod config;
pub mod verify;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::{parse_grid, parse_list, parse_op, GridSpec, RunConfig};
pub use verify::{Suite, CHECKS, DEFAULT_LAMBDA, DEFAULT_NODES, DEFAULT_S};

use crate::error::Error;
use crate::extension::{default_curve_grid, extend, extend_negative};
use crate::report::CheckReport;
use crate::spectral::Spectrum;
use crate::variational::{graded_nodes, minimize_curve, minimize_negative, minimize_profile};

/// Failure of a command, mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "fracext", version, about = "Extension curves and identity checks for fractional operator powers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write L^s u and the norms ‖u‖_{H^s}, ‖L^s u‖_{H^-s} as JSON.
    Apply(Flags),
    /// Sample the extension curve and write it as CSV (or JSON).
    Extend(Flags),
    /// Run identity checks; writes one JSON report per line.
    Verify(Flags),
    /// Finite-element minimization of the curve energy (0 < s < 1).
    Minimize(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// dirichlet:L:J, neumann:L:J, eigs:v1,v2,... or a JSON descriptor.
    #[arg(long)]
    op: Option<String>,
    /// Modal coefficients, comma separated (default: all ones).
    #[arg(long)]
    u: Option<String>,
    /// Order s; verify accepts a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Eigenvalues for the per-mode checks of verify, comma separated.
    #[arg(long)]
    lambda: Option<String>,
    /// Sobolev index σ of norms (default 0).
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    /// Curve grid y_min:y_max:n.
    #[arg(long)]
    grid: Option<String>,
    /// Checks to run, comma separated.
    #[arg(long)]
    checks: Option<String>,
    /// Output path (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON configuration file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Tolerance applied to every check instead of the shipped ones.
    #[arg(long)]
    tol: Option<f64>,
    /// Treat --u as ζ and use the negative-order transform.
    #[arg(long)]
    negative_order: bool,
    /// Finite-element elements per mode.
    #[arg(long)]
    nodes: Option<usize>,
    /// csv or json (extend only).
    #[arg(long)]
    format: Option<String>,
    /// CSV dump of discrete and closed-form minimizers (minimize only).
    #[arg(long)]
    dump: Option<PathBuf>,
}

impl Flags {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(path) => config::load_file(path)?,
            None => RunConfig::default(),
        };
        let flags = RunConfig {
            op: self.op.as_deref().map(parse_op).transpose()?,
            u: self.u.as_deref().map(parse_list).transpose()?,
            s: self.s.as_deref().map(parse_list).transpose()?,
            lambda: self.lambda.as_deref().map(parse_list).transpose()?,
            sigma: self.sigma,
            grid: self.grid.as_deref().map(parse_grid).transpose()?,
            checks: self
                .checks
                .map(|c| c.split(',').map(|x| x.trim().to_string()).collect()),
            out: self.out,
            tol: self.tol,
            negative_order: self.negative_order,
            nodes: self.nodes,
            format: self.format,
            dump: self.dump,
        };
        Ok(base.overlay(flags))
    }
}

/// Sizes the global thread pool from FRACEXT_THREADS, if set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(text) = std::env::var("FRACEXT_THREADS") else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Usage(format!("FRACEXT_THREADS must be a positive integer, got {text:?}")))?;
    // a pool may already exist when called twice in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
        }
    }
}

#[derive(Serialize)]
struct ApplyOutput<'a> {
    s: f64,
    eigenvalues: &'a [f64],
    input: &'a [f64],
    output: &'a [f64],
    norm_u_hs: f64,
    norm_output_h_minus_s: f64,
}

fn cmd_apply(cfg: &RunConfig) -> Result<i32, CliError> {
    let s = cfg.single_s()?;
    let u = cfg.vector(cfg.spectrum()?)?;
    let out = u.apply_power(s)?;
    let view = ApplyOutput {
        s,
        eigenvalues: u.spectrum().eigenvalues(),
        input: u.coeffs(),
        output: out.coeffs(),
        norm_u_hs: u.sobolev_norm(s)?,
        norm_output_h_minus_s: out.sobolev_norm(-s)?,
    };
    let text = serde_json::to_string(&view).expect("output serializes") + "\n";
    write_output(cfg.out.as_ref(), &text)?;
    Ok(0)
}

fn cmd_extend(cfg: &RunConfig) -> Result<i32, CliError> {
    let s = cfg.single_s()?;
    let u = cfg.vector(cfg.spectrum()?)?;
    let grid = match cfg.curve_grid()? {
        Some(g) => g,
        None => default_curve_grid(u.spectrum(), 200)?,
    };
    let curve = if cfg.negative_order {
        extend_negative(&u, s, &grid)?
    } else {
        extend(&u, s, &grid)?
    };
    let json = match cfg.format.as_deref() {
        None => cfg.out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "json")),
        Some("csv") => false,
        Some("json") => true,
        Some(other) => return Err(CliError::Usage(format!("unknown format {other:?}; use csv or json"))),
    };
    let text = if json { curve.to_json() + "\n" } else { curve.to_csv() };
    write_output(cfg.out.as_ref(), &text)?;
    Ok(0)
}

fn report_lines(reports: &[CheckReport]) -> String {
    reports.iter().map(|r| r.to_json_line() + "\n").collect()
}

fn summarize(reports: &[CheckReport]) -> i32 {
    let mut err = std::io::stderr().lock();
    for r in reports {
        let _ = writeln!(err, "{}", r.summary_line());
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    let _ = writeln!(err, "summary: {} passed, {} failed", reports.len() - failed, failed);
    i32::from(failed > 0)
}

fn cmd_verify(cfg: &RunConfig) -> Result<i32, CliError> {
    let selected = verify::select(cfg.checks.as_deref())?;
    let s_values = cfg.s.clone().unwrap_or_else(|| DEFAULT_S.to_vec());
    let lambdas = cfg.lambda.clone().unwrap_or_else(|| DEFAULT_LAMBDA.to_vec());
    if s_values.is_empty() || lambdas.is_empty() {
        return Err(CliError::Usage("--s and --lambda lists must not be empty".into()));
    }
    let spectrum = match &cfg.op {
        Some(_) => cfg.spectrum()?,
        None => Spectrum::new(lambdas.clone(), "verify eigenvalues")?.shared(),
    };
    let u = match &cfg.u {
        Some(_) => cfg.vector(spectrum)?,
        None => verify::unit_vector(spectrum),
    };
    let suite = Suite {
        s_values,
        lambdas,
        sigma: cfg.sigma.unwrap_or(0.0),
        tol: cfg.tol_override()?,
        u,
        grid: cfg.curve_grid()?,
        nodes: cfg.nodes.unwrap_or(DEFAULT_NODES),
    };
    let reports = suite.run(&selected)?;
    write_output(cfg.out.as_ref(), &report_lines(&reports))?;
    Ok(summarize(&reports))
}

fn cmd_minimize(cfg: &RunConfig) -> Result<i32, CliError> {
    let s = cfg.single_s()?;
    let u = cfg.vector(cfg.spectrum()?)?;
    let nodes = cfg.nodes.unwrap_or(DEFAULT_NODES);
    let tol = cfg.tol_override()?.unwrap_or(1e-3);
    let mut reports = Vec::new();
    if cfg.negative_order {
        let (report, traces) = minimize_negative(&u, s, nodes, tol)?;
        let want = u.apply_power(-s)?;
        reports.push(report);
        for (j, (t, w)) in traces.coeffs().iter().zip(want.coeffs()).enumerate() {
            reports.push(CheckReport::equality(format!("negative_trace(mode={})", j + 1), *t, *w, tol));
        }
    } else {
        reports.push(minimize_curve(&u, s, nodes, tol)?);
    }
    if let Some(path) = &cfg.dump {
        let mut text = String::new();
        for (j, &lambda) in u.spectrum().eigenvalues().iter().enumerate() {
            if lambda == 0.0 {
                continue;
            }
            let (_, profile) = minimize_profile(s, lambda, &graded_nodes(lambda, nodes)?)?;
            text.push_str(&format!("# mode={} lambda={lambda:.16e}\n", j + 1));
            text.push_str(&profile.to_csv(s)?);
        }
        write_output(Some(path), &text)?;
    }
    write_output(cfg.out.as_ref(), &report_lines(&reports))?;
    Ok(summarize(&reports))
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    configure_threads()?;
    match command {
        Command::Apply(f) => cmd_apply(&f.into_config()?),
        Command::Extend(f) => cmd_extend(&f.into_config()?),
        Command::Verify(f) => cmd_verify(&f.into_config()?),
        Command::Minimize(f) => cmd_minimize(&f.into_config()?),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
