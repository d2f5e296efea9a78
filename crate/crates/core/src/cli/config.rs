//! Run configuration: an optional JSON file overlaid by command-line flags.

use std::f64::consts::PI;
use std::path::PathBuf;

use serde::Deserialize;

use super::CliError;
use crate::spectral::{build_operator, ModalVector, OperatorDescriptor, Spectrum};

/// Curve sampling y_min..y_max with n geometric points.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct GridSpec {
    pub y_min: f64,
    pub y_max: f64,
    pub n: usize,
}

/// Everything a subcommand may need. Absent fields fall back to per-command defaults.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub op: Option<OperatorDescriptor>,
    pub u: Option<Vec<f64>>,
    pub s: Option<Vec<f64>>,
    pub lambda: Option<Vec<f64>>,
    pub sigma: Option<f64>,
    pub grid: Option<GridSpec>,
    pub checks: Option<Vec<String>>,
    pub out: Option<PathBuf>,
    pub tol: Option<f64>,
    pub negative_order: bool,
    pub nodes: Option<usize>,
    pub format: Option<String>,
    pub dump: Option<PathBuf>,
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_number(text: &str) -> Result<f64, CliError> {
    let t = text.trim();
    match t {
        "pi" => Ok(PI),
        _ => t.parse::<f64>().map_err(|_| usage(format!("not a number: {t:?}"))),
    }
}

/// Comma-separated reals; `pi` is accepted.
pub fn parse_list(text: &str) -> Result<Vec<f64>, CliError> {
    if text.trim().is_empty() {
        return Err(usage("empty number list"));
    }
    text.split(',').map(parse_number).collect()
}

/// `dirichlet:L:J`, `neumann:L:J`, `eigs:λ1,λ2,...` or an inline JSON descriptor.
pub fn parse_op(text: &str) -> Result<OperatorDescriptor, CliError> {
    let t = text.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| usage(format!("bad operator JSON: {e}")));
    }
    let parts: Vec<&str> = t.split(':').collect();
    let laplacian = |parts: &[&str]| -> Result<(f64, usize), CliError> {
        if parts.len() != 3 {
            return Err(usage(format!("expected {}:L:J, got {t:?}", parts[0])));
        }
        let modes = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("bad mode count {:?}", parts[2])))?;
        Ok((parse_number(parts[1])?, modes))
    };
    match parts[0] {
        "dirichlet" => {
            let (length, modes) = laplacian(&parts)?;
            Ok(OperatorDescriptor::DirichletLaplacian1d { length, modes })
        }
        "neumann" => {
            let (length, modes) = laplacian(&parts)?;
            Ok(OperatorDescriptor::NeumannLaplacian1d { length, modes })
        }
        "eigs" if parts.len() == 2 => Ok(OperatorDescriptor::ExplicitEigenvalues {
            values: parse_list(parts[1])?,
        }),
        _ => Err(usage(format!(
            "unknown operator {t:?}; use dirichlet:L:J, neumann:L:J, eigs:v1,v2,... or JSON"
        ))),
    }
}

/// `y_min:y_max:n`.
pub fn parse_grid(text: &str) -> Result<GridSpec, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(usage(format!("expected y_min:y_max:n, got {text:?}")));
    }
    let n = parts[2]
        .trim()
        .parse::<usize>()
        .map_err(|_| usage(format!("bad point count {:?}", parts[2])))?;
    Ok(GridSpec {
        y_min: parse_number(parts[0])?,
        y_max: parse_number(parts[1])?,
        n,
    })
}

/// Reads a JSON configuration file.
pub fn load_file(path: &std::path::Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("bad config {}: {e}", path.display())))
}

impl RunConfig {
    /// Fields set in `flags` replace those of `self`.
    pub fn overlay(self, flags: RunConfig) -> RunConfig {
        RunConfig {
            op: flags.op.or(self.op),
            u: flags.u.or(self.u),
            s: flags.s.or(self.s),
            lambda: flags.lambda.or(self.lambda),
            sigma: flags.sigma.or(self.sigma),
            grid: flags.grid.or(self.grid),
            checks: flags.checks.or(self.checks),
            out: flags.out.or(self.out),
            tol: flags.tol.or(self.tol),
            negative_order: flags.negative_order || self.negative_order,
            nodes: flags.nodes.or(self.nodes),
            format: flags.format.or(self.format),
            dump: flags.dump.or(self.dump),
        }
    }

    /// The single order s of apply/extend/minimize.
    pub fn single_s(&self) -> Result<f64, CliError> {
        match self.s.as_deref() {
            Some([s]) if s.is_finite() => Ok(*s),
            Some(_) => Err(usage("exactly one finite value of --s is required")),
            None => Err(usage("--s is required")),
        }
    }

    pub fn spectrum(&self) -> Result<std::sync::Arc<Spectrum>, CliError> {
        let desc = self.op.as_ref().ok_or_else(|| usage("--op is required"))?;
        Ok(build_operator(desc)?.spectrum)
    }

    /// The input vector, all ones when `--u` is absent.
    pub fn vector(&self, spectrum: std::sync::Arc<Spectrum>) -> Result<ModalVector, CliError> {
        let coeffs = match &self.u {
            Some(u) => {
                if u.len() != spectrum.len() {
                    return Err(usage(format!(
                        "--u has {} entries but the operator has {} modes",
                        u.len(),
                        spectrum.len()
                    )));
                }
                u.clone()
            }
            None => vec![1.0; spectrum.len()],
        };
        Ok(ModalVector::new(spectrum, coeffs)?)
    }

    /// Validated curve grid, or `None` for the default.
    pub fn curve_grid(&self) -> Result<Option<Vec<f64>>, CliError> {
        let Some(g) = self.grid else { return Ok(None) };
        if g.n < 16 {
            return Err(usage(format!("grid needs at least 16 points, got {}", g.n)));
        }
        if !(g.y_min > 0.0) || !(g.y_max > g.y_min) || !g.y_max.is_finite() {
            return Err(usage(format!("grid bounds must satisfy 0 < y_min < y_max, got {}:{}", g.y_min, g.y_max)));
        }
        Ok(Some(crate::extension::geometric_grid(g.y_min, g.y_max, g.n)?))
    }

    pub fn tol_override(&self) -> Result<Option<f64>, CliError> {
        match self.tol {
            Some(t) if !(t >= 0.0) => Err(usage(format!("tolerance must be nonnegative, got {t}"))),
            other => Ok(other),
        }
    }
}
