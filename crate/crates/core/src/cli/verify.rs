//! The verification suite run by `fracext verify`.

use std::sync::Arc;

use rayon::prelude::*;

use super::CliError;
use crate::error::{Error, Result};
use crate::extension::{
    conormal_trace, default_curve_grid, extend, geometric_grid, holder_slope, mode_ode_residual, taylor_expand,
    taylor_remainder, commutation_check, nonexpansive_check, ConormalMethod, OdeScheme, RemainderMethod,
};
use crate::report::CheckReport;
use crate::special::{psi, FracParams};
use crate::spectral::{ModalVector, Spectrum};
use crate::variational::{minimize_curve, orthogonality_check};
use crate::weighted::{
    energy_identity, fourier_isometry, parts_boundary_term, parts_check, parts_check_transposed, trace_equality,
    trace_inequality, virial_check, BesselProfile, Bump, FourierNorm, GaussianMixture,
};

/// Check names in execution and report order, with their shipped tolerances.
pub const CHECKS: [(&str, f64); 13] = [
    ("energy", 1e-6),
    ("virial", 1e-6),
    ("dtn", 1e-4),
    ("taylor", 1e-8),
    ("ode", 1e-4),
    ("trace_ineq", 1e-6),
    ("parts", 1e-6),
    ("fourier", 1e-7),
    ("minimize", 1e-3),
    ("orthogonality", 1e-5),
    ("nonexpansive", 1e-12),
    ("commute", 1e-12),
    ("holder_slope", 0.1),
];

pub const DEFAULT_S: [f64; 6] = [0.25, 0.5, 0.75, 1.5, 2.5, 3.5];
pub const DEFAULT_LAMBDA: [f64; 4] = [0.5, 1.0, 4.0, 10.0];
/// Finite-element elements per mode for the `minimize` check.
pub const DEFAULT_NODES: usize = 4000;

/// Parameters shared by all checks of one run.
#[derive(Debug, Clone)]
pub struct Suite {
    pub s_values: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub sigma: f64,
    pub tol: Option<f64>,
    /// Test vector for the curve-level checks.
    pub u: ModalVector,
    pub grid: Option<Vec<f64>>,
    pub nodes: usize,
}

/// Resolves check names, rejecting unknown ones.
pub fn select(names: Option<&[String]>) -> std::result::Result<Vec<usize>, CliError> {
    let Some(names) = names else {
        return Ok((0..CHECKS.len()).collect());
    };
    let mut picked = Vec::new();
    for name in names {
        let Some(i) = CHECKS.iter().position(|(n, _)| n == name) else {
            let valid: Vec<&str> = CHECKS.iter().map(|(n, _)| *n).collect();
            return Err(CliError::Usage(format!(
                "unknown check {name:?}; valid checks: {}",
                valid.join(", ")
            )));
        };
        if !picked.contains(&i) {
            picked.push(i);
        }
    }
    picked.sort_unstable();
    Ok(picked)
}

fn single_mode(lambda: f64) -> Result<ModalVector> {
    ModalVector::new(Spectrum::new(vec![lambda], "single mode")?.shared(), vec![1.0])
}

impl Suite {
    fn tol(&self, index: usize) -> f64 {
        self.tol.unwrap_or(CHECKS[index].1)
    }

    fn pairs(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for &s in &self.s_values {
            for &l in &self.lambdas {
                out.push((s, l));
            }
        }
        out
    }

    fn curve_grid(&self) -> Result<Vec<f64>> {
        match &self.grid {
            Some(g) => Ok(g.clone()),
            None => default_curve_grid(self.u.spectrum(), 200),
        }
    }

    fn run_one(&self, index: usize) -> Result<Vec<CheckReport>> {
        let tol = self.tol(index);
        let mut out = Vec::new();
        match CHECKS[index].0 {
            "energy" => {
                for (s, l) in self.pairs() {
                    out.push(energy_identity(s, l, tol)?);
                }
            }
            "virial" => {
                for &s in &self.s_values {
                    if FracParams::new(s)?.floor() % 2 == 0 {
                        let (a, b) = virial_check(s, tol)?;
                        out.push(a);
                        out.push(b);
                    }
                }
            }
            "dtn" => {
                for &s in &self.s_values {
                    let params = FracParams::new(s)?;
                    let got = conormal_trace(&self.u, s, ConormalMethod::ClosedForm)?;
                    let want = self.u.apply_power(s)?;
                    let modes = self.u.spectrum().eigenvalues().iter().zip(got.coeffs()).zip(want.coeffs());
                    for ((&l, &g), &w) in modes {
                        if l > 0.0 {
                            out.push(CheckReport::equality(
                                format!("dtn(s={s},lambda={l})"),
                                g,
                                -params.d_s() * w,
                                tol,
                            ));
                        }
                    }
                }
            }
            "taylor" => {
                for (s, l) in self.pairs() {
                    let params = FracParams::new(s)?;
                    if params.floor() == 0 {
                        continue;
                    }
                    let k = params.floor();
                    let u = single_mode(l)?;
                    let y = 0.5 / l.sqrt();
                    let terms = taylor_expand(&u, s, k)?;
                    let rem = taylor_remainder(&u, s, k, y, RemainderMethod::Integral)?;
                    let poly: f64 = terms
                        .iter()
                        .enumerate()
                        .map(|(m, t)| t.coeffs()[0] * y.powi(2 * m as i32))
                        .sum();
                    out.push(CheckReport::equality(
                        format!("taylor(s={s},lambda={l},k={k})"),
                        poly + rem.coeffs()[0],
                        psi(s, l.sqrt() * y)?,
                        tol,
                    ));
                }
            }
            "ode" => {
                let ys = geometric_grid(0.2, 5.0, 12)?;
                for (s, l) in self.pairs() {
                    let mut worst: f64 = 0.0;
                    for &y in &ys {
                        worst = worst.max(mode_ode_residual(s, l, y, OdeScheme::Collapsed)?.abs());
                    }
                    out.push(CheckReport::equality_abs(
                        format!("ode(s={s},lambda={l})"),
                        worst,
                        0.0,
                        tol,
                        tol,
                    ));
                }
            }
            "trace_ineq" => {
                let mut seen: Vec<f64> = Vec::new();
                let gauss = GaussianMixture::gaussian(1.0)?;
                for &s in &self.s_values {
                    let b = FracParams::new(s)?.b();
                    if seen.contains(&b) {
                        continue;
                    }
                    seen.push(b);
                    out.push(trace_equality(b, tol)?);
                    out.push(trace_inequality(b, &gauss, tol)?);
                }
            }
            "parts" => {
                let bump = Bump::unit();
                for &s in &self.s_values {
                    let params = FracParams::new(s)?;
                    let profile = BesselProfile::new(s, 1.0)?;
                    if params.floor() >= 1 {
                        out.push(parts_check(&profile, &bump, params.b(), tol)?);
                    } else {
                        out.push(parts_check_transposed(&profile, &bump, params.b(), tol)?);
                        out.push(parts_boundary_term(s, &bump, tol)?);
                    }
                }
            }
            "fourier" => {
                for &s in &self.s_values {
                    let b = FracParams::new(s)?.b();
                    out.push(fourier_isometry(&self.u, s, self.sigma, FourierNorm::Seminorm { alpha: s }, tol)?);
                    out.push(fourier_isometry(&self.u, s, self.sigma, FourierNorm::WeightedL2 { b }, tol)?);
                }
            }
            "minimize" => {
                for &s in &self.s_values {
                    if s < 1.0 {
                        out.push(minimize_curve(&self.u, s, self.nodes, tol)?);
                    }
                }
            }
            "orthogonality" => {
                let gauss = GaussianMixture::gaussian(1.0)?;
                let vanishing = GaussianMixture::vanishing_at_origin();
                for &s in &self.s_values {
                    if FracParams::new(s)?.ceil() <= 2 {
                        out.push(orthogonality_check(&self.u, s, &self.u, &gauss, tol)?);
                        out.push(orthogonality_check(&self.u, s, &self.u, &vanishing, tol)?);
                    }
                }
            }
            "nonexpansive" => {
                let grid = self.curve_grid()?;
                for &s in &self.s_values {
                    let curve = extend(&self.u, s, &grid)?;
                    out.push(nonexpansive_check(&curve, self.sigma, tol)?);
                }
            }
            "commute" => {
                let grid = self.curve_grid()?;
                for &s in &self.s_values {
                    out.push(commutation_check(&self.u, s, 1.0, &grid, tol)?);
                }
            }
            "holder_slope" => {
                let lambda_max = self.u.spectrum().lambda_max().max(f64::MIN_POSITIVE);
                let r = lambda_max.sqrt();
                let ys: Vec<f64> = geometric_grid(1e-4, 1e-2, 9)?.iter().map(|y| y / r).collect();
                for &s in &self.s_values {
                    let slope = holder_slope(&self.u, s, &ys)?;
                    out.push(CheckReport::equality(
                        format!("holder_slope(s={s})"),
                        slope,
                        (2.0 * s).min(2.0),
                        tol,
                    ));
                }
            }
            other => return Err(Error::InvalidParameter(format!("unknown check {other}"))),
        }
        Ok(out)
    }

    /// Runs the selected checks (possibly in parallel); reports come back in
    /// check-index order regardless of completion order.
    pub fn run(&self, selected: &[usize]) -> Result<Vec<CheckReport>> {
        let groups: Vec<Result<Vec<CheckReport>>> = selected.par_iter().map(|&i| self.run_one(i)).collect();
        let mut out = Vec::new();
        for g in groups {
            out.extend(g?);
        }
        Ok(out)
    }
}

/// The suite's test vector: all ones on the given spectrum.
pub fn unit_vector(spectrum: Arc<Spectrum>) -> ModalVector {
    let n = spectrum.len();
    ModalVector::new(spectrum, vec![1.0; n]).expect("length matches")
}
