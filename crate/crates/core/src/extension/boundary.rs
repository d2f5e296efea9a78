use std::sync::Arc;

use super::curve::check_grid;
use crate::error::{Error, Result};
use crate::numdiff::{default_step, extrapolate_to_zero, first, profile_exponents};
use crate::special::{binomial, psi, psi_lambda_deriv, FracParams};
use crate::spectral::{ModalVector, Spectrum};
use crate::weighted::quadrature::power_weight_grid;

/// How the conormal limit is sampled before extrapolation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConormalMethod {
    /// y^𝔟∂_y(𝔻_𝔟+λ)^{⌊s⌋}ψ_{s,λ} = −d_s λ^s ψ_{⌈s⌉−s}(√λ y).
    #[default]
    ClosedForm,
    /// y^𝔟 times a finite-difference derivative of λ^{⌊s⌋}(d_s/d_{s−⌊s⌋})ψ_{s−⌊s⌋,λ}.
    FiniteDifference,
}

/// lim_{y→0} y^𝔟 ∂_y (𝔻_𝔟+ℒ)^{⌊s⌋} 𝒫_s[u](y), extrapolated per mode from
/// y₀ = 0.01/√λ_max, y₀/2, y₀/4. Should equal −d_s ℒ^s u.
pub fn conormal_trace(u: &ModalVector, s: f64, method: ConormalMethod) -> Result<ModalVector> {
    let params = FracParams::new(s)?;
    let spectrum = u.spectrum();
    let lambda_max = spectrum.lambda_max();
    if lambda_max == 0.0 {
        return Ok(ModalVector::zeros(spectrum.clone()));
    }
    let y0 = 0.01 / lambda_max.sqrt();
    let ys = [y0, 0.5 * y0, 0.25 * y0];
    let dual = params.ceil() as f64 - s;
    let exponents = profile_exponents(dual, 2);
    let frac = params.frac();
    let b = params.b();
    let n = params.floor();
    let ratio = params.recurrence_ratio(n)?;
    let mut out = Vec::with_capacity(spectrum.len());
    for (&lambda, &c) in spectrum.eigenvalues().iter().zip(u.coeffs()) {
        if lambda == 0.0 || c == 0.0 {
            out.push(0.0);
            continue;
        }
        let r = lambda.sqrt();
        let mut samples = [0.0; 3];
        for (slot, &y) in samples.iter_mut().zip(&ys) {
            *slot = match method {
                ConormalMethod::ClosedForm => -params.d_s() * lambda.powf(s) * psi(dual, r * y)? * c,
                ConormalMethod::FiniteDifference => {
                    let scale = lambda.powi(n as i32) * ratio;
                    let f = |t: f64| scale * psi(frac, r * t).unwrap_or(f64::NAN);
                    let h = default_step(y).min(0.125 * y);
                    y.powf(b) * first(&f, y, h) * c
                }
            };
        }
        out.push(extrapolate_to_zero(&ys, &samples, &exponents)?);
    }
    ModalVector::new(spectrum.clone(), out)
}

fn check_derivative_order(s: f64, k: usize) -> Result<()> {
    let max = (2.0 * s).floor() as usize;
    if k == 0 || k > max {
        return Err(Error::DerivativeOrder { order: k, s, max });
    }
    Ok(())
}

/// ∂_y^k 𝒫_s[u] at y = 0: zero for odd k, κ_{s,k/2} ℒ^{k/2} u for even k.
pub fn derivative_at_origin(u: &ModalVector, s: f64, k: usize) -> Result<ModalVector> {
    let params = FracParams::new(s)?;
    check_derivative_order(s, k)?;
    if k % 2 == 1 {
        return Ok(ModalVector::zeros(u.spectrum().clone()));
    }
    let m = k / 2;
    let kappa = params.kappa(m)?;
    let powered = u.apply_power(m as f64)?;
    let coeffs = powered.coeffs().iter().map(|v| kappa * v).collect();
    ModalVector::new(u.spectrum().clone(), coeffs)
}

/// Samples of ∂_y^k 𝒫_s[u] per mode, for 1 ≤ k ≤ ⌊2s⌋.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeCurve {
    k: usize,
    grid: Vec<f64>,
    values: Vec<Vec<f64>>,
    spectrum: Arc<Spectrum>,
}

impl DerivativeCurve {
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn mode(&self, j: usize) -> &[f64] {
        &self.values[j]
    }

    pub fn column(&self, i: usize) -> ModalVector {
        let coeffs = self.values.iter().map(|row| row[i]).collect();
        ModalVector::new(self.spectrum.clone(), coeffs).expect("column matches spectrum")
    }
}

/// ∂_y^k 𝒫_s[u](y_i) assembled from the lower-order profiles; y = 0 is
/// allowed and uses [`derivative_at_origin`].
pub fn derivative_curve(u: &ModalVector, s: f64, k: usize, grid: &[f64]) -> Result<DerivativeCurve> {
    FracParams::new(s)?;
    check_derivative_order(s, k)?;
    check_grid(grid)?;
    let at_origin = if grid[0] == 0.0 {
        Some(derivative_at_origin(u, s, k)?)
    } else {
        None
    };
    let mut values = Vec::with_capacity(u.len());
    for (j, (&lambda, &c)) in u.spectrum().eigenvalues().iter().zip(u.coeffs()).enumerate() {
        let mut row = Vec::with_capacity(grid.len());
        for &y in grid {
            let v = if lambda == 0.0 || c == 0.0 {
                0.0
            } else if y == 0.0 {
                at_origin.as_ref().unwrap().coeffs()[j]
            } else {
                c * psi_lambda_deriv(s, lambda, y, k)?
            };
            row.push(v);
        }
        values.push(row);
    }
    Ok(DerivativeCurve {
        k,
        grid: grid.to_vec(),
        values,
        spectrum: u.spectrum().clone(),
    })
}

fn check_taylor(params: &FracParams, k: usize) -> Result<()> {
    if params.s() < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "Taylor expansion needs s > 1, got s = {}",
            params.s()
        )));
    }
    if k == 0 || k > params.floor() {
        return Err(Error::InvalidParameter(format!(
            "Taylor order k = {k} must lie in 1..={}",
            params.floor()
        )));
    }
    Ok(())
}

/// T_0 = u and T_m = κ_{s,m}/(2m)!·ℒ^m u, so that
/// 𝒫_s[u](y) = Σ_{m≤k} T_m y^{2m} + o(y^{2k}).
pub fn taylor_expand(u: &ModalVector, s: f64, k: usize) -> Result<Vec<ModalVector>> {
    let params = FracParams::new(s)?;
    check_taylor(&params, k)?;
    let mut out = vec![u.clone()];
    for m in 1..=k {
        let t = params.taylor_coeff(m)?;
        let powered = u.apply_power(m as f64)?;
        let coeffs = powered.coeffs().iter().map(|v| t * v).collect();
        out.push(ModalVector::new(u.spectrum().clone(), coeffs)?);
    }
    Ok(out)
}

/// Evaluation of the Taylor remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RemainderMethod {
    /// Integral form ∫_0^x (x−t)^{2k−1}/(2k−1)!·(ψ^{(2k)}(t) − ψ^{(2k)}(0)) dt,
    /// which keeps full relative accuracy for small x.
    #[default]
    Integral,
    /// ψ_s(x) − Σ T_m x^{2m}; loses all digits once the remainder nears 1e−16.
    Direct,
}

const REMAINDER_LEVELS: usize = 60;

fn unit_remainder(params: &FracParams, k: usize, x: f64, method: RemainderMethod) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let s = params.s();
    match method {
        RemainderMethod::Direct => {
            let mut poly = 0.0;
            for m in (0..=k).rev() {
                poly = poly * x * x + params.taylor_coeff(m)?;
            }
            Ok(psi(s, x)? - poly)
        }
        RemainderMethod::Integral => {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut constant = -params.kappa(k)?;
            for l in 0..=k {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                let c = sign * binomial(k, l) * params.gamma_coeff(l)?;
                constant += c;
                coeffs.push(c);
            }
            let grid = power_weight_grid(0.0, x, REMAINDER_LEVELS)?;
            let kernel_norm = crate::special::factorial(2 * k - 1);
            grid.try_integrate(|t| {
                let mut delta = constant;
                for (l, c) in coeffs.iter().enumerate() {
                    delta += c * (psi(s - l as f64, t)? - 1.0);
                }
                Ok((x - t).powi(2 * k as i32 - 1) / kernel_norm * delta)
            })
        }
    }
}

/// 𝒫_s[u](y) − Σ_{m≤k} T_m y^{2m} per mode.
pub fn taylor_remainder(u: &ModalVector, s: f64, k: usize, y: f64, method: RemainderMethod) -> Result<ModalVector> {
    let params = FracParams::new(s)?;
    check_taylor(&params, k)?;
    if !(y >= 0.0) || !y.is_finite() {
        return Err(crate::error::domain("y", y, "y >= 0"));
    }
    let mut out = Vec::with_capacity(u.len());
    for (&lambda, &c) in u.spectrum().eigenvalues().iter().zip(u.coeffs()) {
        if lambda == 0.0 || c == 0.0 {
            out.push(0.0);
            continue;
        }
        out.push(c * unit_remainder(&params, k, lambda.sqrt() * y, method)?);
    }
    ModalVector::new(u.spectrum().clone(), out)
}
