//! Identities of the weighted calculus, each reported as a [`CheckReport`].

use std::f64::consts::PI;

use super::energy::{mode_energy, profile_grid};
use super::profile::{BesselProfile, EvenProfile};
use super::quadrature::{power_weight_grid, DEFAULT_LEVELS, EVEN_FACTOR};
use crate::error::{domain, Error, Result};
use crate::report::CheckReport;
use crate::special::{psi, psi_fourier, psi_weighted_l2_sq, seminorm_sq, trace_constant, FracParams};
use crate::spectral::ModalVector;

/// mode_energy(ψ_{s,λ}, λ, ⌈s⌉, 𝔟) against 2 d_s λ^s.
pub fn energy_identity(s: f64, lambda: f64, tol: f64) -> Result<CheckReport> {
    let params = FracParams::new(s)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain("lambda", lambda, "lambda > 0"));
    }
    let profile = BesselProfile::new(s, lambda)?;
    let grid = profile_grid(&profile, params.b())?;
    let lhs = mode_energy(&profile, lambda, params.ceil(), params.b(), &grid)?;
    let rhs = 2.0 * params.d_s() * lambda.powf(s);
    Ok(CheckReport::equality(format!("energy(s={s},lambda={lambda})"), lhs, rhs, tol))
}

/// For ⌊s⌋ even and g = (𝔻_𝔟+1)^{⌊s⌋/2}ψ_s: ∫|y|^𝔟 g² against (s/⌈s⌉)·2d_s
/// and ∫|y|^𝔟 g'² against ((⌈s⌉−s)/⌈s⌉)·2d_s.
pub fn virial_check(s: f64, tol: f64) -> Result<(CheckReport, CheckReport)> {
    let params = FracParams::new(s)?;
    if params.floor() % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "virial formulae need an even integer part, got s = {s}"
        )));
    }
    let b = params.b();
    let m = params.floor() / 2;
    let profile = BesselProfile::new(s, 1.0)?;
    let grid = profile_grid(&profile, b)?;
    let mut samples = Vec::with_capacity(grid.len());
    for &y in grid.nodes() {
        samples.push(profile.shifted_power(m, 1.0, b, y)?);
    }
    let zero = EVEN_FACTOR * integrate_samples(grid.weights(), samples.iter().map(|p| p.0 * p.0));
    let first = EVEN_FACTOR * integrate_samples(grid.weights(), samples.iter().map(|p| p.1 * p.1));
    let ceil = params.ceil() as f64;
    let total = 2.0 * params.d_s();
    Ok((
        CheckReport::equality(format!("virial_zero(s={s})"), zero, s / ceil * total, tol),
        CheckReport::equality(format!("virial_grad(s={s})"), first, (ceil - s) / ceil * total, tol),
    ))
}

fn integrate_samples(weights: &[f64], values: impl Iterator<Item = f64>) -> f64 {
    let terms: Vec<f64> = weights.iter().zip(values).map(|(w, v)| w * v).collect();
    super::quadrature::pairwise_sum(&terms)
}

/// ‖f‖²_{H^{1;b}} ≥ m_b |f(0)|², where the energy uses λ = 1.
pub fn trace_inequality(b: f64, profile: &dyn EvenProfile, tol: f64) -> Result<CheckReport> {
    let grid = profile_grid(profile, b)?;
    let lhs = mode_energy(profile, 1.0, 1, b, &grid)?;
    let f0 = profile.value(0.0)?;
    let rhs = trace_constant(b) * f0 * f0;
    Ok(CheckReport::at_least(format!("trace_ineq(b={b})"), lhs, rhs, tol))
}

/// Equality in [`trace_inequality`] for the extremal profile ψ_{(1−b)/2}.
pub fn trace_equality(b: f64, tol: f64) -> Result<CheckReport> {
    if !(b > -1.0 && b < 1.0) {
        return Err(domain("b", b, "-1 < b < 1"));
    }
    let profile = BesselProfile::new(0.5 * (1.0 - b), 1.0)?;
    let grid = profile_grid(&profile, b)?;
    let lhs = mode_energy(&profile, 1.0, 1, b, &grid)?;
    let f0 = profile.value(0.0)?;
    let rhs = trace_constant(b) * f0 * f0;
    Ok(CheckReport::equality(format!("trace_eq(b={b})"), lhs, rhs, tol))
}

fn pair_grid(f: &dyn EvenProfile, g: &dyn EvenProfile, b: f64) -> Result<super::quadrature::WeightedGrid> {
    power_weight_grid(b, f.extent().min(g.extent()), DEFAULT_LEVELS)
}

/// (𝔻_bψ, η) against (∂ψ, ∂η) over ℝ. ψ must carry its first power
/// (𝔻_b+0)ψ, i.e. lie in H^{2;b} near the origin.
pub fn parts_check(psi: &dyn EvenProfile, eta: &dyn EvenProfile, b: f64, tol: f64) -> Result<CheckReport> {
    let grid = pair_grid(psi, eta, b)?;
    let lhs = EVEN_FACTOR
        * grid.try_integrate(|y| Ok(psi.shifted_power(1, 0.0, b, y)?.0 * eta.value(y)?))?;
    let rhs = EVEN_FACTOR * grid.try_integrate(|y| Ok(psi.derivative(y)? * eta.derivative(y)?))?;
    Ok(CheckReport::equality_abs(format!("parts(b={b})"), lhs, rhs, tol, 1e-10))
}

/// (ψ, 𝔻_bη) against (∂ψ, ∂η): the operator moved onto the smooth side,
/// so ψ only needs finite H^{1;b} energy.
pub fn parts_check_transposed(psi: &dyn EvenProfile, eta: &dyn EvenProfile, b: f64, tol: f64) -> Result<CheckReport> {
    let grid = pair_grid(psi, eta, b)?;
    let lhs = EVEN_FACTOR
        * grid.try_integrate(|y| Ok(psi.value(y)? * eta.shifted_power(1, 0.0, b, y)?.0))?;
    let rhs = EVEN_FACTOR * grid.try_integrate(|y| Ok(psi.derivative(y)? * eta.derivative(y)?))?;
    Ok(CheckReport::equality_abs(format!("parts_transposed(b={b})"), lhs, rhs, tol, 1e-10))
}

/// For s ∈ (0,1), ψ_s ∉ H^{2;𝔟}: with 𝔻_𝔟ψ_s taken pointwise on y > 0,
/// (∂ψ_s, ∂η) − (𝔻_𝔟ψ_s, η) = 2 d_s η(0), the conormal boundary term.
pub fn parts_boundary_term(s: f64, eta: &dyn EvenProfile, tol: f64) -> Result<CheckReport> {
    let params = FracParams::new(s)?;
    if params.floor() != 0 {
        return Err(domain("s", s, "0 < s < 1"));
    }
    let b = params.b();
    let psi_s = BesselProfile::new(s, 1.0)?;
    let grid = pair_grid(&psi_s, eta, b)?;
    let lhs = EVEN_FACTOR
        * grid.try_integrate(|y| {
            let d_psi = psi_s.shifted_power_pointwise(1, 0.0, y)?.0;
            Ok(psi_s.derivative(y)? * eta.derivative(y)? - d_psi * eta.value(y)?)
        })?;
    let rhs = 2.0 * params.d_s() * eta.value(0.0)?;
    Ok(CheckReport::equality_abs(format!("parts_boundary(s={s})"), lhs, rhs, tol, 1e-10))
}

/// Which Fourier-side identity [`fourier_isometry`] checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FourierNorm {
    /// (Σ_j λ_j^{σ+(1+b)/2} u_j² ∫|y|^b ψ_s(√λ_j y)² dy)^{1/2}
    /// = ‖ψ_s‖_{L^{2;b}(ℝ)} ‖u‖_{H^σ}, compared as norms.
    WeightedL2 { b: f64 },
    /// Σ_j λ_j^{σ−α} u_j² ∫|ξ|^{2α+1}|ψ̂_{s,λ_j}|² dξ
    /// = seminorm_sq(s, α+1/2) ‖u‖²_{H^σ}, compared as squares; −1/2 < α < 2s.
    Seminorm { alpha: f64 },
}

/// ∫_ℝ |y|^b ψ_s(y)² dy by quadrature.
pub fn psi_weighted_l2_quadrature(s: f64, b: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidOrder(s));
    }
    let grid = power_weight_grid(b, 40.0 + 2.0 * s, DEFAULT_LEVELS)?;
    let half = grid.try_integrate(|y| {
        let v = psi(s, y)?;
        Ok(v * v)
    })?;
    Ok(EVEN_FACTOR * half)
}

/// ∫_ℝ |ξ|^{2γ} |ψ̂_s(ξ)|² dξ by quadrature: [0,1] directly, [1,∞) after ξ = 1/x.
pub fn seminorm_quadrature(s: f64, gamma: f64) -> Result<f64> {
    if !(gamma > -0.5) || !(gamma < 2.0 * s + 0.5) {
        return Err(domain("gamma", gamma, "-1/2 < gamma < 2s + 1/2"));
    }
    let inner = power_weight_grid(2.0 * gamma, 1.0, DEFAULT_LEVELS)?.try_integrate(|xi| {
        let v = psi_fourier(s, xi)?;
        Ok(v * v)
    })?;
    // ξ^{2γ}ψ̂(ξ)² dξ = x^{4s−2γ} A² (1+x²)^{−(1+2s)} dx, A = ψ̂_s(0)
    let amp = psi_fourier(s, 0.0)?;
    let outer = power_weight_grid(4.0 * s - 2.0 * gamma, 1.0, DEFAULT_LEVELS)?
        .integrate(|x| amp * amp * (1.0 + x * x).powf(-(1.0 + 2.0 * s)));
    Ok(EVEN_FACTOR * (inner + outer))
}

/// ψ̂_s(ξ) = (2/π)^{1/2} ∫₀^∞ cos(ξy) ψ_s(y) dy by quadrature.
pub fn psi_fourier_quadrature(s: f64, xi: f64) -> Result<f64> {
    let grid = power_weight_grid(0.0, 40.0 + 2.0 * s, DEFAULT_LEVELS)?;
    let half = grid.try_integrate(|y| Ok((xi * y).cos() * psi(s, y)?))?;
    Ok((2.0 / PI).sqrt() * half)
}

/// Fourier-side isometries of 𝒫_s (any s > 0, integer orders included).
/// Kernel modes of u must vanish.
pub fn fourier_isometry(u: &ModalVector, s: f64, sigma: f64, norm: FourierNorm, tol: f64) -> Result<CheckReport> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidOrder(s));
    }
    for (index, (&lambda, &value)) in u.spectrum().eigenvalues().iter().zip(u.coeffs()).enumerate() {
        if lambda == 0.0 && value != 0.0 {
            return Err(Error::KernelMode { index, value });
        }
    }
    let unorm_sq = u.sobolev_norm_sq(sigma)?;
    let modes = u.spectrum().eigenvalues().iter().zip(u.coeffs());
    match norm {
        FourierNorm::WeightedL2 { b } => {
            let reference = power_weight_grid(b, 40.0 + 2.0 * s, DEFAULT_LEVELS)?;
            let mut acc = 0.0;
            for (&lambda, &c) in modes {
                if c == 0.0 {
                    continue;
                }
                let grid = reference.scaled(lambda);
                let r = lambda.sqrt();
                let half = grid.try_integrate(|y| {
                    let v = psi(s, r * y)?;
                    Ok(v * v)
                })?;
                acc += lambda.powf(sigma + 0.5 * (1.0 + b)) * c * c * EVEN_FACTOR * half;
            }
            let rhs = psi_weighted_l2_sq(s, b)?.sqrt() * unorm_sq.sqrt();
            Ok(CheckReport::equality(
                format!("fourier_l2(s={s},sigma={sigma},b={b})"),
                acc.sqrt(),
                rhs,
                tol,
            ))
        }
        FourierNorm::Seminorm { alpha } => {
            if !(alpha > -0.5) || !(alpha < 2.0 * s) {
                return Err(domain("alpha", alpha, "-1/2 < alpha < 2s"));
            }
            let gamma = alpha + 0.5;
            // ψ̂_{s,λ}(ξ) = λ^{−1/2} ψ̂_s(ξ/√λ) scales the seminorm by λ^{γ−1/2} = λ^α
            let unit = seminorm_quadrature(s, gamma)?;
            let mut acc = 0.0;
            for (&lambda, &c) in modes {
                if c != 0.0 {
                    acc += lambda.powf(sigma - alpha) * lambda.powf(alpha) * c * c * unit;
                }
            }
            let rhs = seminorm_sq(s, gamma)? * unorm_sq;
            Ok(CheckReport::equality(
                format!("fourier_seminorm(s={s},sigma={sigma},alpha={alpha})"),
                acc,
                rhs,
                tol,
            ))
        }
    }
}
