//! Mode energies ‖·‖²_{λ,H^{k;b}} and their sums over a spectrum.

use rayon::prelude::*;

use super::profile::{BesselProfile, EvenProfile};
use super::quadrature::{power_weight_grid, WeightedGrid, DEFAULT_LEVELS, EVEN_FACTOR};
use crate::error::{domain, Error, Result};
use crate::extension::ExtensionCurve;
use crate::spectral::ModalVector;

fn check_order(k: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::InvalidParameter("energy order k must be at least 1".into()));
    }
    Ok(())
}

fn check_grid(grid: &WeightedGrid, b: f64) -> Result<()> {
    if (grid.b() - b).abs() > 1e-15 {
        return Err(Error::InvalidParameter(format!(
            "grid weight exponent {} differs from b = {b}",
            grid.b()
        )));
    }
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(domain("lambda", lambda, "lambda >= 0"));
    }
    Ok(())
}

fn power_at(profile: &dyn EvenProfile, m: usize, lambda: f64, b: f64, y: f64, k: usize) -> Result<(f64, f64)> {
    profile.shifted_power(m, lambda, b, y).map_err(|e| match e {
        Error::MissingAnalyticPower { .. } => Error::MissingAnalyticPower { k },
        other => other,
    })
}

/// Bilinear form of ‖·‖²_{λ,H^{k;b}} over ℝ:
/// even k: ((𝔻_b+λ)^{k/2}f, (𝔻_b+λ)^{k/2}g);
/// odd k: (∂F, ∂G) + λ(F, G) with F = (𝔻_b+λ)^{(k−1)/2}f, G likewise.
pub fn mode_inner_product(
    f: &dyn EvenProfile,
    g: &dyn EvenProfile,
    lambda: f64,
    k: usize,
    b: f64,
    grid: &WeightedGrid,
) -> Result<f64> {
    check_order(k)?;
    check_grid(grid, b)?;
    check_lambda(lambda)?;
    let m = k / 2;
    let odd = k % 2 == 1;
    let half = grid.try_integrate(|y| {
        let (fv, fd) = power_at(f, m, lambda, b, y, k)?;
        let (gv, gd) = power_at(g, m, lambda, b, y, k)?;
        Ok(if odd { fd * gd + lambda * fv * gv } else { fv * gv })
    })?;
    Ok(EVEN_FACTOR * half)
}

/// ‖f‖²_{λ,H^{k;b}} over ℝ, as twice the half-line quadrature.
pub fn mode_energy(profile: &dyn EvenProfile, lambda: f64, k: usize, b: f64, grid: &WeightedGrid) -> Result<f64> {
    check_order(k)?;
    check_grid(grid, b)?;
    check_lambda(lambda)?;
    let m = k / 2;
    let odd = k % 2 == 1;
    let half = grid.try_integrate(|y| {
        let (v, d) = power_at(profile, m, lambda, b, y, k)?;
        Ok(if odd { d * d + lambda * v * v } else { v * v })
    })?;
    Ok(EVEN_FACTOR * half)
}

/// Grid reaching the profile's extent with the default level count.
pub fn profile_grid(profile: &dyn EvenProfile, b: f64) -> Result<WeightedGrid> {
    power_weight_grid(b, profile.extent(), DEFAULT_LEVELS)
}

/// [`mode_energy`] on [`profile_grid`].
pub fn mode_energy_auto(profile: &dyn EvenProfile, lambda: f64, k: usize, b: f64) -> Result<f64> {
    let grid = profile_grid(profile, b)?;
    mode_energy(profile, lambda, k, b, &grid)
}

/// Σ_j u_j² ‖ψ_{s,λ_j}‖²_{λ_j,H^{k;b}} for the extension of u. Each mode uses
/// a reference grid for λ = 1 rescaled to λ_j; kernel modes are constant and
/// carry no energy.
pub fn curve_energy_of(u: &ModalVector, s: f64, k: usize, b: f64) -> Result<f64> {
    check_order(k)?;
    let unit = BesselProfile::new(s, 1.0)?;
    let reference = power_weight_grid(b, unit.extent(), DEFAULT_LEVELS)?;
    let modes: Vec<(f64, f64)> = u
        .spectrum()
        .eigenvalues()
        .iter()
        .copied()
        .zip(u.coeffs().iter().copied())
        .collect();
    let parts: Vec<Result<f64>> = modes
        .par_iter()
        .map(|&(lambda, c)| {
            if lambda == 0.0 || c == 0.0 {
                return Ok(0.0);
            }
            let profile = BesselProfile::new(s, lambda)?;
            let grid = reference.scaled(lambda);
            Ok(c * c * mode_energy(&profile, lambda, k, b, &grid)?)
        })
        .collect();
    let mut total = 0.0;
    for p in parts {
        total += p?;
    }
    Ok(total)
}

/// ‖U‖²_{H^{k;b}} for an extension curve, from its closed-form modes.
pub fn curve_energy(curve: &ExtensionCurve, k: usize, b: f64) -> Result<f64> {
    curve_energy_of(curve.source(), curve.params().s(), k, b)
}

/// Σ_j c_j² ‖f_j‖²_{λ_j,H^{k;b}} for arbitrary per-mode profiles, each on its own grid.
pub fn profiles_energy(modes: &[(&dyn EvenProfile, f64, f64)], k: usize, b: f64) -> Result<f64> {
    let mut total = 0.0;
    for &(profile, lambda, c) in modes {
        if c != 0.0 {
            total += c * c * mode_energy_auto(profile, lambda, k, b)?;
        }
    }
    Ok(total)
}
