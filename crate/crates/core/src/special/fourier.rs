//! Closed forms tied to the unitary Fourier transform
//! f̂(ξ) = (2π)^{−1/2} ∫ e^{−iξy} f(y) dy of the profile.

use std::f64::consts::PI;

use super::gamma::{gamma, ln_gamma};
use super::params::profile_normalization;
use crate::error::{domain, Error, Result};

fn check_order(s: f64) -> Result<()> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidOrder(s));
    }
    Ok(())
}

/// ψ̂_s(ξ) = √2 Γ(s+1/2)/Γ(s) (1+ξ²)^{−(1+2s)/2}. Integer s is allowed.
pub fn psi_fourier(s: f64, xi: f64) -> Result<f64> {
    check_order(s)?;
    let amp = std::f64::consts::SQRT_2 * (ln_gamma(s + 0.5) - ln_gamma(s)).exp();
    Ok(amp * (1.0 + xi * xi).powf(-(0.5 + s)))
}

/// ∫_ℝ |ξ|^{2α} |ψ̂_s(ξ)|² dξ for −1/2 < α < 2s + 1/2.
pub fn seminorm_sq(s: f64, alpha: f64) -> Result<f64> {
    check_order(s)?;
    if !(alpha > -0.5) || !(alpha < 2.0 * s + 0.5) {
        return Err(domain("alpha", alpha, "-1/2 < alpha < 2s + 1/2"));
    }
    let log = 2.0 * (ln_gamma(s + 0.5) - ln_gamma(s)) - s.ln() - ln_gamma(2.0 * s)
        + ln_gamma(alpha + 0.5)
        + ln_gamma(2.0 * s - alpha + 0.5);
    Ok(log.exp())
}

/// ∫_ℝ |y|^b ψ_s(y)² dy for b > −1.
pub fn psi_weighted_l2_sq(s: f64, b: f64) -> Result<f64> {
    check_order(s)?;
    if !(b > -1.0) {
        return Err(domain("b", b, "b > -1"));
    }
    // ∫₀^∞ t^{μ−1} K_s(t)² dt = √π Γ(μ/2) Γ(μ/2−s) Γ(μ/2+s) / (4 Γ((1+μ)/2)), μ = b+2s+1
    let h = 0.5 * (b + 2.0 * s + 1.0);
    let c = profile_normalization(s);
    let log = ln_gamma(h) + ln_gamma(h - s) + ln_gamma(h + s) - ln_gamma(h + 0.5);
    Ok(2.0 * c * c * PI.sqrt() / 4.0 * log.exp())
}

/// Coefficients of the two closing identities at σ = s:
/// ‖𝒫_s u‖²_{L²(ℝ→H^{s+1/2})} = A_s ‖u‖²_{H^s} and
/// ⟦𝒫_s u⟧²_{H^{s+1/2}(ℝ→H)} = B_s ‖u‖²_{H^s}. Returns (A_s, B_s).
pub fn closing_coefficients(s: f64) -> Result<(f64, f64)> {
    check_order(s)?;
    let g = gamma(s + 0.5) / gamma(s);
    let a = PI.sqrt() * gamma(2.0 * s + 0.5) * g * g / (s * gamma(2.0 * s));
    let b = gamma(s + 0.5).powi(2) / gamma(2.0 * s);
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_at_half() {
        let v = psi_fourier(0.5, 0.0).unwrap();
        assert!((v - (2.0 / PI).sqrt()).abs() < 1e-15);
        let v = psi_fourier(0.5, 2.0).unwrap();
        assert!((v - (2.0 / PI).sqrt() / 5.0).abs() < 1e-15);
    }

    #[test]
    fn seminorm_values() {
        assert!((seminorm_sq(0.5, 0.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((seminorm_sq(0.5, 1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(seminorm_sq(0.5, 1.5).is_err());
        assert!(seminorm_sq(0.5, -0.5).is_err());
        assert!(seminorm_sq(1.0, 2.0).is_ok());
    }

    #[test]
    fn plancherel_consistency() {
        for &s in &[0.3, 0.5, 1.5, 2.0, 3.7] {
            let a = seminorm_sq(s, 0.0).unwrap();
            let b = psi_weighted_l2_sq(s, 0.0).unwrap();
            assert!((a / b - 1.0).abs() < 1e-13, "s={s}");
        }
        assert!((psi_weighted_l2_sq(0.5, 0.0).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn closing_coefficients_match_seminorms() {
        for &s in &[0.25, 0.5, 1.5, 2.5] {
            let (a, b) = closing_coefficients(s).unwrap();
            assert!((a / seminorm_sq(s, 0.0).unwrap() - 1.0).abs() < 1e-13);
            assert!((b / seminorm_sq(s, s + 0.5).unwrap() - 1.0).abs() < 1e-13);
        }
        let (_, b) = closing_coefficients(0.5).unwrap();
        assert!((b - 1.0).abs() < 1e-15);
    }
}
