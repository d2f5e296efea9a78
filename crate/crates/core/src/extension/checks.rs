use super::curve::{extend, ExtensionCurve};
use crate::error::Result;
use crate::report::CheckReport;
use crate::spectral::ModalVector;

/// max_i ‖𝒫_s[u](y_i)‖_{H^σ} ≤ ‖u‖_{H^σ}, with relative `slack`.
pub fn nonexpansive_check(curve: &ExtensionCurve, sigma: f64, slack: f64) -> Result<CheckReport> {
    let bound = curve.source().sobolev_norm(sigma)?;
    let mut worst: f64 = 0.0;
    for i in 0..curve.grid().len() {
        worst = worst.max(curve.column(i).sobolev_norm(sigma)?);
    }
    Ok(CheckReport::at_least(
        format!("nonexpansive(s={},sigma={sigma})", curve.params().s()),
        bound,
        worst,
        slack,
    ))
}

/// 𝒫_s[ℒ^σ u] against ℒ^σ 𝒫_s[u] column by column. `lhs` is the largest
/// entrywise difference, checked against `tol` times the largest entry.
pub fn commutation_check(u: &ModalVector, s: f64, sigma: f64, grid: &[f64], tol: f64) -> Result<CheckReport> {
    let a = extend(&u.apply_power(sigma)?, s, grid)?;
    let b = extend(u, s, grid)?;
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..grid.len() {
        let lhs = a.column(i);
        let rhs = b.column(i).apply_power(sigma)?;
        for (x, y) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            diff = diff.max((x - y).abs());
            scale = scale.max(y.abs());
        }
    }
    Ok(CheckReport::equality_abs(
        format!("commute(s={s},sigma={sigma})"),
        diff,
        0.0,
        tol,
        tol * scale.max(f64::MIN_POSITIVE),
    ))
}
