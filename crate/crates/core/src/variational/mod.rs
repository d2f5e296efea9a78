//! Discrete minimization of the weighted energy and the orthogonality
//! relation of extension curves.
//!
//! The minimization uses P1 elements and so covers 0 < s < 1, where the
//! energy is a first-order form. Galerkin convergence for higher-order
//! weighted forms would need conforming elements without an established
//! discrete theory; higher orders are checked through closed forms instead.

mod fe;

use rayon::prelude::*;

pub use fe::{graded_nodes, minimize_profile, minimize_with_trace, ProfileFE, FAR_FIELD};

use crate::error::{domain, Error, Result};
use crate::report::CheckReport;
use crate::special::FracParams;
use crate::spectral::ModalVector;
use crate::weighted::quadrature::{power_weight_grid, DEFAULT_LEVELS};
use crate::weighted::{mode_inner_product, BesselProfile, EvenProfile};

/// Unit-trace discrete minima per positive mode (`None` for kernel modes).
fn unit_minima(u: &ModalVector, s: f64, nodes: usize) -> Result<Vec<Option<f64>>> {
    let eigs: Vec<f64> = u.spectrum().eigenvalues().to_vec();
    eigs.par_iter()
        .map(|&lambda| {
            if lambda == 0.0 {
                return Ok(None);
            }
            let grid = graded_nodes(lambda, nodes)?;
            Ok(Some(minimize_profile(s, lambda, &grid)?.0))
        })
        .collect()
}

/// Σ_j u_j² (discrete unit-trace minimum of mode j) against 2 d_s ‖u‖²_{H^s}.
/// Kernel modes stay constant and cost nothing. `nodes` elements per mode.
pub fn minimize_curve(u: &ModalVector, s: f64, nodes: usize, tol: f64) -> Result<CheckReport> {
    let params = FracParams::new(s)?;
    if params.ceil() != 1 {
        return Err(domain("s", s, "0 < s < 1"));
    }
    let minima = unit_minima(u, s, nodes)?;
    let lhs: f64 = minima
        .iter()
        .zip(u.coeffs())
        .map(|(m, c)| m.map_or(0.0, |e| c * c * e))
        .sum();
    let rhs = 2.0 * params.d_s() * u.sobolev_norm_sq(s)?;
    Ok(CheckReport::from_above(format!("minimize(s={s},n={nodes})"), lhs, rhs, tol))
}

/// Minimum of ‖U‖² − 4 d_s ⟨ζ, U(0)⟩ over discrete curves against
/// −2 d_s ‖ζ‖²_{H^{−s}}. Per mode the functional is t² E_j − 4 d_s ζ_j t in
/// the trace t, minimized at t = 2 d_s ζ_j / E_j; these traces are returned.
pub fn minimize_negative(zeta: &ModalVector, s: f64, nodes: usize, tol: f64) -> Result<(CheckReport, ModalVector)> {
    let params = FracParams::new(s)?;
    if params.ceil() != 1 {
        return Err(domain("s", s, "0 < s < 1"));
    }
    for (index, (&lambda, &value)) in zeta.spectrum().eigenvalues().iter().zip(zeta.coeffs()).enumerate() {
        if lambda == 0.0 && value != 0.0 {
            return Err(Error::KernelMode { index, value });
        }
    }
    let d = params.d_s();
    let minima = unit_minima(zeta, s, nodes)?;
    let mut lhs = 0.0;
    let mut traces = Vec::with_capacity(zeta.len());
    for (m, &z) in minima.iter().zip(zeta.coeffs()) {
        match m {
            Some(e) => {
                lhs -= 4.0 * d * d * z * z / e;
                traces.push(2.0 * d * z / e);
            }
            None => traces.push(0.0),
        }
    }
    let rhs = -2.0 * d * zeta.sobolev_norm_sq(-s)?;
    let report = CheckReport::from_above(format!("minimize_negative(s={s},n={nodes})"), lhs, rhs, tol);
    Ok((report, ModalVector::new(zeta.spectrum().clone(), traces)?))
}

/// (𝒫_s[u], V)_{H^{⌈s⌉;𝔟}} for V_j = v_j η, against 2 d_s Σ_j λ_j^s u_j v_j η(0).
/// ψ-side powers come from the recurrence, η-side ones from its jet, so
/// ⌈s⌉ ≤ 2 is required. An absolute tolerance of 1e−8 applies when the
/// reference value is 0.
pub fn orthogonality_check(
    u: &ModalVector,
    s: f64,
    v: &ModalVector,
    eta: &dyn EvenProfile,
    tol: f64,
) -> Result<CheckReport> {
    let params = FracParams::new(s)?;
    if params.ceil() > 2 {
        return Err(domain("s", s, "0 < s < 2"));
    }
    u.check_compatible(v)?;
    let k = params.ceil();
    let b = params.b();
    let eta0 = eta.value(0.0)?;
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for ((&lambda, &a), &c) in u.spectrum().eigenvalues().iter().zip(u.coeffs()).zip(v.coeffs()) {
        if lambda == 0.0 || a * c == 0.0 {
            continue;
        }
        let profile = BesselProfile::new(s, lambda)?;
        let grid = power_weight_grid(b, profile.extent().min(eta.extent()), DEFAULT_LEVELS)?;
        lhs += a * c * mode_inner_product(&profile, eta, lambda, k, b, &grid)?;
        rhs += 2.0 * params.d_s() * lambda.powf(s) * a * c * eta0;
    }
    Ok(CheckReport::equality_abs(format!("orthogonality(s={s})"), lhs, rhs, tol, 1e-8))
}
