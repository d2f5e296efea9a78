use super::curve::extend;
use crate::error::{Error, Result};
use crate::numdiff::{operator_step, shifted_operator};
use crate::report::CheckReport;
use crate::special::{psi, psi_deriv, FracParams};
use crate::spectral::ModalVector;

/// Step of the nested scheme. Each nesting level multiplies roundoff by
/// about h^{−2}, so the default y-relative step is far too small here.
pub const NESTED_STEP: f64 = 0.05;

/// How (𝔻_𝔟+λ)^{⌈s⌉} is applied to ψ_{s,λ}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OdeScheme {
    /// Recurrence for the first ⌊s⌋ factors, finite differences for the last.
    #[default]
    Collapsed,
    /// Recurrence, then the last factor from closed-form ψ', ψ''.
    Analytic,
    /// ⌈s⌉ nested finite-difference applications with step [`NESTED_STEP`];
    /// usable for ⌈s⌉ ≤ 2 only, the noise grows like h^{−2⌈s⌉}.
    Nested,
}

fn nested(s: f64, lambda: f64, b: f64, level: usize, t: f64, h: f64) -> f64 {
    let r = lambda.sqrt();
    if level == 0 {
        return psi(s, r * t).unwrap_or(f64::NAN);
    }
    let f = |z: f64| nested(s, lambda, b, level - 1, z, h);
    shifted_operator(&f, t, b, lambda, h).unwrap_or(f64::NAN)
}

/// ((𝔻_𝔟+λ)^{⌈s⌉} ψ_{s,λ})(y) for y > 0; zero in exact arithmetic.
pub fn mode_ode_residual(s: f64, lambda: f64, y: f64, scheme: OdeScheme) -> Result<f64> {
    let params = FracParams::new(s)?;
    if !(lambda > 0.0) {
        return Err(crate::error::domain("lambda", lambda, "lambda > 0"));
    }
    let b = params.b();
    let n = params.floor();
    let frac = params.frac();
    let factor = lambda.powi(n as i32) * params.recurrence_ratio(n)?;
    let r = lambda.sqrt();
    match scheme {
        OdeScheme::Collapsed => {
            // (𝔻_𝔟+λ)[g(√λ·)](y) = λ[(𝔻_𝔟+1)g](√λy): difference on unit scale
            let f = |x: f64| psi(frac, x).unwrap_or(f64::NAN);
            let x = r * y;
            Ok(factor * lambda * shifted_operator(&f, x, b, 1.0, operator_step(x))?)
        }
        OdeScheme::Analytic => {
            let x = r * y;
            if !(x > 0.0) {
                return Err(crate::error::domain("y", y, "y > 0"));
            }
            let inner = -psi_deriv(frac, x, 2)? - b / x * psi_deriv(frac, x, 1)? + psi(frac, x)?;
            Ok(factor * lambda * inner)
        }
        OdeScheme::Nested => {
            let levels = params.ceil();
            let min = 2.0 * NESTED_STEP * levels as f64;
            if y <= min {
                return Err(Error::StencilTooWide { y, min });
            }
            Ok(nested(s, lambda, b, levels, y, NESTED_STEP))
        }
    }
}

/// ‖(𝔻_𝔟+ℒ)^{⌈s⌉} 𝒫_s[u](y)‖_𝓗. Kernel modes are constant and contribute 0.
pub fn ode_residual(u: &ModalVector, s: f64, y: f64, scheme: OdeScheme) -> Result<f64> {
    let mut acc = 0.0;
    for (&lambda, &c) in u.spectrum().eigenvalues().iter().zip(u.coeffs()) {
        if lambda == 0.0 || c == 0.0 {
            continue;
        }
        let v = c * mode_ode_residual(s, lambda, y, scheme)?;
        acc += v * v;
    }
    Ok(acc.sqrt())
}

/// Finite-difference scheme for the recurrence (𝔻_𝔟+1)^m ψ_s = (d_s/d_{s−m}) ψ_{s−m}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RecurrenceScheme {
    /// One finite-difference application to (d_s/d_{s−m+1}) ψ_{s−m+1}, the
    /// closed form of the first m−1 factors.
    #[default]
    Stepwise,
    /// m nested finite-difference applications to ψ_s with step
    /// [`NESTED_STEP`]; reaches 1e−5 only for m ≤ 2.
    Nested,
}

/// Compares (𝔻_𝔟+1)^m ψ_s(y), applied by finite differences, with
/// (d_s/d_{s−m}) ψ_{s−m}(y), for 1 ≤ m ≤ ⌊s⌋.
pub fn recurrence_check(s: f64, m: usize, y: f64, scheme: RecurrenceScheme, tol: f64) -> Result<CheckReport> {
    let params = FracParams::new(s)?;
    if m == 0 || m > params.floor() {
        return Err(Error::InvalidParameter(format!(
            "recurrence step m = {m} must lie in 1..={}",
            params.floor()
        )));
    }
    let b = params.b();
    let h = operator_step(y);
    let rhs = params.recurrence_ratio(m)? * psi(s - m as f64, y)?;
    let lhs = match scheme {
        RecurrenceScheme::Stepwise => {
            let prev = params.recurrence_ratio(m - 1)?;
            let sigma = s - (m - 1) as f64;
            let f = |t: f64| prev * psi(sigma, t).unwrap_or(f64::NAN);
            shifted_operator(&f, y, b, 1.0, h)?
        }
        RecurrenceScheme::Nested => {
            let min = 2.0 * NESTED_STEP * m as f64;
            if y <= min {
                return Err(Error::StencilTooWide { y, min });
            }
            nested(s, 1.0, b, m, y, NESTED_STEP)
        }
    };
    Ok(CheckReport::equality(
        format!("recurrence(s={s},m={m},y={y})"),
        lhs,
        rhs,
        tol,
    ))
}

/// Least-squares slope of log‖𝒫_s[u](y) − u‖_𝓗 against log y over `ys`.
pub fn holder_slope(u: &ModalVector, s: f64, ys: &[f64]) -> Result<f64> {
    if ys.len() < 2 || ys.iter().any(|y| !(*y > 0.0)) {
        return Err(Error::InvalidGrid);
    }
    let curve = extend(u, s, ys)?;
    let mut xs = Vec::with_capacity(ys.len());
    let mut zs = Vec::with_capacity(ys.len());
    for (i, &y) in ys.iter().enumerate() {
        let col = curve.column(i);
        let diff: f64 = col
            .coeffs()
            .iter()
            .zip(u.coeffs())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        if !(diff > 0.0) {
            return Err(Error::InvalidParameter("curve does not move away from its trace".into()));
        }
        xs.push(y.ln());
        zs.push(diff.ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let mz = zs.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(&zs).map(|(x, z)| (x - mx) * (z - mz)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(num / den)
}
