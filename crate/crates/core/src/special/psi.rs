//! The normalized profile ψ_s(y) = c_s |y|^s K_s(|y|) and its derivatives.
//!
//! ψ_s is even, equals 1 at the origin, decreases on (0, ∞) and decays like
//! e^{−|y|}. Derivatives are expressed through profiles of lower order:
//!
//! * ψ_s' = −d_s y^{2s−1} ψ_{1−s} for 0 < s < 1, and ψ_s' = −y ψ_{s−1}/(2(s−1)) for s > 1;
//! * ∂^{2m} ψ_s = Σ_ℓ C(m,ℓ)(−1)^ℓ γ_{s,ℓ} ψ_{s−ℓ} for m ≤ ⌊s⌋;
//! * odd orders 2m−1 ≤ 2⌊s⌋−1 carry an explicit factor y;
//! * order 2⌊s⌋+1 differentiates the top even formula term by term.

use super::bessel::bessel_k_scaled;
use super::gamma::binomial;
use super::params::{beta_half_ratio, dtn_constant_unit, profile_normalization};
use crate::error::{domain, Error, Result};

/// ψ_s(y) for any real y (even extension). Exactly 1 at y = 0; underflows to
/// 0 for very large |y|.
pub fn psi(s: f64, y: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidOrder(s));
    }
    if y.is_nan() {
        return Err(domain("y", y, "a number"));
    }
    let y = y.abs();
    if y == 0.0 {
        return Ok(1.0);
    }
    if y.is_infinite() {
        return Ok(0.0);
    }
    let c = profile_normalization(s);
    let scaled = match bessel_k_scaled(s, y) {
        Ok(k) => k,
        // only reachable for large s at tiny y, where ψ_s = 1 − y²/(4(s−1)) + O(y⁴)
        Err(Error::Overflow { .. }) if s > 2.0 => return Ok(1.0 - y * y / (4.0 * (s - 1.0))),
        Err(e) => return Err(e),
    };
    let pow = y.powf(s);
    let direct = c * pow * scaled * (-y).exp();
    if direct.is_finite() && pow > 0.0 && direct > 0.0 {
        return Ok(direct);
    }
    let log = c.ln() + s * y.ln() - y + scaled.ln();
    Ok(log.exp())
}

/// ψ_{s,λ}(y) = ψ_s(√λ |y|), λ > 0.
pub fn psi_lambda(s: f64, lambda: f64, y: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain("lambda", lambda, "lambda > 0"));
    }
    psi(s, lambda.sqrt() * y.abs())
}

/// Highest derivative order available pointwise for y > 0.
///
/// Orders up to ⌊2s⌋ stay bounded as y → 0; the remaining ones are finite for
/// every y > 0 but may blow up at the origin.
pub fn max_deriv_order(s: f64) -> usize {
    if s < 1.0 {
        2
    } else {
        2 * s.floor() as usize + 1
    }
}

fn check_point(s: f64, y: f64) -> Result<()> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidOrder(s));
    }
    if s == s.floor() {
        return Err(Error::IntegerOrder(s));
    }
    if !(y > 0.0) || !y.is_finite() {
        return Err(domain("y", y, "y > 0"));
    }
    Ok(())
}

/// First derivative ψ_σ'(y) for y > 0 and any non-integer σ > 0.
pub fn psi_first_deriv(sigma: f64, y: f64) -> Result<f64> {
    check_point(sigma, y)?;
    if sigma < 1.0 {
        let d = dtn_constant_unit(sigma);
        Ok(-d * y.powf(2.0 * sigma - 1.0) * psi(1.0 - sigma, y)?)
    } else {
        Ok(-y * psi(sigma - 1.0, y)? / (2.0 * (sigma - 1.0)))
    }
}

/// ∂_y^order ψ_s(y) for y > 0, non-integer s, and 1 ≤ order ≤ max_deriv_order(s).
pub fn psi_deriv(s: f64, y: f64, order: usize) -> Result<f64> {
    check_point(s, y)?;
    let max = max_deriv_order(s);
    if order == 0 || order > max {
        return Err(Error::DerivativeOrder { order, s, max });
    }
    if order == 1 {
        return psi_first_deriv(s, y);
    }
    let n = s.floor() as usize;
    if n == 0 {
        // order == 2: −ψ'' + ψ = d_s(2s−1) y^{2(s−1)} ψ_{1−s}
        let d = dtn_constant_unit(s);
        let rhs = d * (2.0 * s - 1.0) * y.powf(2.0 * (s - 1.0)) * psi(1.0 - s, y)?;
        return Ok(psi(s, y)? - rhs);
    }
    if order.is_multiple_of(2) {
        let m = order / 2;
        let mut acc = 0.0;
        for l in 0..=m {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binomial(m, l) * beta_half_ratio(s, l) * psi(s - l as f64, y)?;
        }
        return Ok(acc);
    }
    let m = order.div_ceil(2);
    if m <= n {
        let mut acc = 0.0;
        for l in 1..=m {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let coeff = binomial(m, l) * l as f64 * beta_half_ratio(s, l)
                / (2.0 * m as f64 * (s + 0.5 - l as f64));
            acc += sign * coeff * psi(s - l as f64, y)?;
        }
        return Ok(y * acc);
    }
    // order = 2n + 1: differentiate the even formula with m = n
    let mut acc = 0.0;
    for l in 0..=n {
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(n, l) * beta_half_ratio(s, l) * psi_first_deriv(s - l as f64, y)?;
    }
    Ok(acc)
}

/// ∂_y^order ψ_{s,λ}(y) = λ^{order/2} (∂^order ψ_s)(√λ y) for y > 0.
pub fn psi_lambda_deriv(s: f64, lambda: f64, y: f64, order: usize) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain("lambda", lambda, "lambda > 0"));
    }
    let r = lambda.sqrt();
    Ok(r.powi(order as i32) * psi_deriv(s, r * y, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integer_profiles() {
        for &y in &[1e-9f64, 1e-3, 0.4, 1.0, 2.0, 7.5, 30.0] {
            let e = (-y).exp();
            assert!((psi(0.5, y).unwrap() / e - 1.0).abs() < 1e-14);
            assert!((psi(1.5, y).unwrap() / ((1.0 + y) * e) - 1.0).abs() < 1e-14);
            assert!((psi(2.5, y).unwrap() / ((1.0 + y + y * y / 3.0) * e) - 1.0).abs() < 1e-14);
            assert!((psi(0.5, -y).unwrap() - psi(0.5, y).unwrap()).abs() == 0.0);
        }
        assert_eq!(psi(0.3, 0.0).unwrap(), 1.0);
        assert!((psi(1.5, 1.0).unwrap() - 0.735_758_882_342_884_6).abs() < 1e-15);
    }

    #[test]
    fn monomial_exponential_form_only_at_half() {
        // |y|^k e^{−|y|}/(k+1)! agrees with ψ_{k+1/2} only for k = 0
        let y = 0.8f64;
        assert!((psi(0.5, y).unwrap() - (-y).exp()).abs() < 1e-15);
        let monomial = y * (-y).exp() / 2.0;
        assert!((psi(1.5, y).unwrap() - monomial).abs() > 0.1);
    }

    #[test]
    fn profile_tends_to_one_near_origin() {
        for &s in &[0.25, 0.5, 1.3, 3.7] {
            let v = psi(s, 1e-12).unwrap();
            assert!(v <= 1.0 && 1.0 - v < 1e-5, "s={s} v={v}");
        }
        // large order, tiny argument
        assert!((psi(40.5, 1e-20).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lambda_variant() {
        assert!((psi_lambda(0.5, 4.0, 1.0).unwrap() - (-2f64).exp()).abs() < 1e-15);
        assert_eq!(psi_lambda(0.7, 3.0, 0.0).unwrap(), 1.0);
        assert!(psi_lambda(0.5, 0.0, 1.0).is_err());
        assert!(psi_lambda(0.5, -1.0, 1.0).is_err());
    }

    #[test]
    fn derivatives_of_closed_forms() {
        for &y in &[0.1f64, 1.0, 3.0] {
            let e = (-y).exp();
            assert!((psi_deriv(0.5, y, 1).unwrap() + e).abs() < 1e-15);
            assert!((psi_deriv(1.5, y, 1).unwrap() + y * e).abs() < 1e-15);
            assert!((psi_deriv(1.5, y, 2).unwrap() - (y - 1.0) * e).abs() < 1e-14);
            assert!((psi_deriv(1.5, y, 3).unwrap() - (2.0 - y) * e).abs() < 1e-14);
            // ψ_{5/2} = (1 + y + y²/3) e^{−y}
            let d1 = -(y + y * y) / 3.0 * e;
            let d2 = (y * y - y - 1.0) / 3.0 * e;
            let d3 = (-y * y + 3.0 * y) / 3.0 * e;
            let d4 = (y * y - 5.0 * y + 3.0) / 3.0 * e;
            let d5 = (-y * y + 7.0 * y - 8.0) / 3.0 * e;
            for (k, want) in [d1, d2, d3, d4, d5].into_iter().enumerate() {
                let got = psi_deriv(2.5, y, k + 1).unwrap();
                assert!((got - want).abs() < 1e-14, "k={} y={y}", k + 1);
            }
        }
        assert!(psi_deriv(1.5, 1e-8, 1).unwrap().abs() < 1e-7);
    }

    #[test]
    fn derivative_errors() {
        assert!(matches!(psi_deriv(1.5, 1.0, 4), Err(Error::DerivativeOrder { .. })));
        assert!(matches!(psi_deriv(1.5, 1.0, 0), Err(Error::DerivativeOrder { .. })));
        assert!(matches!(psi_deriv(0.3, 1.0, 3), Err(Error::DerivativeOrder { .. })));
        assert!(psi_deriv(1.5, 0.0, 1).is_err());
        assert!(matches!(psi_deriv(2.0, 1.0, 1), Err(Error::IntegerOrder(_))));
    }
}
