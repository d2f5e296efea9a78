use serde::Serialize;

use super::gamma::{factorial, gamma, gamma_ratio};
use crate::error::{Error, Result};

/// Derived quantities for a positive non-integer order `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracParams {
    s: f64,
    floor: usize,
    b: f64,
    c_s: f64,
    d_s: f64,
}

impl FracParams {
    /// Fails for non-positive, non-finite or integer `s`.
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidOrder(s));
        }
        if s == s.floor() {
            return Err(Error::IntegerOrder(s));
        }
        let floor = s.floor() as usize;
        let b = 1.0 - 2.0 * (s - s.floor());
        Ok(FracParams {
            s,
            floor,
            b,
            c_s: profile_normalization(s),
            d_s: dtn_constant(s, floor, b),
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// ⌊s⌋.
    pub fn floor(&self) -> usize {
        self.floor
    }

    /// ⌈s⌉ = ⌊s⌋ + 1.
    pub fn ceil(&self) -> usize {
        self.floor + 1
    }

    /// Fractional part s − ⌊s⌋.
    pub fn frac(&self) -> f64 {
        self.s - self.floor as f64
    }

    /// Weight exponent b = 1 − 2(s − ⌊s⌋), in (−1, 1).
    pub fn b(&self) -> f64 {
        self.b
    }

    /// c_s = 2^{1−s}/Γ(s), the normalization making ψ_s(0) = 1.
    pub fn c_s(&self) -> f64 {
        self.c_s
    }

    /// d_s = 2^b Γ((1+b)/2) ⌊s⌋!/Γ(s).
    pub fn d_s(&self) -> f64 {
        self.d_s
    }

    /// Γ(s−m)/Γ(s) as a finite product, for m ≤ ⌊s⌋.
    fn falling_ratio(&self, m: usize) -> f64 {
        (1..=m).fold(1.0, |acc, i| acc / (self.s - i as f64))
    }

    fn check_index(&self, m: usize) -> Result<()> {
        if m > self.floor {
            return Err(Error::InvalidParameter(format!(
                "index {m} exceeds floor(s) = {} for s = {}",
                self.floor, self.s
            )));
        }
        Ok(())
    }

    /// κ_{s,m} = (−1)^m Γ(s−m)/Γ(s)·(2m)!/(4^m m!), the limit at 0 of the
    /// 2m-th derivative of a unit mode divided by λ^m.
    pub fn kappa(&self, m: usize) -> Result<f64> {
        self.check_index(m)?;
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        let frac = factorial(2 * m) / (4f64.powi(m as i32) * factorial(m));
        Ok(sign * self.falling_ratio(m) * frac)
    }

    /// γ_{s,ℓ} = B(s−ℓ, 1/2)/B(s, 1/2).
    pub fn gamma_coeff(&self, l: usize) -> Result<f64> {
        self.check_index(l)?;
        Ok(beta_half_ratio(self.s, l))
    }

    /// d_s/d_{s−m}: the factor in (D_b+1)^m ψ_s = (d_s/d_{s−m}) ψ_{s−m}.
    pub fn recurrence_ratio(&self, m: usize) -> Result<f64> {
        self.check_index(m)?;
        let num = (0..m).fold(1.0, |acc, i| acc * (self.floor - i) as f64);
        Ok(num * self.falling_ratio(m))
    }

    /// Coefficient of λ^m y^{2m} in the expansion of a unit mode at 0.
    pub fn taylor_coeff(&self, m: usize) -> Result<f64> {
        Ok(self.kappa(m)? / factorial(2 * m))
    }

    /// The full set of named constants.
    pub fn constants(&self) -> Constants {
        Constants {
            s: self.s,
            b: self.b,
            c_s: self.c_s,
            d_s: self.d_s,
            m_b: trace_constant(self.b),
            kappa: (1..=self.floor).map(|m| self.kappa(m).unwrap()).collect(),
            gamma_coeff: (0..=self.floor).map(|l| beta_half_ratio(self.s, l)).collect(),
        }
    }
}

/// Named constants attached to an order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constants {
    pub s: f64,
    pub b: f64,
    pub c_s: f64,
    pub d_s: f64,
    pub m_b: f64,
    /// κ_{s,m} for m = 1..=⌊s⌋.
    pub kappa: Vec<f64>,
    /// γ_{s,ℓ} for ℓ = 0..=⌊s⌋.
    pub gamma_coeff: Vec<f64>,
}

/// c_s = 2^{1−s}/Γ(s) for any s > 0.
pub fn profile_normalization(s: f64) -> f64 {
    if s < 150.0 {
        2f64.powf(1.0 - s) / gamma(s)
    } else {
        ((1.0 - s) * std::f64::consts::LN_2 - super::gamma::ln_gamma(s)).exp()
    }
}

fn dtn_constant(s: f64, floor: usize, b: f64) -> f64 {
    2f64.powf(b) * gamma(0.5 * (1.0 + b)) * gamma_ratio(floor as f64 + 1.0, s)
}

/// d_σ for σ ∈ (0,1) in the form 2^{1−2σ}Γ(1−σ)/Γ(σ).
pub fn dtn_constant_unit(sigma: f64) -> f64 {
    2f64.powf(1.0 - 2.0 * sigma) * gamma(1.0 - sigma) / gamma(sigma)
}

/// m_b = 2^{1+b}Γ((1+b)/2)/Γ((1−b)/2), the sharp constant of the trace
/// inequality ‖ψ‖²_{H^{1;b}} ≥ m_b |ψ(0)|².
pub fn trace_constant(b: f64) -> f64 {
    2f64.powf(1.0 + b) * gamma(0.5 * (1.0 + b)) / gamma(0.5 * (1.0 - b))
}

/// B(s−ℓ, 1/2)/B(s, 1/2) = Π_{i=1}^{ℓ} (s+1/2−i)/(s−i).
pub(crate) fn beta_half_ratio(s: f64, l: usize) -> f64 {
    (1..=l).fold(1.0, |acc, i| {
        let i = i as f64;
        acc * (s + 0.5 - i) / (s - i)
    })
}
