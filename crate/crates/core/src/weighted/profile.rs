//! Even profiles y ↦ f(|y|) together with the powers (𝔻_b+λ)^m f, where
//! 𝔻_b = −∂² − (b/y)∂.

use crate::error::{domain, Error, Result};
use crate::special::{binomial, factorial, psi, psi_first_deriv, FracParams};

/// An even function on ℝ, described on y ≥ 0.
pub trait EvenProfile: Send + Sync {
    /// f(y) for y ≥ 0.
    fn value(&self, y: f64) -> Result<f64>;

    /// f'(y) for y > 0.
    fn derivative(&self, y: f64) -> Result<f64>;

    /// ((𝔻_b+λ)^m f)(y) and its y-derivative, for y > 0.
    fn shifted_power(&self, m: usize, lambda: f64, b: f64, y: f64) -> Result<(f64, f64)> {
        let _ = (lambda, b);
        if m == 0 {
            Ok((self.value(y)?, self.derivative(y)?))
        } else {
            Err(Error::MissingAnalyticPower { k: 2 * m })
        }
    }

    /// Abscissa beyond which f² is below about 1e−18 of its peak.
    fn extent(&self) -> f64;
}

/// Profiles f(y) = G(y²) with G smooth. (𝔻_b+λ) acts on G as
/// −2(1+b)G' − 4tG'' + λG, so no division by y is needed.
pub trait SquareJet: Send + Sync {
    /// G, G', ..., G^{(order)} at t = y².
    fn t_jet(&self, t: f64, order: usize) -> Vec<f64>;

    /// See [`EvenProfile::extent`].
    fn square_extent(&self) -> f64;
}

fn apply_shift(jet: &[f64], t: f64, lambda: f64, b: f64) -> Vec<f64> {
    let n = jet.len().saturating_sub(2);
    (0..n)
        .map(|j| {
            let jf = j as f64;
            -2.0 * (1.0 + b) * jet[j + 1] - 4.0 * (t * jet[j + 2] + jf * jet[j + 1]) + lambda * jet[j]
        })
        .collect()
}

impl<T: SquareJet> EvenProfile for T {
    fn value(&self, y: f64) -> Result<f64> {
        Ok(self.t_jet(y * y, 0)[0])
    }

    fn derivative(&self, y: f64) -> Result<f64> {
        Ok(2.0 * y * self.t_jet(y * y, 1)[1])
    }

    fn shifted_power(&self, m: usize, lambda: f64, b: f64, y: f64) -> Result<(f64, f64)> {
        let t = y * y;
        let mut jet = self.t_jet(t, 2 * m + 1);
        for _ in 0..m {
            jet = apply_shift(&jet, t, lambda, b);
        }
        Ok((jet[0], 2.0 * y * jet[1]))
    }

    fn extent(&self) -> f64 {
        self.square_extent()
    }
}

/// One term c t^p e^{−a t} of a [`GaussianMixture`] (t = y²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussTerm {
    pub coeff: f64,
    pub power: u32,
    pub rate: f64,
}

/// f(y) = Σ c_i y^{2p_i} e^{−a_i y²}.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixture {
    terms: Vec<GaussTerm>,
}

impl GaussianMixture {
    pub fn new(terms: Vec<GaussTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidParameter("mixture needs at least one term".into()));
        }
        for t in &terms {
            if !(t.rate > 0.0) || !t.rate.is_finite() || !t.coeff.is_finite() {
                return Err(domain("rate", t.rate, "rate > 0 and finite coefficients"));
            }
        }
        Ok(GaussianMixture { terms })
    }

    /// e^{−a y²}.
    pub fn gaussian(rate: f64) -> Result<Self> {
        Self::new(vec![GaussTerm {
            coeff: 1.0,
            power: 0,
            rate,
        }])
    }

    /// y² e^{−y²}, which vanishes at the origin.
    pub fn vanishing_at_origin() -> Self {
        GaussianMixture {
            terms: vec![GaussTerm {
                coeff: 1.0,
                power: 1,
                rate: 1.0,
            }],
        }
    }

    pub fn terms(&self) -> &[GaussTerm] {
        &self.terms
    }
}

impl SquareJet for GaussianMixture {
    fn t_jet(&self, t: f64, order: usize) -> Vec<f64> {
        let mut out = vec![0.0; order + 1];
        for term in &self.terms {
            let e = (-term.rate * t).exp();
            let p = term.power as usize;
            for (j, slot) in out.iter_mut().enumerate() {
                let mut acc = 0.0;
                for i in 0..=j.min(p) {
                    let falling = factorial(p) / factorial(p - i);
                    acc += binomial(j, i) * falling * t.powi((p - i) as i32) * (-term.rate).powi((j - i) as i32);
                }
                *slot += term.coeff * acc * e;
            }
        }
        out
    }

    fn square_extent(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| ((45.0 + 4.0 * t.power as f64) / t.rate).sqrt())
            .fold(0.0, f64::max)
    }
}

/// η(y) = exp(−1/(1 − (y/r)²)) for |y| < r, 0 otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    radius: f64,
}

impl Bump {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(domain("radius", radius, "radius > 0"));
        }
        Ok(Bump { radius })
    }

    pub fn unit() -> Self {
        Bump { radius: 1.0 }
    }
}

impl SquareJet for Bump {
    fn t_jet(&self, t: f64, order: usize) -> Vec<f64> {
        let r2 = self.radius * self.radius;
        let u = t / r2;
        let mut out = vec![0.0; order + 1];
        if u >= 1.0 {
            return out;
        }
        // F = e^f with f = −1/(1−u), f^{(k)} = −k!/(1−u)^{k+1}
        let v = 1.0 - u;
        let df: Vec<f64> = (0..=order + 1).map(|k| -factorial(k) / v.powi(k as i32 + 1)).collect();
        out[0] = df[0].exp();
        for n in 0..order {
            let mut acc = 0.0;
            for k in 0..=n {
                acc += binomial(n, k) * df[k + 1] * out[n - k];
            }
            out[n + 1] = acc;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            *slot /= r2.powi(j as i32);
        }
        out
    }

    fn square_extent(&self) -> f64 {
        self.radius
    }
}

/// The normalized mode ψ_{s,μ}(y) = ψ_s(√μ y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselProfile {
    params: FracParams,
    scale: f64,
}

impl BesselProfile {
    pub fn new(s: f64, scale: f64) -> Result<Self> {
        let params = FracParams::new(s)?;
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(domain("scale", scale, "scale > 0"));
        }
        Ok(BesselProfile { params, scale })
    }

    pub fn params(&self) -> &FracParams {
        &self.params
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// (𝔻_𝔟+μ)^i ψ_{s,μ} and its derivative at y > 0, from the recurrence
    /// μ^i (d_s/d_{s−i}) ψ_{s−i,μ}. Pointwise for y > 0, so i ≥ ⌈s⌉ gives 0:
    /// the contribution concentrated at the origin is not represented.
    pub fn own_power_pointwise(&self, i: usize, y: f64) -> Result<(f64, f64)> {
        if i > self.params.floor() {
            return Ok((0.0, 0.0));
        }
        let r = self.scale.sqrt();
        let factor = self.scale.powi(i as i32) * self.params.recurrence_ratio(i)?;
        let sigma = self.params.s() - i as f64;
        Ok((factor * psi(sigma, r * y)?, factor * r * psi_first_deriv(sigma, r * y)?))
    }

    /// (𝔻_𝔟+λ)^m ψ_{s,μ} pointwise at y > 0 for any m and λ, by the binomial
    /// expansion (𝔻_𝔟+λ)^m = Σ_i C(m,i)(λ−μ)^{m−i}(𝔻_𝔟+μ)^i.
    pub fn shifted_power_pointwise(&self, m: usize, lambda: f64, y: f64) -> Result<(f64, f64)> {
        let shift = lambda - self.scale;
        let (mut v, mut d) = (0.0, 0.0);
        for i in 0..=m {
            let c = binomial(m, i) * shift.powi((m - i) as i32);
            if c == 0.0 {
                continue;
            }
            let (pv, pd) = self.own_power_pointwise(i, y)?;
            v += c * pv;
            d += c * pd;
        }
        Ok((v, d))
    }
}

impl EvenProfile for BesselProfile {
    fn value(&self, y: f64) -> Result<f64> {
        psi(self.params.s(), self.scale.sqrt() * y)
    }

    fn derivative(&self, y: f64) -> Result<f64> {
        if y == 0.0 {
            return Ok(0.0);
        }
        let r = self.scale.sqrt();
        Ok(r * psi_first_deriv(self.params.s(), r * y)?)
    }

    /// Available for b = 𝔟 and m ≤ ⌊s⌋, the orders for which the power
    /// belongs to the weighted space; any λ.
    fn shifted_power(&self, m: usize, lambda: f64, b: f64, y: f64) -> Result<(f64, f64)> {
        if m == 0 {
            return Ok((self.value(y)?, self.derivative(y)?));
        }
        if (b - self.params.b()).abs() > 1e-12 || m > self.params.floor() {
            return Err(Error::MissingAnalyticPower { k: 2 * m });
        }
        self.shifted_power_pointwise(m, lambda, y)
    }

    fn extent(&self) -> f64 {
        (40.0 + 2.0 * self.params.s()) / self.scale.sqrt()
    }
}

/// Cubic Hermite interpolant of samples (y_i, f_i, f'_i) with y_0 = 0,
/// extended by 0 beyond the last knot. Carries no operator powers.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    ys: Vec<f64>,
    values: Vec<f64>,
    derivs: Vec<f64>,
}

impl SampledProfile {
    pub fn new(ys: Vec<f64>, values: Vec<f64>, derivs: Vec<f64>) -> Result<Self> {
        if ys.len() < 2 || ys[0] != 0.0 || ys.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid);
        }
        for v in [&values, &derivs] {
            if v.len() != ys.len() {
                return Err(Error::LengthMismatch {
                    expected: ys.len(),
                    found: v.len(),
                });
            }
        }
        Ok(SampledProfile { ys, values, derivs })
    }

    fn locate(&self, y: f64) -> Option<(usize, f64, f64)> {
        let last = *self.ys.last().unwrap();
        if y > last {
            return None;
        }
        let i = self.ys.partition_point(|&k| k <= y).clamp(1, self.ys.len() - 1) - 1;
        let h = self.ys[i + 1] - self.ys[i];
        Some((i, h, (y - self.ys[i]) / h))
    }
}

impl EvenProfile for SampledProfile {
    fn value(&self, y: f64) -> Result<f64> {
        let Some((i, h, t)) = self.locate(y.abs()) else {
            return Ok(0.0);
        };
        let (t2, t3) = (t * t, t * t * t);
        Ok((2.0 * t3 - 3.0 * t2 + 1.0) * self.values[i]
            + (t3 - 2.0 * t2 + t) * h * self.derivs[i]
            + (-2.0 * t3 + 3.0 * t2) * self.values[i + 1]
            + (t3 - t2) * h * self.derivs[i + 1])
    }

    fn derivative(&self, y: f64) -> Result<f64> {
        let Some((i, h, t)) = self.locate(y.abs()) else {
            return Ok(0.0);
        };
        let t2 = t * t;
        Ok((6.0 * t2 - 6.0 * t) / h * self.values[i]
            + (3.0 * t2 - 4.0 * t + 1.0) * self.derivs[i]
            + (-6.0 * t2 + 6.0 * t) / h * self.values[i + 1]
            + (3.0 * t2 - 2.0 * t) * self.derivs[i + 1])
    }

    fn extent(&self) -> f64 {
        *self.ys.last().unwrap()
    }
}
