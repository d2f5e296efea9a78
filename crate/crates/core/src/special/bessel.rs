//! Modified Bessel function of the second kind, K_ν(x), for real ν and x > 0.
//!
//! The order is split as ν = n + μ with |μ| ≤ 1/2. The pair K_μ, K_{μ+1} comes
//! from Temme's series for x < 2 and from Steed's continued fraction for
//! x ≥ 2; forward recurrence in the order then reaches K_ν, which is stable
//! for this function.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

const EPS: f64 = f64::EPSILON;
const MAX_ITER: usize = 20_000;

/// Taylor coefficients of 1/Γ(z) = Σ_{k≥1} c_k z^k.
const RECIP_GAMMA: [f64; 26] = [
    1.000_000_000_000_000_0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

/// Temme's auxiliary functions for |μ| ≤ 1/2:
/// g1 = (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ) and g2 = (1/Γ(1−μ) + 1/Γ(1+μ))/2.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    // 1/Γ(1+z) = Σ_{k≥0} c_{k+1} z^k; odd powers feed g1, even powers g2.
    let mut g1 = 0.0;
    let mut g2 = 0.0;
    let mut p = 1.0;
    let mut k = 0;
    while k + 1 < RECIP_GAMMA.len() {
        g2 += RECIP_GAMMA[k] * p;
        g1 -= RECIP_GAMMA[k + 1] * p;
        p *= mu2;
        k += 2;
    }
    (g1, g2)
}

/// Returns (e^x K_μ(x), e^x K_{μ+1}(x)) for |μ| ≤ 1/2, 0 < x < 2.
fn temme_series(mu: f64, x: f64) -> Result<(f64, f64)> {
    let half = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
    let d = -half.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (g1, g2) = temme_gammas(mu);
    let gampl = g2 - mu * g1; // 1/Γ(1+μ)
    let gammi = g2 + mu * g1; // 1/Γ(1−μ)

    let mut ff = fact * (g1 * e.cosh() + g2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = half * half;
    let mut sum1 = p;
    let mut i = 1usize;
    loop {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu * mu);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        let del1 = c * (p - fi * ff);
        sum1 += del1;
        if del.abs() < sum.abs() * EPS {
            break;
        }
        i += 1;
        if i > MAX_ITER {
            return Err(Error::NoConvergence("Temme series for K"));
        }
    }
    let scale = x.exp();
    Ok((sum * scale, sum1 * (2.0 / x) * scale))
}

/// Returns (e^x K_μ(x), e^x K_{μ+1}(x)) for |μ| ≤ 1/2, x ≥ 2 (Steed's method).
fn steed_fraction(mu: f64, x: f64) -> Result<(f64, f64)> {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut i = 2usize;
    loop {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
        i += 1;
        if i > MAX_ITER {
            return Err(Error::NoConvergence("continued fraction for K"));
        }
    }
    let h = a1 * h;
    let k_mu = (PI / (2.0 * x)).sqrt() / s;
    let k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    Ok((k_mu, k_mu1))
}

/// Returns (e^x K_ν(x), e^x K_{ν+1}(x)).
pub fn bessel_k_pair_scaled(nu: f64, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("x", x, "x > 0"));
    }
    if !nu.is_finite() {
        return Err(domain("nu", nu, "finite order"));
    }
    let nu = nu.abs();
    let n = nu.round();
    let mu = nu - n;
    let (mut k0, mut k1) = if x < 2.0 {
        temme_series(mu, x)?
    } else {
        steed_fraction(mu, x)?
    };
    let steps = n as usize;
    for i in 0..steps {
        let k2 = 2.0 * (mu + i as f64 + 1.0) / x * k1 + k0;
        k0 = k1;
        k1 = k2;
    }
    if !k0.is_finite() || !k1.is_finite() {
        return Err(Error::Overflow { nu, x });
    }
    Ok((k0, k1))
}

/// e^x K_ν(x).
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    bessel_k_pair_scaled(nu, x).map(|p| p.0)
}

/// K_ν(x) for x > 0. Underflows to 0 for very large x.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_k_scaled(nu, x)? * (-x).exp())
}
