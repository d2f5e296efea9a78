//! Gamma and Beta functions for real arguments.
//!
//! A 14-term Lanczos sum with shift `671/128` gives about 1e-15 relative
//! accuracy on `(0, 171)`. Arguments below 1/2 go through the reflection
//! formula.

use std::f64::consts::PI;

const SHIFT: f64 = 5.242_187_5;
const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;
const LEAD: f64 = 0.999_999_999_999_997_092;
const COEFFS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

fn lanczos_sum(x: f64) -> f64 {
    let mut sum = LEAD;
    let mut y = x;
    for c in COEFFS {
        y += 1.0;
        sum += c / y;
    }
    sum
}

/// Γ(x). Poles at non-positive integers return NaN.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    let t = x + SHIFT;
    // split the power so that t^(x+1/2) does not overflow before e^{-t} is applied
    let p = t.powf(0.5 * (x + 0.5));
    SQRT_TWO_PI * lanczos_sum(x) / x * p * (-t).exp() * p
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    if x.is_nan() || x <= 0.0 {
        return f64::NAN;
    }
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let t = x + SHIFT;
    (x + 0.5) * t.ln() - t + (SQRT_TWO_PI * lanczos_sum(x) / x).ln()
}

/// B(a, b) for a, b > 0, evaluated in log space.
pub fn beta(a: f64, b: f64) -> f64 {
    ln_beta(a, b).exp()
}

/// ln B(a, b) for a, b > 0.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// Γ(a)/Γ(b) for positive arguments, safe when both are large.
pub fn gamma_ratio(a: f64, b: f64) -> f64 {
    if a < 100.0 && b < 100.0 {
        gamma(a) / gamma(b)
    } else {
        (ln_gamma(a) - ln_gamma(b)).exp()
    }
}

/// n! as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Binomial coefficient C(n, k) as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
