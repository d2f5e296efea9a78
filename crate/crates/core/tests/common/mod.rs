#![allow(dead_code)]

use std::collections::BTreeMap;

use fracext::special::{bessel_k, profile_normalization};

/// ln(e^x K_ν(x)) by the trapezoid rule on K_ν(x) = ∫₀^∞ e^{−x cosh t} cosh(νt) dt.
/// The integrand is even and entire in t, so the rule converges geometrically.
pub fn trapezoid_log_k(nu: f64, x: f64) -> f64 {
    let log_term = |t: f64| {
        let c = if t < 1e-3 {
            // cosh t − 1 without cancellation
            let t2 = t * t;
            t2 / 2.0 + t2 * t2 / 24.0 + t2 * t2 * t2 / 720.0
        } else {
            t.cosh() - 1.0
        };
        let tail = if nu * t > 40.0 { 0.0 } else { (-2.0 * nu * t).exp() };
        -x * c + nu * t + (0.5 * (1.0 + tail)).ln()
    };
    let peak = if nu > 0.0 { (nu / x).asinh() } else { 0.0 };
    let width = 1.0 / (x * peak.cosh()).max(1e-300).sqrt();
    let h = (width / 40.0).min(2e-3);
    let top = log_term(peak);
    let mut terms = Vec::new();
    let mut t = 0.0;
    loop {
        let l = log_term(t);
        let w = if t == 0.0 { 0.5 } else { 1.0 };
        terms.push((l, w));
        if t > peak && l < top - 60.0 {
            break;
        }
        t += h;
    }
    let max = terms.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|&(l, w)| w * (l - max).exp()).sum();
    max + (sum * h).ln()
}

/// Derivatives ∂^0..=order of ψ_s at y, by symbolic differentiation of
/// c_s y^s K_s(y) with the rule d/dy[y^p g_β] = p y^{p−1} g_β − y^{p+1} g_{β−1},
/// where g_β(y) = y^β K_β(y). Independent of the closed-form derivative formulas.
pub fn symbolic_psi_jet(s: f64, y: f64, order: usize) -> Vec<f64> {
    symbolic_psi_jet_with_scale(s, y, order).0
}

/// As [`symbolic_psi_jet`], also returning Σ|terms| per order (a condition bound).
pub fn symbolic_psi_jet_with_scale(s: f64, y: f64, order: usize) -> (Vec<f64>, Vec<f64>) {
    // key: (power p, shift j) for the term y^p g_{s−j}
    let mut terms: BTreeMap<(i32, u32), f64> = BTreeMap::new();
    terms.insert((0, 0), profile_normalization(s));
    let mut values = Vec::with_capacity(order + 1);
    let mut scales = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut total = 0.0;
        let mut abs = 0.0;
        for (&(p, j), &c) in &terms {
            let beta = s - j as f64;
            let g = y.powf(beta) * bessel_k(beta.abs(), y).unwrap();
            let v = c * y.powi(p) * g;
            total += v;
            abs += v.abs();
        }
        values.push(total);
        scales.push(abs);
        if k == order {
            break;
        }
        let mut next: BTreeMap<(i32, u32), f64> = BTreeMap::new();
        for (&(p, j), &c) in &terms {
            if p != 0 {
                *next.entry((p - 1, j)).or_insert(0.0) += c * p as f64;
            }
            *next.entry((p + 1, j + 1)).or_insert(0.0) -= c;
        }
        terms = next;
    }
    (values, scales)
}

/// Jet of (−∂² − (b/y)∂ + λ) f from a jet of f (loses two orders).
pub fn shift_jet(jet: &[f64], y: f64, b: f64, lambda: f64) -> Vec<f64> {
    let n = jet.len() - 2;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        // derivative k of f'/y by Leibniz with (1/y)^{(i)} = (−1)^i i!/y^{i+1}
        let mut q = 0.0;
        let mut binom = 1.0;
        let mut fact = 1.0;
        for i in 0..=k {
            if i > 0 {
                binom = binom * (k + 1 - i) as f64 / i as f64;
                fact *= i as f64;
            }
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            q += binom * jet[k - i + 1] * sign * fact / y.powi(i as i32 + 1);
        }
        out.push(-jet[k + 2] - b * q + lambda * jet[k]);
    }
    out
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// ∫_a^b f by composite Gauss–Legendre with geometric grading toward both
/// endpoints (handles integrable power singularities there).
pub fn graded_integral(f: impl Fn(f64) -> f64, a: f64, b: f64, levels: usize) -> f64 {
    let (x, w) = gauss_legendre(20);
    let mut cells = Vec::new();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    // [a, mid] graded toward a, [mid, b] graded toward b
    let mut hi = half;
    for _ in 0..levels {
        let lo = hi / 2.0;
        cells.push((a + lo, a + hi));
        cells.push((b - hi, b - lo));
        hi = lo;
    }
    let mut total = 0.0;
    for (lo, hi) in cells {
        let c = 0.5 * (lo + hi);
        let r = 0.5 * (hi - lo);
        for (xi, wi) in x.iter().zip(&w) {
            total += wi * r * f(c + r * xi);
        }
    }
    let _ = mid;
    total
}
