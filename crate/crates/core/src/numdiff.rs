//! Central finite differences with one Richardson level, and extrapolation
//! to y → 0 for expansions with known exponents.

use crate::error::{Error, Result};

/// Default step h = max(1e−4, 1e−3·y).
pub fn default_step(y: f64) -> f64 {
    (1e-3 * y.abs()).max(1e-4)
}

/// Step for [`shifted_operator`] on profiles varying on unit scale:
/// h = 1e−2·max(1, y), at most y/8. The Richardson-combined stencil is 6th
/// order, so roundoff ε/h² and truncation h⁶ balance near h ≈ 1e−2.
pub fn operator_step(y: f64) -> f64 {
    (1e-2 * y.abs().max(1.0)).min(0.125 * y.abs())
}

fn d1(f: &dyn Fn(f64) -> f64, y: f64, h: f64) -> f64 {
    (f(y - 2.0 * h) - 8.0 * f(y - h) + 8.0 * f(y + h) - f(y + 2.0 * h)) / (12.0 * h)
}

fn d2(f: &dyn Fn(f64) -> f64, y: f64, h: f64) -> f64 {
    (-f(y - 2.0 * h) + 16.0 * f(y - h) - 30.0 * f(y) + 16.0 * f(y + h) - f(y + 2.0 * h))
        / (12.0 * h * h)
}

/// f'(y) by the 4th-order central stencil at h and h/2, combined to 6th order.
pub fn first(f: &dyn Fn(f64) -> f64, y: f64, h: f64) -> f64 {
    (16.0 * d1(f, y, 0.5 * h) - d1(f, y, h)) / 15.0
}

/// f''(y), same scheme as [`first`].
pub fn second(f: &dyn Fn(f64) -> f64, y: f64, h: f64) -> f64 {
    (16.0 * d2(f, y, 0.5 * h) - d2(f, y, h)) / 15.0
}

/// (−∂² − (b/y)∂ + λ) f at y > 2h by finite differences.
pub fn shifted_operator(f: &dyn Fn(f64) -> f64, y: f64, b: f64, lambda: f64, h: f64) -> Result<f64> {
    if y <= 2.0 * h {
        return Err(Error::StencilTooWide { y, min: 2.0 * h });
    }
    Ok(-second(f, y, h) - b / y * first(f, y, h) + lambda * f(y))
}

/// Limit at y → 0 of samples f(y_i) = f_0 + Σ_k a_k y_i^{p_k}, eliminating the
/// given exponents. Needs `exponents.len() + 1` samples.
pub fn extrapolate_to_zero(ys: &[f64], fs: &[f64], exponents: &[f64]) -> Result<f64> {
    let n = exponents.len() + 1;
    if ys.len() < n || fs.len() < n {
        return Err(Error::InvalidParameter(format!(
            "extrapolation with {} exponents needs {n} samples",
            exponents.len()
        )));
    }
    // Solve the n×n system [1, y^{p_1}, ..., y^{p_k}] c = f; unknown c_0 is the limit.
    let scale = ys[..n].iter().cloned().fold(0.0, f64::max);
    let mut a = vec![vec![0.0; n + 1]; n];
    for i in 0..n {
        let t = ys[i] / scale;
        a[i][0] = 1.0;
        for (k, p) in exponents.iter().enumerate() {
            a[i][k + 1] = t.powf(*p);
        }
        a[i][n] = fs[i];
    }
    let sol = solve_dense(a)?;
    Ok(sol[0])
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
pub(crate) fn solve_dense(mut a: Vec<Vec<f64>>) -> Result<Vec<f64>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[piv][col] == 0.0 {
            return Err(Error::InvalidParameter("singular extrapolation system".into()));
        }
        a.swap(col, piv);
        for row in col + 1..n {
            let m = a[row][col] / a[col][col];
            let pivot_row = a[col].clone();
            for (dst, src) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= m * src;
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = a[row][n];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Ok(x)
}

/// Sorted exponents of the non-constant terms in the small-y expansion of
/// ψ_σ: even integers 2, 4, ... and the non-analytic series 2σ, 2σ+2, ...
pub fn profile_exponents(sigma: f64, count: usize) -> Vec<f64> {
    let mut all: Vec<f64> = (1..=count).map(|k| 2.0 * k as f64).collect();
    all.extend((0..count).map(|k| 2.0 * sigma + 2.0 * k as f64));
    all.sort_by(f64::total_cmp);
    all.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    all.truncate(count);
    all
}
