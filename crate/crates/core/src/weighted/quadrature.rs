//! Quadrature for ∫₀^∞ y^b f(y) dy with the weight folded into the weights.

use crate::error::{domain, Error, Result};
use crate::spectral::tridiag::symmetric_tridiagonal_eigen;

/// Integrals over ℝ of even integrands are this multiple of the half-line value.
pub const EVEN_FACTOR: f64 = 2.0;
/// Geometric levels used by default; the innermost cell is y_max·2^{−160}.
pub const DEFAULT_LEVELS: usize = 160;
/// Panels of the outer cells are no wider than y_max / PANELS_PER_SPAN.
const PANELS_PER_SPAN: f64 = 160.0;
const PANEL_ORDER: usize = 10;
const JACOBI_ORDER: usize = 12;

/// Gauss–Legendre rule on [−1, 1] (Golub–Welsch).
pub fn gauss_legendre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidParameter("quadrature order must be positive".into()));
    }
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let eig = symmetric_tridiagonal_eigen(&vec![0.0; n], &off)?;
    let weights = (0..n).map(|j| 2.0 * eig.vectors[j * n].powi(2)).collect();
    Ok((eig.values, weights))
}

/// Gauss rule for ∫₀¹ y^b f(y) dy, b > −1 (Jacobi weight (1−x)^0 (1+x)^b mapped to [0,1]).
pub fn gauss_jacobi_unit(n: usize, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidParameter("quadrature order must be positive".into()));
    }
    if !(b > -1.0) || !b.is_finite() {
        return Err(domain("b", b, "b > -1"));
    }
    let mut diag = vec![0.0; n];
    diag[0] = b / (b + 2.0);
    for (k, d) in diag.iter_mut().enumerate().skip(1) {
        let t = 2.0 * k as f64 + b;
        *d = b * b / (t * (t + 2.0));
    }
    let off: Vec<f64> = (1..n)
        .map(|k| {
            let kf = k as f64;
            let t = 2.0 * kf + b;
            2.0 * kf * (kf + b) / (t * ((t + 1.0) * (t - 1.0)).sqrt())
        })
        .collect();
    let eig = symmetric_tridiagonal_eigen(&diag, &off)?;
    let nodes = eig.values.iter().map(|x| 0.5 * (1.0 + x)).collect();
    let weights = (0..n).map(|j| eig.vectors[j * n].powi(2) / (1.0 + b)).collect();
    Ok((nodes, weights))
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        values.iter().sum()
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

/// Node placement strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    /// Cells [y_max 2^{−i−1}, y_max 2^{−i}] for i < n, Gauss–Jacobi on the
    /// innermost cell [0, y_max 2^{−n}], composite Gauss–Legendre elsewhere.
    Geometric,
    /// y = y_max t^q with q = 4/(1+b) and n uniform Gauss–Legendre panels in t.
    GaussTransformed,
}

/// Nodes and weights approximating ∫₀^{y_max} y^b f(y) dy.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGrid {
    b: f64,
    y_max: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightedGrid {
    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ∫₀^{y_max} y^b f(y) dy.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(&y, &w)| w * f(y)).collect();
        pairwise_sum(&terms)
    }

    /// Fallible variant of [`WeightedGrid::integrate`].
    pub fn try_integrate(&self, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
        let mut terms = Vec::with_capacity(self.nodes.len());
        for (&y, &w) in self.nodes.iter().zip(&self.weights) {
            terms.push(w * f(y)?);
        }
        Ok(pairwise_sum(&terms))
    }

    /// ∫_ℝ |y|^b f(|y|) dy for even integrands.
    pub fn integrate_even(&self, f: impl Fn(f64) -> f64) -> f64 {
        EVEN_FACTOR * self.integrate(f)
    }

    /// The grid for y ↦ f(√λ y): nodes x/√λ and weights λ^{−(1+b)/2}·w.
    pub fn scaled(&self, lambda: f64) -> WeightedGrid {
        let r = lambda.sqrt();
        let factor = lambda.powf(-0.5 * (1.0 + self.b));
        WeightedGrid {
            b: self.b,
            y_max: self.y_max / r,
            nodes: self.nodes.iter().map(|x| x / r).collect(),
            weights: self.weights.iter().map(|w| w * factor).collect(),
        }
    }
}

/// Builds a grid for b ∈ (−1, 1). `n` counts geometric levels or transformed panels.
pub fn make_grid(b: f64, y_max: f64, n: usize, grading: Grading) -> Result<WeightedGrid> {
    if !(b > -1.0 && b < 1.0) {
        return Err(domain("b", b, "-1 < b < 1"));
    }
    if !(y_max > 1.0) || !y_max.is_finite() {
        return Err(domain("y_max", y_max, "y_max > 1"));
    }
    if n < 16 {
        return Err(Error::InvalidParameter(format!("grid size n = {n} must be at least 16")));
    }
    match grading {
        Grading::Geometric => power_weight_grid(b, y_max, n),
        Grading::GaussTransformed => transformed_grid(b, y_max, n),
    }
}

/// Geometric grid with the default level count.
pub fn default_grid(b: f64, y_max: f64) -> Result<WeightedGrid> {
    power_weight_grid(b, y_max, DEFAULT_LEVELS)
}

/// Geometric construction for any b > −1 and y_max > 0.
pub(crate) fn power_weight_grid(b: f64, y_max: f64, levels: usize) -> Result<WeightedGrid> {
    if !(b > -1.0) || !b.is_finite() {
        return Err(domain("b", b, "b > -1"));
    }
    if !(y_max > 0.0) || !y_max.is_finite() {
        return Err(domain("y_max", y_max, "y_max > 0"));
    }
    let (gl_x, gl_w) = gauss_legendre(PANEL_ORDER)?;
    let (gj_x, gj_w) = gauss_jacobi_unit(JACOBI_ORDER, b)?;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();

    let y0 = y_max * 0.5f64.powi(levels as i32);
    let scale = y0.powf(1.0 + b);
    for (x, w) in gj_x.iter().zip(&gj_w) {
        nodes.push(y0 * x);
        weights.push(scale * w);
    }
    let max_width = y_max / PANELS_PER_SPAN;
    for i in (0..levels).rev() {
        let lo = y_max * 0.5f64.powi(i as i32 + 1);
        let hi = if i == 0 { y_max } else { y_max * 0.5f64.powi(i as i32) };
        let panels = ((hi - lo) / max_width).ceil().max(1.0) as usize;
        let width = (hi - lo) / panels as f64;
        for p in 0..panels {
            let a = lo + p as f64 * width;
            let half = 0.5 * width;
            let mid = a + half;
            for (x, w) in gl_x.iter().zip(&gl_w) {
                let y = mid + half * x;
                nodes.push(y);
                weights.push(half * w * y.powf(b));
            }
        }
    }
    Ok(WeightedGrid {
        b,
        y_max,
        nodes,
        weights,
    })
}

fn transformed_grid(b: f64, y_max: f64, panels: usize) -> Result<WeightedGrid> {
    let (gl_x, gl_w) = gauss_legendre(PANEL_ORDER)?;
    let q = 4.0 / (1.0 + b);
    // y^b dy = y_max^{1+b} q t^{q(1+b)−1} dt = y_max^{1+b} q t³ dt
    let factor = y_max.powf(1.0 + b) * q;
    let width = 1.0 / panels as f64;
    let mut nodes = Vec::with_capacity(panels * PANEL_ORDER);
    let mut weights = Vec::with_capacity(panels * PANEL_ORDER);
    for p in 0..panels {
        let half = 0.5 * width;
        let mid = (p as f64 + 0.5) * width;
        for (x, w) in gl_x.iter().zip(&gl_w) {
            let t = mid + half * x;
            nodes.push(y_max * t.powf(q));
            weights.push(factor * half * w * t.powi(3));
        }
    }
    Ok(WeightedGrid {
        b,
        y_max,
        nodes,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    #[test]
    fn legendre_rule() {
        let (x, w) = gauss_legendre(10).unwrap();
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // exact for degree 19
        let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_rule_moments() {
        for &b in &[-0.9, -0.6, 0.0, 0.4, 2.5] {
            let (x, w) = gauss_jacobi_unit(12, b).unwrap();
            for p in 0..24 {
                let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p)).sum();
                let want = 1.0 / (b + p as f64 + 1.0);
                assert!((v / want - 1.0).abs() < 1e-13, "b={b} p={p}");
            }
        }
    }

    #[test]
    fn gamma_moments_both_gradings() {
        for &b in &[-0.9, -0.6, 0.0, 0.4, 0.95] {
            let want = gamma(1.0 + b) / 2f64.powf(1.0 + b);
            let g = make_grid(b, 40.0, DEFAULT_LEVELS, Grading::Geometric).unwrap();
            assert!(g.weights().iter().all(|&w| w > 0.0));
            let v = g.integrate(|y| (-2.0 * y).exp());
            assert!((v / want - 1.0).abs() < 1e-12, "b={b} v={v}");
            let t = make_grid(b, 40.0, 64, Grading::GaussTransformed).unwrap();
            let v = t.integrate(|y| (-2.0 * y).exp());
            assert!((v / want - 1.0).abs() < 1e-8, "transformed b={b} v={v}");
        }
    }

    #[test]
    fn singular_cell_is_exact_for_the_weight() {
        let g = make_grid(-0.6, 3.0, 16, Grading::Geometric).unwrap();
        let v = g.integrate(|_| 1.0);
        assert!((v - 3f64.powf(0.4) / 0.4).abs() < 1e-13);
    }

    #[test]
    fn scaling_maps_the_integral() {
        let g = default_grid(0.4, 40.0).unwrap();
        let lambda = 3.0;
        let a = g.scaled(lambda).integrate(|y| (-2.0 * lambda.sqrt() * y).exp());
        let b = lambda.powf(-0.7) * g.integrate(|y| (-2.0 * y).exp());
        assert!((a - b).abs() < 1e-15 * b);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_grid(1.0, 10.0, 20, Grading::Geometric).is_err());
        assert!(make_grid(0.0, 0.5, 20, Grading::Geometric).is_err());
        assert!(make_grid(0.0, 10.0, 8, Grading::Geometric).is_err());
    }
}
