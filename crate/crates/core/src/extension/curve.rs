use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numdiff::{extrapolate_to_zero, profile_exponents};
use crate::special::{psi, FracParams};
use crate::spectral::{ModalVector, Spectrum};

/// Which transform produced a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    /// 𝒫_s[u].
    Positive,
    /// 𝒫_{−s}[ζ] = 𝒫_s[ℒ^{−s}ζ].
    Negative,
}

/// Samples of y ↦ 𝒫_s[u](y) per mode: `values[j][i]` = ψ_s(√λ_j y_i) u_j.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionCurve {
    params: FracParams,
    grid: Vec<f64>,
    values: Vec<Vec<f64>>,
    source: ModalVector,
    order: Order,
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() || grid.iter().any(|y| !(*y >= 0.0) || !y.is_finite()) {
        return Err(Error::InvalidGrid);
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid);
    }
    Ok(())
}

/// ψ_s(√λ y)·c, with kernel modes (λ = 0) carried as the constant c.
pub(crate) fn mode_value(s: f64, lambda: f64, c: f64, y: f64) -> Result<f64> {
    if lambda == 0.0 || c == 0.0 {
        return Ok(c);
    }
    Ok(c * psi(s, lambda.sqrt() * y)?)
}

impl ExtensionCurve {
    pub fn params(&self) -> &FracParams {
        &self.params
    }

    pub fn spectrum(&self) -> &Arc<Spectrum> {
        self.source.spectrum()
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Row j: the samples of mode j along the grid.
    pub fn mode(&self, j: usize) -> &[f64] {
        &self.values[j]
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// The vector u whose extension this is (ℒ^{−s}ζ for negative order).
    pub fn source(&self) -> &ModalVector {
        &self.source
    }

    pub fn order(&self) -> Order {
        self.order
    }

    /// 𝒫_s[u](y_i) as a modal vector.
    pub fn column(&self, i: usize) -> ModalVector {
        let coeffs = self.values.iter().map(|row| row[i]).collect();
        ModalVector::new(self.source.spectrum().clone(), coeffs).expect("column matches spectrum")
    }

    /// CSV: a `# s=..., b=..., d_s=...` line, header `y,mode_1,...`, one row per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# s={:.16e}, b={:.16e}, d_s={:.16e}",
            self.params.s(),
            self.params.b(),
            self.params.d_s()
        );
        out.push('y');
        for j in 1..=self.values.len() {
            let _ = write!(out, ",mode_{j}");
        }
        out.push('\n');
        for (i, y) in self.grid.iter().enumerate() {
            let _ = write!(out, "{y:.16e}");
            for row in &self.values {
                let _ = write!(out, ",{:.16e}", row[i]);
            }
            out.push('\n');
        }
        out
    }

    /// JSON object {"s","b","d_s","order","grid","values"}; `values` is one row per mode.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct View<'a> {
            s: f64,
            b: f64,
            d_s: f64,
            order: Order,
            grid: &'a [f64],
            values: &'a [Vec<f64>],
        }
        serde_json::to_string(&View {
            s: self.params.s(),
            b: self.params.b(),
            d_s: self.params.d_s(),
            order: self.order,
            grid: &self.grid,
            values: &self.values,
        })
        .expect("curve serializes")
    }
}

fn build(u: &ModalVector, params: FracParams, grid: &[f64], order: Order) -> Result<ExtensionCurve> {
    check_grid(grid)?;
    let s = params.s();
    let modes: Vec<(f64, f64)> = u
        .spectrum()
        .eigenvalues()
        .iter()
        .copied()
        .zip(u.coeffs().iter().copied())
        .collect();
    let rows: Vec<Result<Vec<f64>>> = modes
        .par_iter()
        .map(|&(lambda, c)| grid.iter().map(|&y| mode_value(s, lambda, c, y)).collect())
        .collect();
    let values = rows.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ExtensionCurve {
        params,
        grid: grid.to_vec(),
        values,
        source: u.clone(),
        order,
    })
}

/// 𝒫_s[u] sampled on `grid` (y ≥ 0, strictly increasing).
pub fn extend(u: &ModalVector, s: f64, grid: &[f64]) -> Result<ExtensionCurve> {
    build(u, FracParams::new(s)?, grid, Order::Positive)
}

/// 𝒫_{−s}[ζ] = 𝒫_s[ℒ^{−s}ζ]; kernel modes of ζ must vanish.
pub fn extend_negative(zeta: &ModalVector, s: f64, grid: &[f64]) -> Result<ExtensionCurve> {
    let params = FracParams::new(s)?;
    let u = zeta.apply_power(-s)?;
    build(&u, params, grid, Order::Negative)
}

/// Geometric grid y_min r^i, i = 0..n−1, ending at y_max.
pub fn geometric_grid(y_min: f64, y_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(y_min > 0.0) || !(y_max > y_min) || !y_max.is_finite() || n < 2 {
        return Err(Error::InvalidGrid);
    }
    let ratio = (y_max / y_min).ln() / (n - 1) as f64;
    let mut grid: Vec<f64> = (0..n).map(|i| y_min * (ratio * i as f64).exp()).collect();
    grid[n - 1] = y_max;
    Ok(grid)
}

/// Default grid for a spectrum: y_min = 1e−4/√λ_max up to y_max = 40/√λ_min (positive part).
pub fn default_curve_grid(spectrum: &Spectrum, n: usize) -> Result<Vec<f64>> {
    let lambda_max = spectrum.lambda_max();
    let lambda_min = spectrum.lambda_min_positive().unwrap_or(1.0);
    let lambda_max = if lambda_max > 0.0 { lambda_max } else { 1.0 };
    geometric_grid(1e-4 / lambda_max.sqrt(), 40.0 / lambda_min.sqrt(), n)
}

/// Limit y → 0 of the sampled curve. Uses the exact column when y = 0 is in
/// the grid; otherwise extrapolates each mode from the three smallest
/// abscissae, eliminating the leading exponents of ψ_s(√λ y) − 1.
pub fn trace0(curve: &ExtensionCurve) -> Result<ModalVector> {
    let grid = curve.grid();
    if grid[0] == 0.0 {
        return Ok(curve.column(0));
    }
    let spectrum = curve.spectrum();
    let lambda_max = spectrum.lambda_max();
    let required = if lambda_max > 0.0 { 1e-3 / lambda_max.sqrt() } else { f64::INFINITY };
    if grid[0] > required || grid.len() < 3 {
        return Err(Error::GridTooCoarse {
            y_min: grid[0],
            required,
        });
    }
    let exponents = profile_exponents(curve.params().s(), 2);
    let mut coeffs = Vec::with_capacity(spectrum.len());
    for (j, &lambda) in spectrum.eigenvalues().iter().enumerate() {
        let row = curve.mode(j);
        if lambda == 0.0 || row.iter().all(|v| *v == 0.0) {
            coeffs.push(row[0]);
            continue;
        }
        coeffs.push(extrapolate_to_zero(&grid[..3], &row[..3], &exponents)?);
    }
    ModalVector::new(spectrum.clone(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vector(eigs: &[f64], c: &[f64]) -> ModalVector {
        ModalVector::new(Spectrum::new(eigs.to_vec(), "t").unwrap().shared(), c.to_vec()).unwrap()
    }

    #[test]
    fn single_mode_closed_form() {
        let u = vector(&[1.0], &[1.0]);
        let grid = [0.0, 0.5, 1.0, 2.0];
        let c = extend(&u, 0.5, &grid).unwrap();
        for (i, y) in grid.iter().enumerate() {
            assert!((c.mode(0)[i] - (-y).exp()).abs() < 1e-15);
        }
        assert_eq!(c.column(0), u);
    }

    #[test]
    fn kernel_mode_is_constant() {
        let u = vector(&[0.0, 1.0], &[1.0, 1.0]);
        let c = extend(&u, 0.5, &[0.1, 1.0]).unwrap();
        assert_eq!(c.mode(0), &[1.0, 1.0]);
        assert!((c.mode(1)[1] - (-1f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn negative_order() {
        let zeta = vector(&[4.0], &[2.0]);
        let c = extend_negative(&zeta, 0.5, &[0.3]).unwrap();
        assert!((c.mode(0)[0] - (-0.6f64).exp()).abs() < 1e-15);
        let bad = vector(&[0.0, 1.0], &[1.0, 0.0]);
        assert!(matches!(extend_negative(&bad, 0.5, &[0.3]), Err(Error::KernelMode { .. })));
    }

    #[test]
    fn trace_extrapolation() {
        let u = vector(&[1.0], &[1.0]);
        let c = extend(&u, 0.3, &[2.5e-5, 5e-5, 1e-4, 1.0]).unwrap();
        let t = trace0(&c).unwrap();
        assert!((t.coeffs()[0] - 1.0).abs() < 1e-6);
        let coarse = extend(&u, 0.3, &[0.1, 0.2, 0.4]).unwrap();
        assert!(matches!(trace0(&coarse), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn grids_and_validation() {
        let g = geometric_grid(1e-4, 40.0, 50).unwrap();
        assert_eq!(g.len(), 50);
        assert!((g[0] - 1e-4).abs() < 1e-20 && g[49] == 40.0);
        let u = vector(&[1.0], &[1.0]);
        assert_eq!(extend(&u, 0.5, &[]), Err(Error::InvalidGrid));
        assert_eq!(extend(&u, 0.5, &[1.0, 0.5]), Err(Error::InvalidGrid));
        assert_eq!(extend(&u, 2.0, &[1.0]), Err(Error::IntegerOrder(2.0)));
    }

    #[test]
    fn csv_and_json() {
        let u = vector(&[1.0, 4.0], &[1.0, 0.0]);
        let c = extend(&u, 0.5, &[0.0, 1.0]).unwrap();
        let csv = c.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# s=5.0000000000000000e-1, b=0.0000000000000000e0, d_s="));
        assert_eq!(lines[1], "y,mode_1,mode_2");
        assert_eq!(lines[2], "0.0000000000000000e0,1.0000000000000000e0,0.0000000000000000e0");
        let json: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(json["s"], 0.5);
        assert_eq!(json["values"][0][0], 1.0);
        assert_eq!(json["grid"][1], 1.0);
    }
}
