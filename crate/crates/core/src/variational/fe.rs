//! Piecewise-linear elements for the weighted form
//! 2∫₀^{y_max} y^b (ψ'² + λψ²) dy on a graded grid.

use std::fmt::Write as _;

use crate::error::{domain, Error, Result};
use crate::special::{psi, FracParams};
use crate::weighted::quadrature::{gauss_jacobi_unit, gauss_legendre, pairwise_sum, EVEN_FACTOR};

/// Far-field cutoff y_max = FAR_FIELD/√λ.
pub const FAR_FIELD: f64 = 40.0;
const ELEMENT_ORDER: usize = 10;

/// Nodes y_i = y_max (i/n)², i = 0..=n, with y_max = 40/√λ.
pub fn graded_nodes(lambda: f64, n: usize) -> Result<Vec<f64>> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain("lambda", lambda, "lambda > 0"));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 elements, got {n}")));
    }
    let y_max = FAR_FIELD / lambda.sqrt();
    Ok((0..=n)
        .map(|i| {
            let t = i as f64 / n as f64;
            y_max * t * t
        })
        .collect())
}

/// Element quadrature: Gauss–Jacobi on the element touching y = 0, where it
/// is exact for y^b times a polynomial, Gauss–Legendre with y^b in the
/// weights elsewhere.
struct ElementRules {
    b: f64,
    jacobi: (Vec<f64>, Vec<f64>),
    legendre: (Vec<f64>, Vec<f64>),
}

impl ElementRules {
    fn new(b: f64) -> Result<Self> {
        Ok(ElementRules {
            b,
            jacobi: gauss_jacobi_unit(ELEMENT_ORDER, b)?,
            legendre: gauss_legendre(ELEMENT_ORDER)?,
        })
    }

    /// (y, w) pairs approximating ∫_a^c y^b f(y) dy.
    fn points(&self, a: f64, c: f64) -> Vec<(f64, f64)> {
        let h = c - a;
        if a == 0.0 {
            let scale = h.powf(1.0 + self.b);
            self.jacobi.0.iter().zip(&self.jacobi.1).map(|(x, w)| (h * x, scale * w)).collect()
        } else {
            let mid = 0.5 * (a + c);
            self.legendre
                .0
                .iter()
                .zip(&self.legendre.1)
                .map(|(x, w)| {
                    let y = mid + 0.5 * h * x;
                    (y, 0.5 * h * w * y.powf(self.b))
                })
                .collect()
        }
    }

    /// ∫_a^c y^b dy from the power-rule antiderivative.
    fn weight_moment(&self, a: f64, c: f64) -> f64 {
        let p = 1.0 + self.b;
        (c.powf(p) - a.powf(p)) / p
    }
}

/// Tridiagonal matrix of the form on all nodes: diag[i], off[i] = A_{i,i+1}.
struct System {
    diag: Vec<f64>,
    off: Vec<f64>,
}

fn assemble(nodes: &[f64], lambda: f64, rules: &ElementRules) -> System {
    let n = nodes.len();
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n - 1];
    for e in 0..n - 1 {
        let (a, c) = (nodes[e], nodes[e + 1]);
        let h = c - a;
        let stiff = rules.weight_moment(a, c) / (h * h);
        let (mut m00, mut m01, mut m11) = (0.0, 0.0, 0.0);
        for (y, w) in rules.points(a, c) {
            let p0 = (c - y) / h;
            let p1 = (y - a) / h;
            m00 += w * p0 * p0;
            m01 += w * p0 * p1;
            m11 += w * p1 * p1;
        }
        diag[e] += stiff + lambda * m00;
        diag[e + 1] += stiff + lambda * m11;
        off[e] += -stiff + lambda * m01;
    }
    System { diag, off }
}

/// Thomas algorithm for a symmetric tridiagonal system.
fn solve_tridiagonal(diag: &[f64], off: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut pivot = diag[0];
    if !(pivot.abs() > 0.0) {
        return Err(Error::InvalidParameter("singular finite-element system".into()));
    }
    c[0] = if n > 1 { off[0] / pivot } else { 0.0 };
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - off[i - 1] * c[i - 1];
        if !(pivot.abs() > 0.0) {
            return Err(Error::InvalidParameter("singular finite-element system".into()));
        }
        if i + 1 < n {
            c[i] = off[i] / pivot;
        }
        d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / pivot;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Nodal values of a piecewise-linear profile together with its form data.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileFE {
    nodes: Vec<f64>,
    values: Vec<f64>,
    b: f64,
    lambda: f64,
}

impl ProfileFE {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Value at node 0.
    pub fn trace(&self) -> f64 {
        self.values[0]
    }

    /// Linear interpolation; 0 beyond the last node.
    pub fn value_at(&self, y: f64) -> f64 {
        let y = y.abs();
        let last = *self.nodes.last().unwrap();
        if y >= last {
            return if y == last { *self.values.last().unwrap() } else { 0.0 };
        }
        let i = self.nodes.partition_point(|&k| k <= y) - 1;
        let t = (y - self.nodes[i]) / (self.nodes[i + 1] - self.nodes[i]);
        (1.0 - t) * self.values[i] + t * self.values[i + 1]
    }

    /// 2∫₀^{y_max} y^b (ψ'² + λψ²) dy, summed element by element.
    pub fn energy(&self) -> Result<f64> {
        let rules = ElementRules::new(self.b)?;
        let mut parts = Vec::with_capacity(self.nodes.len());
        for e in 0..self.nodes.len() - 1 {
            let (a, c) = (self.nodes[e], self.nodes[e + 1]);
            let (va, vc) = (self.values[e], self.values[e + 1]);
            let slope = (vc - va) / (c - a);
            let mut mass = 0.0;
            for (y, w) in rules.points(a, c) {
                let v = va + slope * (y - a);
                mass += w * v * v;
            }
            parts.push(rules.weight_moment(a, c) * slope * slope + self.lambda * mass);
        }
        Ok(EVEN_FACTOR * pairwise_sum(&parts))
    }

    /// ‖ψ_h − ψ_{s,λ}‖_{L^{2;b}(ℝ)}, the closed form taken as 0 beyond the grid.
    pub fn weighted_l2_error(&self, s: f64) -> Result<f64> {
        let r = self.lambda.sqrt();
        let rules = ElementRules::new(self.b)?;
        let mut parts = Vec::with_capacity(self.nodes.len());
        for e in 0..self.nodes.len() - 1 {
            let (a, c) = (self.nodes[e], self.nodes[e + 1]);
            let mut acc = 0.0;
            for (y, w) in rules.points(a, c) {
                let d = self.value_at(y) - self.values[0] * psi(s, r * y)?;
                acc += w * d * d;
            }
            parts.push(acc);
        }
        Ok((EVEN_FACTOR * pairwise_sum(&parts)).sqrt())
    }

    /// CSV rows `y,fe,exact` with exact = ψ_s(√λ y) times the trace.
    pub fn to_csv(&self, s: f64) -> Result<String> {
        let r = self.lambda.sqrt();
        let mut out = String::from("y,fe,exact\n");
        for (y, v) in self.nodes.iter().zip(&self.values) {
            let exact = self.values[0] * psi(s, r * y)?;
            let _ = writeln!(out, "{y:.16e},{v:.16e},{exact:.16e}");
        }
        Ok(out)
    }
}

fn check_nodes(nodes: &[f64]) -> Result<()> {
    if nodes.len() < 3 || nodes[0] != 0.0 || nodes.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid);
    }
    Ok(())
}

/// Minimizer of 2∫₀^{y_max} y^b(ψ'² + λψ²) over P1 functions on `nodes`
/// (starting at 0) with ψ(0) = trace and ψ(y_max) = 0, b = 1 − 2s.
pub fn minimize_with_trace(s: f64, lambda: f64, nodes: &[f64], trace: f64) -> Result<(f64, ProfileFE)> {
    let params = FracParams::new(s)?;
    if params.ceil() != 1 {
        return Err(domain("s", s, "0 < s < 1"));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain("lambda", lambda, "lambda > 0"));
    }
    check_nodes(nodes)?;
    let b = params.b();
    let rules = ElementRules::new(b)?;
    let sys = assemble(nodes, lambda, &rules);
    let n = nodes.len();
    // interior unknowns 1..n−1; node 0 carries the trace, node n−1 is 0
    let diag = &sys.diag[1..n - 1];
    let off = &sys.off[1..n - 2];
    let mut rhs = vec![0.0; n - 2];
    rhs[0] = -sys.off[0] * trace;
    let interior = solve_tridiagonal(diag, off, &rhs)?;
    let mut values = Vec::with_capacity(n);
    values.push(trace);
    values.extend(interior);
    values.push(0.0);
    let profile = ProfileFE {
        nodes: nodes.to_vec(),
        values,
        b,
        lambda,
    };
    Ok((profile.energy()?, profile))
}

/// [`minimize_with_trace`] with unit trace: the discrete counterpart of 2 d_s λ^s.
pub fn minimize_profile(s: f64, lambda: f64, nodes: &[f64]) -> Result<(f64, ProfileFE)> {
    minimize_with_trace(s, lambda, nodes, 1.0)
}
