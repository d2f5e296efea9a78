use std::f64::consts::PI;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::spectrum::Spectrum;
use super::tridiag::symmetric_tridiagonal_eigen;
use crate::error::{Error, Result};

/// JSON-serializable description of an operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorDescriptor {
    /// −d²/dx² on (0, L) with zero boundary values: λ_j = (jπ/L)², j = 1..J.
    #[serde(rename = "dirichlet_laplacian_1d")]
    DirichletLaplacian1d { length: f64, modes: usize },
    /// −d²/dx² on (0, L) with zero flux: λ = 0, (π/L)², ..., ((J−1)π/L)².
    #[serde(rename = "neumann_laplacian_1d")]
    NeumannLaplacian1d { length: f64, modes: usize },
    /// Symmetric tridiagonal matrix. `lower_diag`, if given, must equal `off_diag`.
    Tridiagonal {
        diag: Vec<f64>,
        off_diag: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lower_diag: Option<Vec<f64>>,
    },
    /// A user-supplied list of eigenvalues.
    ExplicitEigenvalues { values: Vec<f64> },
}

/// Orthonormal eigenvectors of a matrix-backed operator; column j belongs to λ_j.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenBasis {
    n: usize,
    columns: Vec<f64>,
}

impl EigenBasis {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j * self.n..(j + 1) * self.n]
    }

    /// Modal coefficients (x, φ_j) of a vector in physical coordinates.
    pub fn to_modal(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|j| self.column(j).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Physical coordinates Σ_j c_j φ_j.
    pub fn from_modal(&self, c: &[f64]) -> Result<Vec<f64>> {
        if c.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: c.len(),
            });
        }
        let mut x = vec![0.0; self.n];
        for (j, cj) in c.iter().enumerate() {
            for (xi, v) in x.iter_mut().zip(self.column(j)) {
                *xi += cj * v;
            }
        }
        Ok(x)
    }

    /// max |VᵀV − I|.
    pub fn gram_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..self.n {
            for b in 0..self.n {
                let dot: f64 = self.column(a).iter().zip(self.column(b)).map(|(x, y)| x * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).abs());
            }
        }
        worst
    }
}

/// A built operator: its spectrum and, for matrices, the eigenvectors.
#[derive(Debug, Clone)]
pub struct Operator {
    pub spectrum: Arc<Spectrum>,
    pub basis: Option<EigenBasis>,
}

fn laplacian_params(length: f64, modes: usize) -> Result<()> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::InvalidParameter(format!("interval length {length} must be positive")));
    }
    if modes < 1 {
        return Err(Error::EmptySpectrum);
    }
    Ok(())
}

/// Builds the spectrum (and eigenbasis for matrices) of a descriptor.
pub fn build_operator(desc: &OperatorDescriptor) -> Result<Operator> {
    match desc {
        OperatorDescriptor::DirichletLaplacian1d { length, modes } => {
            laplacian_params(*length, *modes)?;
            let values = (1..=*modes).map(|j| (j as f64 * PI / length).powi(2)).collect();
            let label = format!("dirichlet_laplacian_1d(length={length}, modes={modes})");
            Ok(Operator {
                spectrum: Spectrum::new(values, label)?.shared(),
                basis: None,
            })
        }
        OperatorDescriptor::NeumannLaplacian1d { length, modes } => {
            laplacian_params(*length, *modes)?;
            let values = (0..*modes).map(|j| (j as f64 * PI / length).powi(2)).collect();
            let label = format!("neumann_laplacian_1d(length={length}, modes={modes})");
            Ok(Operator {
                spectrum: Spectrum::new(values, label)?.shared(),
                basis: None,
            })
        }
        OperatorDescriptor::Tridiagonal {
            diag,
            off_diag,
            lower_diag,
        } => {
            if let Some(lower) = lower_diag {
                if lower.len() != off_diag.len() {
                    return Err(Error::LengthMismatch {
                        expected: off_diag.len(),
                        found: lower.len(),
                    });
                }
                for (index, (a, b)) in off_diag.iter().zip(lower).enumerate() {
                    if a != b {
                        return Err(Error::NonSymmetric { index });
                    }
                }
            }
            let eig = symmetric_tridiagonal_eigen(diag, off_diag)?;
            let scale = eig.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            let snap = 64.0 * f64::EPSILON * scale * diag.len() as f64;
            let mut values = Vec::with_capacity(eig.values.len());
            for (index, &v) in eig.values.iter().enumerate() {
                if v < -snap {
                    return Err(Error::NegativeEigenvalue { index, value: v });
                }
                values.push(if v.abs() <= snap { 0.0 } else { v });
            }
            let label = format!("tridiagonal(n={})", diag.len());
            Ok(Operator {
                spectrum: Spectrum::new(values, label)?.shared(),
                basis: Some(EigenBasis {
                    n: diag.len(),
                    columns: eig.vectors,
                }),
            })
        }
        OperatorDescriptor::ExplicitEigenvalues { values } => {
            let label = format!("explicit_eigenvalues(n={})", values.len());
            Ok(Operator {
                spectrum: Spectrum::new(values.clone(), label)?.shared(),
                basis: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacians() {
        let op = build_operator(&OperatorDescriptor::DirichletLaplacian1d { length: PI, modes: 3 }).unwrap();
        let v = op.spectrum.eigenvalues();
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] - 4.0).abs() < 1e-14 && (v[2] - 9.0).abs() < 1e-13);
        assert_eq!(op.spectrum.kernel_dim(), 0);
        let op = build_operator(&OperatorDescriptor::NeumannLaplacian1d { length: PI, modes: 3 }).unwrap();
        assert_eq!(op.spectrum.kernel_dim(), 1);
        assert_eq!(op.spectrum.eigenvalues()[0], 0.0);
        assert!(build_operator(&OperatorDescriptor::DirichletLaplacian1d { length: PI, modes: 0 }).is_err());
        assert!(build_operator(&OperatorDescriptor::DirichletLaplacian1d { length: -1.0, modes: 2 }).is_err());
    }

    #[test]
    fn tridiagonal_matrix() {
        let desc = OperatorDescriptor::Tridiagonal {
            diag: vec![2.0, 2.0],
            off_diag: vec![-1.0],
            lower_diag: None,
        };
        let op = build_operator(&desc).unwrap();
        let v = op.spectrum.eigenvalues();
        assert!((v[0] - 1.0).abs() < 1e-15 && (v[1] - 3.0).abs() < 1e-15);
        assert!(op.basis.unwrap().gram_residual() < 1e-14);
        let bad = OperatorDescriptor::Tridiagonal {
            diag: vec![2.0, 2.0],
            off_diag: vec![-1.0],
            lower_diag: Some(vec![-0.5]),
        };
        assert_eq!(build_operator(&bad).unwrap_err(), Error::NonSymmetric { index: 0 });
        let neg = OperatorDescriptor::Tridiagonal {
            diag: vec![1.0, 1.0],
            off_diag: vec![2.0],
            lower_diag: None,
        };
        assert!(matches!(build_operator(&neg), Err(Error::NegativeEigenvalue { .. })));
    }

    #[test]
    fn singular_matrix_has_kernel() {
        // graph Laplacian of a path: constant vector in the kernel
        let desc = OperatorDescriptor::Tridiagonal {
            diag: vec![1.0, 2.0, 2.0, 1.0],
            off_diag: vec![-1.0; 3],
            lower_diag: None,
        };
        let op = build_operator(&desc).unwrap();
        assert_eq!(op.spectrum.kernel_dim(), 1);
        let basis = op.basis.unwrap();
        for &c in basis.column(0) {
            assert!((c - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"kind":"dirichlet_laplacian_1d","length":3.141592653589793,"modes":64}"#;
        let desc: OperatorDescriptor = serde_json::from_str(text).unwrap();
        assert_eq!(desc, OperatorDescriptor::DirichletLaplacian1d { length: PI, modes: 64 });
        assert_eq!(serde_json::to_string(&desc).unwrap(), text);
        let text = r#"{"kind":"explicit_eigenvalues","values":[1.0,4.0]}"#;
        let desc: OperatorDescriptor = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&desc).unwrap(), text);
    }
}
