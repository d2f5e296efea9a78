use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Nondecreasing nonnegative eigenvalues of a self-adjoint operator,
/// truncated to finitely many modes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    kernel_dim: usize,
    label: String,
}

impl Spectrum {
    /// Sorts (stably) and validates the eigenvalues. Exact zeros form the kernel.
    pub fn new(mut eigenvalues: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        for (index, &value) in eigenvalues.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::InvalidParameter(format!("eigenvalue {index} is not finite")));
            }
            if value < 0.0 {
                return Err(Error::NegativeEigenvalue { index, value });
            }
        }
        eigenvalues.sort_by(f64::total_cmp);
        let kernel_dim = eigenvalues.iter().take_while(|&&v| v == 0.0).count();
        Ok(Spectrum {
            eigenvalues,
            kernel_dim,
            label: label.into(),
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Number of leading zero eigenvalues.
    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Smallest positive eigenvalue, if any.
    pub fn lambda_min_positive(&self) -> Option<f64> {
        self.eigenvalues.get(self.kernel_dim).copied()
    }

    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// Wraps in an [`Arc`] for sharing between vectors.
    pub fn shared(self) -> Arc<Spectrum> {
        Arc::new(self)
    }
}

/// λ^t with the conventions 0^0 = 1 and 0^t = 0 for t > 0; `None` for 0^t, t < 0.
pub(crate) fn eigen_power(lambda: f64, t: f64) -> Option<f64> {
    if lambda == 0.0 {
        if t == 0.0 {
            Some(1.0)
        } else if t > 0.0 {
            Some(0.0)
        } else {
            None
        }
    } else if t == 0.0 {
        Some(1.0)
    } else {
        Some(lambda.powf(t))
    }
}

/// Coefficients u_j = (u, φ_j) of a vector against a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalVector {
    coeffs: Vec<f64>,
    spectrum: Arc<Spectrum>,
}

impl ModalVector {
    pub fn new(spectrum: Arc<Spectrum>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != spectrum.len() {
            return Err(Error::LengthMismatch {
                expected: spectrum.len(),
                found: coeffs.len(),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("non-finite coefficient".into()));
        }
        Ok(ModalVector { coeffs, spectrum })
    }

    pub fn zeros(spectrum: Arc<Spectrum>) -> Self {
        let n = spectrum.len();
        ModalVector {
            coeffs: vec![0.0; n],
            spectrum,
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn spectrum(&self) -> &Arc<Spectrum> {
        &self.spectrum
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_kernel(&self, t: f64) -> Result<()> {
        if t < 0.0 {
            for index in 0..self.spectrum.kernel_dim() {
                let value = self.coeffs[index];
                if value != 0.0 {
                    return Err(Error::KernelMode { index, value });
                }
            }
        }
        Ok(())
    }

    /// ‖u‖_{H^σ} = (Σ_j λ_j^σ u_j²)^{1/2}; kernel modes count only at σ = 0.
    pub fn sobolev_norm(&self, sigma: f64) -> Result<f64> {
        Ok(self.sobolev_norm_sq(sigma)?.sqrt())
    }

    /// Square of [`ModalVector::sobolev_norm`].
    pub fn sobolev_norm_sq(&self, sigma: f64) -> Result<f64> {
        self.check_kernel(sigma)?;
        let mut acc = 0.0;
        for (lambda, u) in self.spectrum.eigenvalues().iter().zip(&self.coeffs) {
            acc += eigen_power(*lambda, sigma).unwrap_or(0.0) * u * u;
        }
        Ok(acc)
    }

    /// L^t u, coefficient-wise λ_j^t u_j.
    pub fn apply_power(&self, t: f64) -> Result<ModalVector> {
        self.check_kernel(t)?;
        let coeffs = self
            .spectrum
            .eigenvalues()
            .iter()
            .zip(&self.coeffs)
            .map(|(lambda, u)| eigen_power(*lambda, t).unwrap_or(0.0) * u)
            .collect();
        Ok(ModalVector {
            coeffs,
            spectrum: self.spectrum.clone(),
        })
    }

    /// (Πu, u − Πu) with Π the projection onto the kernel.
    pub fn kernel_split(&self) -> (ModalVector, ModalVector) {
        let k = self.spectrum.kernel_dim();
        let mut pi = vec![0.0; self.len()];
        let mut perp = self.coeffs.clone();
        for j in 0..k {
            pi[j] = self.coeffs[j];
            perp[j] = 0.0;
        }
        (
            ModalVector {
                coeffs: pi,
                spectrum: self.spectrum.clone(),
            },
            ModalVector {
                coeffs: perp,
                spectrum: self.spectrum.clone(),
            },
        )
    }

    /// ⟨ζ, v⟩ = Σ_j ζ_j v_j, with `self` as ζ.
    pub fn duality_pairing(&self, v: &ModalVector) -> Result<f64> {
        self.check_compatible(v)?;
        Ok(self.coeffs.iter().zip(&v.coeffs).map(|(a, b)| a * b).sum())
    }

    pub(crate) fn check_compatible(&self, other: &ModalVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        if !Arc::ptr_eq(&self.spectrum, &other.spectrum)
            && self.spectrum.eigenvalues() != other.spectrum.eigenvalues()
        {
            return Err(Error::SpectrumMismatch);
        }
        Ok(())
    }
}
