//! Extension curves for fractional powers of nonnegative self-adjoint operators.
//!
//! For an operator with eigenpairs (λ_j, φ_j) and a non-integer order s > 0,
//! the curve
//!
//! ```text
//! P_s[u](y) = Σ_j ψ_s(√λ_j |y|) u_j φ_j,   ψ_s(y) = c_s |y|^s K_s(|y|)
//! ```
//!
//! starts at u, solves (D_b + L)^{⌈s⌉} U = 0 with D_b = −∂² − (b/y)∂ and
//! b = 1 − 2(s − ⌊s⌋), and carries L^s u in its weighted conormal derivative
//! at y = 0. This crate evaluates these curves mode by mode and checks the
//! identities they satisfy (energy, virial, traces, Taylor data, Fourier
//! norms) by quadrature, finite differences and a P1 finite-element
//! minimization.
//!
//! Modules, bottom up:
//!
//! * [`special`]: Gamma, K_ν, ψ_s and derivatives, closed-form constants.
//! * [`spectral`]: spectra, modal vectors, fractional powers, operator builders.
//! * [`extension`]: extension curves, traces, derivatives, Taylor data, ODE residuals.
//! * [`weighted`]: weighted quadrature, energies and the identity checks.
//! * [`variational`]: finite-element minimization and orthogonality.
//! * [`cli`]: configuration and the verification suite behind the `fracext` binary.

// `!(x > 0.0)` is the idiom for rejecting NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Coefficient tables keep all published digits.
#![allow(clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod extension;
pub mod numdiff;
pub mod report;
pub mod special;
pub mod spectral;
pub mod variational;
pub mod weighted;

pub use error::{Error, Result};
