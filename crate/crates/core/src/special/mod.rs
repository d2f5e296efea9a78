//! Special functions: Gamma/Beta, the Macdonald function K_ν, the profile
//! ψ_s with its derivatives, and the closed-form constants built on them.

pub mod bessel;
pub mod fourier;
pub mod gamma;
pub mod params;
pub mod psi;

pub use bessel::{bessel_k, bessel_k_pair_scaled, bessel_k_scaled};
pub use fourier::{closing_coefficients, psi_fourier, psi_weighted_l2_sq, seminorm_sq};
pub use gamma::{beta, binomial, factorial, gamma, ln_beta, ln_gamma};
pub use params::{dtn_constant_unit, profile_normalization, trace_constant, Constants, FracParams};
pub use psi::{max_deriv_order, psi, psi_deriv, psi_first_deriv, psi_lambda, psi_lambda_deriv};
