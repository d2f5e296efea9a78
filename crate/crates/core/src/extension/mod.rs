//! The extension curve y ↦ 𝒫_s[u](y) = Σ_j ψ_s(√λ_j |y|) u_j φ_j, its
//! negative-order variant, boundary traces, Taylor data at y = 0 and the
//! residual of the extension equation.

mod boundary;
mod checks;
mod curve;
mod ode;

pub use boundary::{
    conormal_trace, derivative_at_origin, derivative_curve, taylor_expand, taylor_remainder, ConormalMethod,
    DerivativeCurve, RemainderMethod,
};
pub use checks::{commutation_check, nonexpansive_check};
pub use curve::{default_curve_grid, extend, extend_negative, geometric_grid, trace0, ExtensionCurve, Order};
pub use ode::{holder_slope, mode_ode_residual, ode_residual, recurrence_check, OdeScheme, RecurrenceScheme};
