//! Weighted calculus on the half line: quadrature against y^b, even
//! profiles with their (𝔻_b+λ)-powers, mode and curve energies, and the
//! identity checks built on them.

mod checks;
mod energy;
pub mod profile;
pub mod quadrature;

pub use checks::*;
pub use energy::{
    curve_energy, curve_energy_of, mode_energy, mode_energy_auto, mode_inner_product, profile_grid, profiles_energy,
};
pub use profile::{BesselProfile, Bump, EvenProfile, GaussTerm, GaussianMixture, SampledProfile, SquareJet};
pub use quadrature::{default_grid, make_grid, Grading, WeightedGrid, DEFAULT_LEVELS, EVEN_FACTOR};
