//! Finite spectral model of a nonnegative self-adjoint operator: eigenvalues,
//! modal coefficient vectors, Sobolev norms, fractional powers and the kernel
//! projection.

mod operator;
mod spectrum;
pub mod tridiag;

pub use operator::{build_operator, EigenBasis, Operator, OperatorDescriptor};
pub use spectrum::{ModalVector, Spectrum};

