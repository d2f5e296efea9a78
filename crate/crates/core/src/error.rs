use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order s = {0} must be positive and finite")]
    InvalidOrder(f64),

    #[error("order s = {0} is an integer; the extension requires a non-integer order")]
    IntegerOrder(f64),

    #[error("argument {name} = {value} is outside the domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("K_{nu}({x}) overflows double precision")]
    Overflow { nu: f64, x: f64 },

    #[error("derivative order {order} is not admissible for s = {s} (allowed 1..={max})")]
    DerivativeOrder { order: usize, s: f64, max: usize },

    #[error("kernel mode {index} has nonzero coefficient {value}; negative powers are undefined there")]
    KernelMode { index: usize, value: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("vectors refer to different spectra")]
    SpectrumMismatch,

    #[error("spectrum must contain at least one mode")]
    EmptySpectrum,

    #[error("eigenvalue {value} at position {index} is negative")]
    NegativeEigenvalue { index: usize, value: f64 },

    #[error("matrix is not symmetric at off-diagonal position {index}")]
    NonSymmetric { index: usize },

    #[error("grid is empty or not strictly increasing")]
    InvalidGrid,

    #[error("grid starts at y = {y_min}, above the y = {required} needed for extrapolation to 0")]
    GridTooCoarse { y_min: f64, required: f64 },

    #[error("y = {y} is too small for the finite-difference stencil (need y >= {min})")]
    StencilTooWide { y: f64, min: f64 },

    #[error("profile provides no operator powers for energy order k = {k}")]
    MissingAnalyticPower { k: usize },

    #[error("iteration failed to converge in {0}")]
    NoConvergence(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        expected,
    }
}
