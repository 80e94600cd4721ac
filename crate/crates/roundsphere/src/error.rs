//! Crate-wide error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operands live on spheres of different dimension.
    DimensionMismatch { left: usize, right: usize },
    /// Sphere dimension outside the supported range.
    UnsupportedDimension { n: usize },
    /// GJMS order violates `2k < n`.
    InvalidOrder { n: usize, k: usize },
    /// The density weight makes the operator normalization singular.
    SingularWeight(String),
    /// A point handed to a conformal map is not on the unit sphere.
    OffSphere { norm: f64 },
    /// Positivity required but violated.
    NotPositive(String),
    /// An iteration failed to converge.
    NoConvergence { residual: f64, iterations: usize },
    /// Invalid run configuration.
    InvalidConfig(String),
    /// A closed-form manipulation left the supported function class.
    OutOfClass(String),
    /// Test direction violates the tangency constraint.
    Tangency { inner_product: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: S^{left} vs S^{right}")
            }
            Error::UnsupportedDimension { n } => {
                write!(f, "sphere dimension n = {n} outside supported range [5, 9]")
            }
            Error::InvalidOrder { n, k } => {
                write!(f, "order 2k = {} must be below n = {n}", 2 * k)
            }
            Error::SingularWeight(s) => write!(f, "singular weight: {s}"),
            Error::OffSphere { norm } => {
                write!(f, "point is off the unit sphere (|zeta| = {norm})")
            }
            Error::NotPositive(s) => write!(f, "positivity violated: {s}"),
            Error::NoConvergence {
                residual,
                iterations,
            } => write!(
                f,
                "no convergence after {iterations} iterations (residual {residual:.3e})"
            ),
            Error::InvalidConfig(s) => write!(f, "invalid configuration: {s}"),
            Error::OutOfClass(s) => write!(f, "outside the closed-form class: {s}"),
            Error::Tangency { inner_product } => write!(
                f,
                "test direction violates tangency (inner product {inner_product:.3e})"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
