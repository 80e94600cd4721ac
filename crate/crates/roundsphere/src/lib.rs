//! Exact and numeric calculus for conformally covariant operators on the
//! round n-sphere.
//!
//! The exact lane works in rational arithmetic over canonical spherical
//! harmonic expansions and verifies operator identities with zero tolerance;
//! the numeric lane handles the conformal group, the closed-form bubble
//! family and constrained energy minimization in binary64.

pub mod error;
pub mod mono;
pub mod num;
pub mod op;
pub mod poly;
pub mod sphere;

pub use error::{Error, Result};
pub use num::Rat;
pub use op::GjmsOrder;
pub use poly::{Coeff, Poly};
pub use sphere::{integrate, omega, reduce, ExactFn, SphereFn, SphereIntegral};
