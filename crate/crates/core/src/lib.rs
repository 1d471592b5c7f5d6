//! Rotation pairs, holonomy groups and orbit density for rank-4 bundles on tori.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`]: exact arithmetic in `Q(√2, √3, √5)` and rational angles.
//! * [`linalg`]: small fixed-size matrices over any [`Real`] scalar.
//! * [`rotation`]: the rotation pair `(C'_x, C'_y)` built from an angle triplet
//!   and the exact trace of its product.
//! * [`poly`]: rational polynomials, minimal polynomials of the product's
//!   non-unit eigenvalue, cyclotomic detection and the Chebyshev pipeline.
//! * [`holonomy`]: breadth-first group closure, finite-group classification,
//!   orbit sets and the shipped catalog of finite triplets.
//! * [`density`]: equal-area sphere grids and coverage reports for orbits.
//! * [`transport`]: `SO(4)` lifts, logarithms, parallel transport along
//!   axis-aligned loops and the induced action on self-dual 2-vectors.
//! * [`tables`]: regeneration of the trace / minimal-polynomial case tables.
//!
//! Numeric code is generic over the scalar type through [`Real`]; the aliases
//! below fix it to `f64`, which is what the CLI and the tables use.

pub mod density;
pub mod error;
pub mod holonomy;
pub mod linalg;
pub mod poly;
pub mod rotation;
pub mod scalar;
pub mod tables;
pub mod transport;

pub use error::{Error, Result};
pub use linalg::Real;
pub use scalar::{Angle, Mq, Rational};

/// Exact rational polynomial.
pub type RationalPoly = poly::Poly<Rational>;
/// Polynomial with coefficients in `Q(√2, √3, √5)`.
pub type QuadExtPoly = poly::Poly<Mq>;

pub type Vec3 = linalg::Vector<f64, 3>;
pub type Vec4 = linalg::Vector<f64, 4>;
pub type Mat3 = linalg::Matrix<f64, 3>;
pub type Mat4 = linalg::Matrix<f64, 4>;

pub type Rotation3 = rotation::Rotation3<f64>;
pub type RotationPair = rotation::RotationPair<f64>;
pub type GroupClosure = holonomy::GroupClosure<f64>;
pub type OrbitSet = holonomy::OrbitSet<f64>;
pub type WordOrbit = density::WordOrbit<f64>;
pub type SO4Matrix = transport::So4<f64>;
pub type Skew4 = transport::Skew4<f64>;
pub type ConnectionSpec = transport::ConnectionSpec<f64>;
