//! Exact arithmetic, local certificates and group-theoretic checks for
//! unramified double covers of symmetric-group extensions.
//!
//! The polynomial and Clifford layers are generic over a scalar ring; the
//! concrete exact instantiations used everywhere else are the aliases below.

pub mod error;
pub mod exactnum;
pub mod families;
pub mod localarith;
pub mod permcover;
pub mod polyring;
pub mod ratcrit;
pub mod scalar;
pub(crate) mod ser;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use polyring::Poly;
pub use scalar::{Field, IntegralDomain, Ring};

/// Reduced fraction of arbitrary-precision integers.
pub type ExactRational = BigRational;
/// Dense polynomial over the integers.
pub type IntPolynomial = Poly<BigInt>;
/// Dense polynomial over the rationals.
pub type RatPolynomial = Poly<BigRational>;
/// Clifford element with exact coefficients in Q(sqrt 2).
pub type CliffordElement = permcover::Multivector<permcover::QSqrt2>;
