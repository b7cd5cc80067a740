//! Exact arithmetic: monomials, (Laurent) polynomials over ℚ, univariate helpers,
//! rational and integer matrices, and Poincaré series.

pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod series;
pub mod text;
pub mod univariate;

pub use monomial::Monomial;
pub use poly::{augmentation, poly_arith, ArithOp, Poly};
pub use series::{series_eval_at_one, PoincareSeries};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for an exact rational from two machine integers.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an exact integer-valued rational.
pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
