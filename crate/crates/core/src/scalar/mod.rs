//! Exact scalars: big rationals, the multi-quadratic field `Q(√2, √3, √5)` and
//! angles stored as rational multiples of π.

mod angle;
mod mq;
mod parse;

pub use angle::{exact_cos, exact_cos_sq, exact_sin_sq, Angle};
pub use mq::{Basis, Mq};
pub use parse::{parse_angle, parse_mq, parse_rational};

use num_bigint::BigInt;

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub(crate) fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}
