use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{int, rat, Mq, Rational};
use crate::error::{Error, Result};

/// Angle `q·π` with `q` rational and normalised to `[0, 2)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Angle {
    q: Rational,
}

impl Angle {
    pub fn new(q: Rational) -> Self {
        let two = int(2);
        let mut q = q % &two;
        if q.is_negative() {
            q += two;
        }
        Angle { q }
    }

    /// The angle `(num/den)·π`.
    pub fn pi_frac(num: i64, den: i64) -> Self {
        Angle::new(rat(num, den))
    }

    pub fn zero() -> Self {
        Angle::new(Rational::zero())
    }

    pub fn pi() -> Self {
        Angle::new(Rational::one())
    }

    /// Multiple of π, in `[0, 2)`.
    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn radians(&self) -> f64 {
        self.q.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn half(&self) -> Angle {
        Angle::new(&self.q / int(2))
    }

    pub fn double(&self) -> Angle {
        Angle::new(&self.q * int(2))
    }

    /// `(cos θ, sin θ)` in double precision.
    ///
    /// Uses the exact field value when one exists so that, e.g., `sin π` is
    /// exactly zero rather than `1.2e-16`.
    pub fn cos_sin(&self) -> (f64, f64) {
        match (exact_cos(self), exact_sin_sq(self)) {
            (Ok(c), Ok(s2)) => {
                let sin_sign = if self.q > Rational::one() { -1.0 } else { 1.0 };
                (c.to_f64(), sin_sign * s2.to_f64().max(0.0).sqrt())
            }
            _ => {
                let r = self.radians();
                (r.cos(), r.sin())
            }
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_integer() {
            write!(f, "{}", self.q.numer())
        } else {
            write!(f, "{}/{}", self.q.numer(), self.q.denom())
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({self}·π)")
    }
}

impl From<Angle> for String {
    fn from(a: Angle) -> String {
        a.to_string()
    }
}

impl TryFrom<String> for Angle {
    type Error = Error;
    fn try_from(s: String) -> Result<Angle> {
        super::parse_angle(&s)
    }
}

const SUPPORTED_DENOMINATORS: [u32; 9] = [1, 2, 3, 4, 5, 6, 8, 10, 12];

fn check_supported(theta: &Angle) -> Result<()> {
    let den = theta.q.denom();
    if SUPPORTED_DENOMINATORS
        .iter()
        .any(|&d| den == &BigInt::from(d))
    {
        Ok(())
    } else {
        Err(Error::UnsupportedAngle(theta.to_string()))
    }
}

/// Exact `cos θ` in `Q(√2, √3, √5)`.
///
/// Denominators 8 and 10 are accepted only at even numerators: `cos(π/8)` and
/// `cos(π/10)` need nested radicals and are reported as unsupported.
pub fn exact_cos(theta: &Angle) -> Result<Mq> {
    check_supported(theta)?;
    // fold into [0, 1/2] using cos(2π - x) = cos x and cos(π - x) = -cos x
    let one = Rational::one();
    let mut q = theta.q.clone();
    if q > one {
        q = int(2) - q;
    }
    let mut sign = 1;
    if q > rat(1, 2) {
        q = one - q;
        sign = -1;
    }
    let n = q.numer().to_i64().unwrap_or(-1);
    let d = q.denom().to_i64().unwrap_or(-1);
    let quarter = rat(1, 4);
    let s = |k: u32| Mq::sqrt_of(k).expect("basis radical");
    let value = match (n, d) {
        (0, _) => Mq::one(),
        (1, 12) => (s(6) + s(2)) * Mq::from_rational(quarter),
        (1, 6) => s(3) * Mq::from_ratio(1, 2),
        (1, 5) => Mq::rho() * Mq::from_ratio(1, 2),
        (1, 4) => s(2) * Mq::from_ratio(1, 2),
        (1, 3) => Mq::from_ratio(1, 2),
        (2, 5) => (s(5) - Mq::one()) * Mq::from_rational(quarter),
        (5, 12) => (s(6) - s(2)) * Mq::from_rational(quarter),
        (1, 2) => Mq::zero(),
        _ => return Err(Error::UnsupportedAngle(theta.to_string())),
    };
    Ok(if sign < 0 { -value } else { value })
}

/// Exact `cos² θ = (1 + cos 2θ)/2`; defined for every supported denominator.
pub fn exact_cos_sq(theta: &Angle) -> Result<Mq> {
    check_supported(theta)?;
    let c2 = exact_cos(&theta.double())?;
    Ok((Mq::one() + c2) * Mq::from_ratio(1, 2))
}

/// Exact `sin² θ = 1 - cos² θ`.
pub fn exact_sin_sq(theta: &Angle) -> Result<Mq> {
    Ok(Mq::one() - exact_cos_sq(theta)?)
}
