use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{int, rational_sqrt, Rational};
use crate::error::{Error, Result};

/// Basis element of `Q(√2, √3, √5)` over `Q`.
///
/// Internally a basis element is the bitmask of the primes under the radical
/// (bit 0 = 2, bit 1 = 3, bit 2 = 5), so the product of two basis elements is
/// the XOR of their masks times the primes in the AND.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    One,
    Sqrt2,
    Sqrt3,
    Sqrt5,
    Sqrt6,
    Sqrt10,
    Sqrt15,
    Sqrt30,
}

const PRIMES: [u32; 3] = [2, 3, 5];

impl Basis {
    /// Public basis order: 1, √2, √3, √5, √6, √10, √15, √30.
    pub const ALL: [Basis; 8] = [
        Basis::One,
        Basis::Sqrt2,
        Basis::Sqrt3,
        Basis::Sqrt5,
        Basis::Sqrt6,
        Basis::Sqrt10,
        Basis::Sqrt15,
        Basis::Sqrt30,
    ];

    fn mask(self) -> usize {
        match self {
            Basis::One => 0,
            Basis::Sqrt2 => 1,
            Basis::Sqrt3 => 2,
            Basis::Sqrt5 => 4,
            Basis::Sqrt6 => 3,
            Basis::Sqrt10 => 5,
            Basis::Sqrt15 => 6,
            Basis::Sqrt30 => 7,
        }
    }

    fn from_mask(mask: usize) -> Basis {
        match mask {
            0 => Basis::One,
            1 => Basis::Sqrt2,
            2 => Basis::Sqrt3,
            4 => Basis::Sqrt5,
            3 => Basis::Sqrt6,
            5 => Basis::Sqrt10,
            6 => Basis::Sqrt15,
            7 => Basis::Sqrt30,
            _ => unreachable!("basis mask out of range"),
        }
    }

    /// The squarefree integer under the radical.
    pub fn radicand(self) -> u32 {
        radicand(self.mask())
    }

    pub fn from_radicand(d: u32) -> Option<Basis> {
        (0..8).find(|&m| radicand(m) == d).map(Basis::from_mask)
    }
}

fn radicand(mask: usize) -> u32 {
    PRIMES
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, p)| p)
        .product()
}

/// Exact element of the real multi-quadratic field `Q(√2, √3, √5)`.
///
/// The eight coefficients are over a linearly independent basis, so equality
/// is coefficient-wise and the representation is unique.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mq {
    // indexed by radical mask, not by public basis order
    c: [Rational; 8],
}

impl Mq {
    pub fn zero() -> Self {
        Mq {
            c: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn one() -> Self {
        Mq::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut out = Mq::zero();
        out.c[0] = r;
        out
    }

    pub fn from_int(n: i64) -> Self {
        Mq::from_rational(int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Mq::from_rational(super::rat(num, den))
    }

    /// `r · b` for a single basis element.
    pub fn term(r: Rational, b: Basis) -> Self {
        let mut out = Mq::zero();
        out.c[b.mask()] = r;
        out
    }

    /// `√d` for squarefree `d ∈ {1, 2, 3, 5, 6, 10, 15, 30}`.
    pub fn sqrt_of(d: u32) -> Option<Self> {
        Basis::from_radicand(d).map(|b| Mq::term(Rational::one(), b))
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn rho() -> Self {
        let half = super::rat(1, 2);
        Mq::from_rational(half.clone()) + Mq::term(half, Basis::Sqrt5)
    }

    /// Build from coefficients in public basis order.
    pub fn from_coefficients(coeffs: [Rational; 8]) -> Self {
        let mut out = Mq::zero();
        for (b, r) in Basis::ALL.iter().zip(coeffs) {
            out.c[b.mask()] = r;
        }
        out
    }

    /// Coefficients in public basis order.
    pub fn coefficients(&self) -> [Rational; 8] {
        std::array::from_fn(|i| self.c[Basis::ALL[i].mask()].clone())
    }

    pub fn coeff(&self, b: Basis) -> &Rational {
        &self.c[b.mask()]
    }

    /// Non-rational basis elements carrying a nonzero coefficient.
    pub fn radicals(&self) -> Vec<Basis> {
        Basis::ALL[1..]
            .iter()
            .copied()
            .filter(|b| !self.c[b.mask()].is_zero())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.c[0])
    }

    /// Galois conjugate flipping the sign of `√p` for every prime bit in `primes`.
    fn conjugate(&self, primes: usize) -> Self {
        let mut out = self.clone();
        for (mask, coeff) in out.c.iter_mut().enumerate() {
            if (mask & primes).count_ones() % 2 == 1 {
                *coeff = -coeff.clone();
            }
        }
        out
    }

    fn scale(&self, r: &Rational) -> Self {
        Mq {
            c: std::array::from_fn(|i| &self.c[i] * r),
        }
    }

    /// Multiplicative inverse. Multiplying successively by the conjugates over
    /// √2, √3 and √5 reduces the element to its (rational) field norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut acc = self.clone();
        let mut cofactor = Mq::one();
        for bit in 0..3 {
            let conj = acc.conjugate(1 << bit);
            cofactor = &cofactor * &conj;
            acc = &acc * &conj;
        }
        debug_assert!(acc.is_rational());
        let norm = acc.c[0].clone();
        Ok(cofactor.scale(&norm.recip()))
    }

    pub fn pow(&self, exp: i32) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut out = Mq::one();
        for _ in 0..exp.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// The nonnegative square root, when it lies in the field.
    ///
    /// Solved recursively down the tower `Q ⊂ Q(√2) ⊂ Q(√2,√3) ⊂ Q(√2,√3,√5)`
    /// by equating coefficients; the result is checked by exact squaring.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Mq::zero());
        }
        if self.to_f64() < 0.0 {
            return Err(Error::NotInField(format!("sqrt({self}) of a negative value")));
        }
        let root = sqrt_within(self, 0b111)
            .ok_or_else(|| Error::NotInField(format!("sqrt({self})")))?;
        let root = if root.to_f64() < 0.0 { -root } else { root };
        if &(&root * &root) != self {
            return Err(Error::NotInField(format!("sqrt({self})")));
        }
        Ok(root)
    }

    /// Double-precision value; each radical term is evaluated separately.
    pub fn to_f64(&self) -> f64 {
        let mut terms: Vec<f64> = (0..8)
            .filter(|&m| !self.c[m].is_zero())
            .map(|m| {
                let r = self.c[m].to_f64().unwrap_or(f64::NAN);
                if m == 0 {
                    r
                } else {
                    r * f64::from(radicand(m)).sqrt()
                }
            })
            .collect();
        // summing by increasing magnitude keeps cancellation error near one ulp of the largest term
        terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        terms.iter().sum()
    }

    pub fn signum_f64(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.to_f64().signum()
        }
    }
}

/// Square root of `x` inside the sub-field generated by the primes in `allowed`.
fn sqrt_within(x: &Mq, allowed: usize) -> Option<Mq> {
    if x.is_zero() {
        return Some(Mq::zero());
    }
    if allowed == 0 {
        return x
            .as_rational()
            .and_then(rational_sqrt)
            .map(Mq::from_rational);
    }
    let bit = 1usize << (usize::BITS - 1 - allowed.leading_zeros());
    let rest = allowed & !bit;
    let p = int(i64::from(radicand(bit)));
    let sqrt_p = Mq::term(Rational::one(), Basis::from_mask(bit));

    // x = u + v·√p with u, v in the smaller field
    let mut u = Mq::zero();
    let mut v = Mq::zero();
    for m in 0..8 {
        if x.c[m].is_zero() {
            continue;
        }
        if m & bit == 0 {
            u.c[m] = x.c[m].clone();
        } else {
            v.c[m ^ bit] = x.c[m].clone();
        }
    }

    if v.is_zero() {
        if let Some(s) = sqrt_within(&u, rest) {
            return Some(s);
        }
        return sqrt_within(&u.scale(&p.recip()), rest).map(|t| &t * &sqrt_p);
    }

    // (s + t√p)² = u + v√p  ⇔  s² + p t² = u, 2st = v
    let disc = &(&u * &u) - &(&v * &v).scale(&p);
    let r = sqrt_within(&disc, rest)?;
    let half = super::rat(1, 2);
    for candidate in [&u + &r, &u - &r] {
        let s_sq = candidate.scale(&half);
        if s_sq.is_zero() {
            continue;
        }
        if let Some(s) = sqrt_within(&s_sq, rest) {
            let t = &v * &(s.scale(&int(2))).inv().ok()?;
            let y = &s + &(&t * &sqrt_p);
            if &(&y * &y) == x {
                return Some(y);
            }
        }
    }
    None
}

impl Default for Mq {
    fn default() -> Self {
        Mq::zero()
    }
}

impl From<Rational> for Mq {
    fn from(r: Rational) -> Self {
        Mq::from_rational(r)
    }
}

impl From<i64> for Mq {
    fn from(n: i64) -> Self {
        Mq::from_int(n)
    }
}

impl<'a> Add<&'a Mq> for &'a Mq {
    type Output = Mq;
    fn add(self, rhs: &Mq) -> Mq {
        Mq {
            c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]),
        }
    }
}

impl<'a> Sub<&'a Mq> for &'a Mq {
    type Output = Mq;
    fn sub(self, rhs: &Mq) -> Mq {
        Mq {
            c: std::array::from_fn(|i| &self.c[i] - &rhs.c[i]),
        }
    }
}

impl<'a> Mul<&'a Mq> for &'a Mq {
    type Output = Mq;
    fn mul(self, rhs: &Mq) -> Mq {
        let mut out = Mq::zero();
        for a in 0..8 {
            if self.c[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if rhs.c[b].is_zero() {
                    continue;
                }
                let factor = i64::from(radicand(a & b));
                let prod = &self.c[a] * &rhs.c[b];
                out.c[a ^ b] += if factor == 1 { prod } else { prod * int(factor) };
            }
        }
        out
    }
}

impl<'a> Div<&'a Mq> for &'a Mq {
    type Output = Mq;
    /// Panics on division by zero, like [`Rational`].
    fn div(self, rhs: &Mq) -> Mq {
        self * &rhs.inv().expect("division by zero in Q(√2,√3,√5)")
    }
}

impl Neg for &Mq {
    type Output = Mq;
    fn neg(self) -> Mq {
        Mq {
            c: std::array::from_fn(|i| -self.c[i].clone()),
        }
    }
}

impl Neg for Mq {
    type Output = Mq;
    fn neg(self) -> Mq {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr<Mq> for Mq {
            type Output = Mq;
            fn $f(self, rhs: Mq) -> Mq {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a Mq> for Mq {
            type Output = Mq;
            fn $f(self, rhs: &Mq) -> Mq {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<Mq> for &'a Mq {
            type Output = Mq;
            fn $f(self, rhs: Mq) -> Mq {
                self.$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl AddAssign<&Mq> for Mq {
    fn add_assign(&mut self, rhs: &Mq) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
}

impl SubAssign<&Mq> for Mq {
    fn sub_assign(&mut self, rhs: &Mq) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
    }
}

impl MulAssign<&Mq> for Mq {
    fn mul_assign(&mut self, rhs: &Mq) {
        *self = &*self * rhs;
    }
}

impl Zero for Mq {
    fn zero() -> Self {
        Mq::zero()
    }
    fn is_zero(&self) -> bool {
        Mq::is_zero(self)
    }
}

impl One for Mq {
    fn one() -> Self {
        Mq::one()
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders in the same grammar [`super::parse_mq`] accepts, e.g. `1/2 - sqrt(2)`.
impl fmt::Display for Mq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for b in Basis::ALL {
            let r = &self.c[b.mask()];
            if r.is_zero() {
                continue;
            }
            let neg = r.is_negative();
            let mag = r.abs();
            let body = match b {
                Basis::One => fmt_rational(&mag),
                _ if mag.is_one() => format!("sqrt({})", b.radicand()),
                _ => format!("{}*sqrt({})", fmt_rational(&mag), b.radicand()),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Mq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mq({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn s(d: u32) -> Mq {
        Mq::sqrt_of(d).unwrap()
    }

    #[test]
    fn radical_products_reduce() {
        assert_eq!(&s(2) * &s(3), s(6));
        assert_eq!(&s(6) * &s(10), &Mq::from_int(2) * &s(15));
        assert_eq!(&s(30) * &s(30), Mq::from_int(30));
    }

    #[test]
    fn golden_ratio_squares_to_rho_plus_one() {
        let rho = Mq::rho();
        assert_eq!(&rho * &rho, &rho + &Mq::one());
        assert_eq!(
            &rho * &rho,
            Mq::from_ratio(3, 2) + Mq::term(rat(1, 2), Basis::Sqrt5)
        );
    }

    #[test]
    fn inverse_rationalizes() {
        assert_eq!(s(5).inv().unwrap(), Mq::term(rat(1, 5), Basis::Sqrt5));
        let x = Mq::from_ratio(1, 2) - s(2) + Mq::term(rat(3, 7), Basis::Sqrt30);
        assert_eq!(&x * &x.inv().unwrap(), Mq::one());
        assert_eq!(Mq::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(Mq::from_int(2).sqrt().unwrap(), s(2));
        let rho = Mq::rho();
        assert_eq!((&rho * &rho).sqrt().unwrap(), rho);

        // sin²(2π/5) · cos²φ for the (2,5),1 constant: its square root is ρ/2
        let sin_sq = (Mq::from_int(10) + &Mq::from_int(2) * &s(5)) / Mq::from_int(16);
        let cos_sq = &(&rho * &s(5)) / &Mq::from_int(5);
        let half_rho = &rho / &Mq::from_int(2);
        // oracle: square ρ/2 directly
        assert_eq!(&half_rho * &half_rho, &sin_sq * &cos_sq);
        assert_eq!((&sin_sq * &cos_sq).sqrt().unwrap(), half_rho);
    }

    #[test]
    fn sqrt_of_one_plus_sqrt2_is_not_in_field() {
        // The norm from Q(√2) down to Q is 1 - 2 = -1, not a square, so no
        // root exists in any multi-quadratic extension.
        let x = Mq::one() + s(2);
        assert!(matches!(x.sqrt(), Err(Error::NotInField(_))));
    }

    #[test]
    fn sqrt_of_negative_fails() {
        assert!(Mq::from_int(-4).sqrt().is_err());
    }

    #[test]
    fn sqrt_picks_nonnegative_root() {
        let x = Mq::from_int(3) - &Mq::from_int(2) * &s(2); // (√2 - 1)²
        assert_eq!(x.sqrt().unwrap(), s(2) - Mq::one());
    }

    #[test]
    fn to_f64_examples() {
        assert_eq!(Mq::rho().to_f64(), 1.618033988749895);
        let v = (Mq::from_ratio(1, 2) - s(2)).to_f64();
        assert!((v - (0.5 - 2f64.sqrt())).abs() <= 4.0 * f64::EPSILON);
        assert_eq!(Mq::zero().to_f64(), 0.0);
    }

    #[test]
    fn display_round_trips_through_parser() {
        let x = Mq::from_ratio(-1, 4) + Mq::term(rat(1, 4), Basis::Sqrt5) - s(30);
        assert_eq!(x.to_string(), "-1/4 + 1/4*sqrt(5) - sqrt(30)");
        assert_eq!(crate::scalar::parse_mq(&x.to_string()).unwrap(), x);
    }
}
