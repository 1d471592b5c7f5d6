//! Univariate polynomials over a field, plus the minimal polynomial of the
//! non-unit eigenvalue `ζ` of a rotation product and the root-of-unity test.

mod chebyshev;
mod zeta;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Mq, Rational};

pub use chebyshev::{chebyshev, cos_minpoly, has_b_structure, symmetric_substitute};
pub use zeta::{
    analyze, char_poly, complexity_verdict, cyclotomic, euler_phi, is_cyclotomic,
    minimal_poly_zeta, numeric_zeta, CharPoly, RootOfUnityVerdict, Verdict, ZetaAnalysis,
};

/// Coefficient field of a [`Poly`].
pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + fmt::Display
{
}

impl Field for Rational {}
impl Field for Mq {}

/// Dense polynomial, lowest degree first. The zero polynomial has no
/// coefficients; otherwise the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    /// `c·xᵏ`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `xᵏ` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(One::is_one)
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => {
                let l = l.clone();
                self.map(|c| c.clone() / l.clone())
            }
        }
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for c in self.coeffs.iter() {
            if !k.is_zero() {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.lead().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Quotient, failing if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::OutOfDomain(format!("{d} does not divide {self}")))
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `c_k = c_{n−k}` for all `k`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl Poly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// `num/den` pairs, lowest degree first.
    pub fn from_ratios(coeffs: &[(i64, i64)]) -> Self {
        Poly::new(coeffs.iter().map(|&(n, d)| crate::scalar::rat(n, d)).collect())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.to_f64_coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// All complex roots by Durand–Kerner iteration.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let n = match self.degree() {
            None | Some(0) => return Vec::new(),
            Some(n) => n,
        };
        let monic: Vec<f64> = self.monic().to_f64_coeffs();
        let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let seed = Complex64::new(0.4, 0.9);
        let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
        for _ in 0..500 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        denom *= roots[i] - roots[j];
                    }
                }
                let step = eval(roots[i]) / denom;
                roots[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-15 {
                break;
            }
        }
        roots
    }
}

impl<T: Field> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Field> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Field> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Field> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        self.map(|c| -c.clone())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Field> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Descending powers of `x`, e.g. `x^4 + x^3 + 1/4*x^2 + x + 1`.
impl<T: Field> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = s.len() > 1 && (s[1..].contains(" + ") || s[1..].contains(" - "));
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ if compound => (false, format!("({s})")),
                _ => (false, s),
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = body == "1";
            match k {
                0 => write!(f, "{body}")?,
                _ => {
                    if !unit {
                        write!(f, "{body}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::RationalPoly;

    #[test]
    fn arithmetic_and_normalisation() {
        let p = RationalPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        let q = RationalPoly::from_ints(&[-1, 1]);
        assert_eq!(&p * &q, RationalPoly::from_ints(&[-1, -1, 2]));
        assert_eq!(&(&p - &p), &RationalPoly::zero());
        assert_eq!(RationalPoly::zero().degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        let a = RationalPoly::from_ints(&[-1, 0, 0, 1]); // x³ − 1
        let b = RationalPoly::from_ints(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, RationalPoly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
        let c = RationalPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(a.gcd(&c), b);
        assert!(matches!(a.div_rem(&RationalPoly::zero()), Err(Error::DivisionByZero)));
        assert!(a.exact_div(&RationalPoly::from_ints(&[1, 0, 1])).is_err());
    }

    #[test]
    fn derivative_and_eval() {
        let p = RationalPoly::from_ints(&[1, 1, 1, 1]);
        assert_eq!(p.derivative(), RationalPoly::from_ints(&[1, 2, 3]));
        assert_eq!(p.eval(&rat(1, 2)), rat(15, 8));
    }

    #[test]
    fn display() {
        let p = RationalPoly::from_ratios(&[(1, 1), (1, 1), (1, 4), (1, 1), (1, 1)]);
        assert_eq!(p.to_string(), "x^4 + x^3 + 1/4*x^2 + x + 1");
        assert_eq!(RationalPoly::from_ints(&[-1, 0, -2]).to_string(), "-2*x^2 - 1");
        let a = crate::scalar::parse_mq("1/2 + sqrt(2)").unwrap();
        let q = Poly::new(vec![Mq::one(), a, Mq::one()]);
        assert_eq!(q.to_string(), "x^2 + (1/2 + sqrt(2))*x + 1");
    }

    #[test]
    fn roots_of_cyclotomic() {
        let phi5 = RationalPoly::from_ints(&[1, 1, 1, 1, 1]);
        for r in phi5.complex_roots() {
            assert!((r.norm() - 1.0).abs() < 1e-12);
            assert!(r.powu(5).sub(Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }
}
