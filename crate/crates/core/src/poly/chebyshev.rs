use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};
use crate::RationalPoly;

/// `T_m` with `T_m(cos x) = cos mx`, from `T_m = 2X·T_{m−1} − T_{m−2}`.
pub fn chebyshev(m: u32) -> RationalPoly {
    let two_x = RationalPoly::monomial(int(2), 1);
    let (mut prev, mut cur) = (RationalPoly::one(), RationalPoly::x());
    if m == 0 {
        return prev;
    }
    for _ in 1..m {
        let next = &(&two_x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Monic minimal polynomial `F_δ` of `cos(2π/n)` for an odd prime `n`, of degree
/// `δ = (n − 1)/2`.
///
/// `T_n(X) − 1` vanishes at `cos(2jπ/n)` for `j = 0..n−1`. After removing the
/// simple root `X = 1` every remaining root is double, and dividing by the gcd
/// with the derivative leaves each `cos(2jπ/n)`, `j = 1..δ`, exactly once.
pub fn cos_minpoly(n: u64) -> Result<RationalPoly> {
    if n <= 2 || !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    let t = &chebyshev(n as u32) - &RationalPoly::one();
    let g = t.exact_div(&RationalPoly::from_ints(&[-1, 1]))?;
    let square = g.gcd(&g.derivative());
    Ok(g.exact_div(&square)?.monic())
}

/// `b_δ = 1`, `2^{δ−k} b_k ∈ Z` for `0 < k < δ`, and `2^δ b₀` an odd integer.
pub fn has_b_structure(f: &RationalPoly) -> bool {
    let Some(delta) = f.degree() else {
        return false;
    };
    if !f.is_monic() {
        return false;
    }
    let two = BigInt::from(2);
    (0..delta).all(|k| {
        let scaled = f.coeff(k) * Rational::from_integer(two.pow((delta - k) as u32));
        if !scaled.is_integer() {
            return false;
        }
        k > 0 || (scaled.numer() % &two) != BigInt::zero()
    })
}

/// `λ^δ F(λ + 1 + 1/λ) = Σ b_k (λ² + λ + 1)^k λ^{δ−k}`.
pub fn symmetric_substitute(f: &RationalPoly) -> RationalPoly {
    let Some(delta) = f.degree() else {
        return RationalPoly::zero();
    };
    let base = RationalPoly::from_ints(&[1, 1, 1]);
    let mut out = RationalPoly::zero();
    let mut power = RationalPoly::one();
    for (k, b) in f.coeffs().iter().enumerate() {
        if !b.is_zero() {
            let term = &power * &RationalPoly::monomial(b.clone(), delta - k);
            out = &out + &term;
        }
        power = &power * &base;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{is_cyclotomic, RootOfUnityVerdict};
    use crate::scalar::{rat, Mq};
    use num_traits::One;

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev(0), RationalPoly::from_ints(&[1]));
        assert_eq!(chebyshev(1), RationalPoly::from_ints(&[0, 1]));
        assert_eq!(chebyshev(2), RationalPoly::from_ints(&[-1, 0, 2]));
        assert_eq!(chebyshev(3), RationalPoly::from_ints(&[0, -3, 0, 4]));
        assert_eq!(chebyshev(6).lead(), Some(&int(32)));
        assert_eq!(chebyshev(3).eval(&rat(1, 2)), int(-1));
    }

    #[test]
    fn chebyshev_matches_cosine() {
        for m in 0..12 {
            let t = chebyshev(m);
            for x in [0.1f64, 0.7, 1.3, 2.9] {
                let v: f64 = t.eval_complex(x.cos().into()).re;
                assert!((v - (m as f64 * x).cos()).abs() < 1e-9, "m={m}");
            }
        }
    }

    #[test]
    fn cos_minpoly_examples() {
        assert_eq!(cos_minpoly(3).unwrap(), RationalPoly::from_ratios(&[(1, 2), (1, 1)]));
        let f5 = cos_minpoly(5).unwrap();
        assert_eq!(f5, RationalPoly::from_ratios(&[(-1, 4), (1, 2), (1, 1)]));
        // oracle: F((√5 − 1)/4) = 0 in exact arithmetic
        let c = (Mq::sqrt_of(5).unwrap() - Mq::one()) * Mq::from_ratio(1, 4);
        let lifted = f5.map(|r| Mq::from_rational(r.clone()));
        assert!(lifted.eval(&c).is_zero());
        let f7 = cos_minpoly(7).unwrap();
        assert_eq!(f7, RationalPoly::from_ratios(&[(-1, 8), (-1, 2), (1, 2), (1, 1)]));
        // oracle: 8x³ + 4x² − 4x − 1 at cos(2π/7)
        let x = (2.0 * std::f64::consts::PI / 7.0).cos();
        assert!((8.0 * x * x * x + 4.0 * x * x - 4.0 * x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cos_minpoly_rejects_composites() {
        for n in [0, 1, 2, 4, 9, 15] {
            assert!(matches!(cos_minpoly(n), Err(Error::NotPrime(_))));
        }
    }

    #[test]
    fn b_structure() {
        for n in [3, 5, 7, 11, 13, 17] {
            let f = cos_minpoly(n).unwrap();
            assert_eq!(f.degree(), Some(((n - 1) / 2) as usize));
            assert!(has_b_structure(&f), "n={n}");
        }
        assert!(!has_b_structure(&RationalPoly::from_ratios(&[(1, 4), (1, 1)])));
    }

    #[test]
    fn substitute_examples() {
        let s3 = symmetric_substitute(&RationalPoly::from_ratios(&[(1, 2), (1, 1)]));
        assert_eq!(s3, RationalPoly::from_ratios(&[(1, 1), (3, 2), (1, 1)]));
        let s5 = symmetric_substitute(&RationalPoly::from_ratios(&[(-1, 4), (1, 2), (1, 1)]));
        assert_eq!(
            s5,
            RationalPoly::from_ratios(&[(1, 1), (5, 2), (13, 4), (5, 2), (1, 1)])
        );
        let c = rat(3, 7);
        let lin = RationalPoly::new(vec![-c.clone(), Rational::one()]);
        assert_eq!(
            symmetric_substitute(&lin),
            RationalPoly::new(vec![Rational::one(), Rational::one() - c, Rational::one()])
        );
    }

    #[test]
    fn pipeline_is_palindromic_and_not_cyclotomic() {
        for n in [3u64, 5, 7, 11, 13] {
            let f = symmetric_substitute(&cos_minpoly(n).unwrap());
            assert!(f.is_palindromic());
            assert_eq!(f.degree(), Some((n - 1) as usize));
            assert_eq!(is_cyclotomic(&f).unwrap(), RootOfUnityVerdict::NotRootOfUnity);
        }
    }
}
