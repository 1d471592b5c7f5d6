use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::{One, Signed};
use serde::Serialize;

use super::Poly;
use crate::error::{Error, Result};
use crate::rotation::{trace_product_exact, Triplet};
use crate::scalar::{int, Basis, Mq, Rational};
use crate::{QuadExtPoly, RationalPoly};

/// `χ(λ) = (λ − 1)(λ² + aλ + 1)` with `a = 1 − tr`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    pub linear: RationalPoly,
    pub quadratic: QuadExtPoly,
}

impl CharPoly {
    /// `a = 1 − tr`.
    pub fn a(&self) -> Mq {
        self.quadratic.coeff(1)
    }

    pub fn expanded(&self) -> QuadExtPoly {
        let linear = self.linear.map(|c| Mq::from_rational(c.clone()));
        &linear * &self.quadratic
    }
}

pub fn char_poly(tr: &Mq) -> CharPoly {
    let a = Mq::one() - tr;
    CharPoly {
        linear: RationalPoly::from_ints(&[-1, 1]),
        quadratic: Poly::new(vec![Mq::one(), a, Mq::one()]),
    }
}

/// Minimal polynomial over `Q` of the eigenvalue `ζ` with `ζ + ζ̄ = tr − 1`.
pub fn minimal_poly_zeta(tr: &Mq) -> Result<RationalPoly> {
    let a = Mq::one() - tr;
    let radicals = a.radicals();
    if radicals.len() > 1 {
        return Err(Error::MixedRadicals(a.to_string()));
    }
    if a.to_f64().abs() > 2.0 + 1e-12 {
        return Err(Error::NotOnUnitCircle(a.to_string()));
    }
    let Some(&radical) = radicals.first() else {
        let a = a.as_rational().expect("no radicals").clone();
        let two = int(2);
        if a.abs() > two {
            return Err(Error::NotOnUnitCircle(a.to_string()));
        }
        return Ok(if a == two {
            RationalPoly::from_ints(&[1, 1])
        } else if a == -two {
            RationalPoly::from_ints(&[-1, 1])
        } else {
            Poly::new(vec![Rational::one(), a, Rational::one()])
        });
    };
    // a = p + q√d: (λ² + aλ + 1)(λ² + āλ + 1)
    let p = a.coeff(Basis::One).clone();
    let q = a.coeff(radical).clone();
    let d = int(radical.radicand() as i64);
    let two = int(2);
    let middle = &two + &p * &p - d * &q * &q;
    let quartic = Poly::new(vec![
        Rational::one(),
        &two * &p,
        middle,
        &two * &p,
        Rational::one(),
    ]);
    if !quartic_is_irreducible(&a, radical) {
        return Err(Error::NotOnUnitCircle(a.to_string()));
    }
    Ok(quartic)
}

/// Over `K = Q(√d)` the quartic splits as `(λ² + aλ + 1)(λ² + āλ + 1)`; when
/// neither discriminant is a square in `K`, both factors are irreducible over
/// `K`, so by unique factorisation in `K[λ]` any rational factor of degree 1 or
/// 2 would have to be one of them, and neither is rational since `a ∉ Q`.
fn quartic_is_irreducible(a: &Mq, radical: Basis) -> bool {
    let flip = |x: &Mq| {
        let mut c = x.coefficients();
        let idx = Basis::ALL.iter().position(|b| *b == radical).expect("basis");
        c[idx] = -c[idx].clone();
        Mq::from_coefficients(c)
    };
    let four = Mq::from_int(4);
    [a.clone(), flip(a)]
        .iter()
        .all(|x| (x * x - four.clone()).sqrt().is_err())
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn cyclotomic_memo(n: u64, memo: &mut HashMap<u64, RationalPoly>) -> RationalPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = &RationalPoly::monomial(Rational::one(), n as usize) - &RationalPoly::one();
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let phi_d = cyclotomic_memo(d, memo);
        p = p.exact_div(&phi_d).expect("Φ_d divides xⁿ − 1");
    }
    memo.insert(n, p.clone());
    p
}

/// The `n`-th cyclotomic polynomial `Φ_n`.
pub fn cyclotomic(n: u64) -> RationalPoly {
    assert!(n >= 1, "Φ_0 is undefined");
    cyclotomic_memo(n, &mut HashMap::new())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootOfUnityVerdict {
    RootOfUnity(u64),
    NotRootOfUnity,
}

/// Whether the monic `p` is a cyclotomic polynomial `Φ_n`.
pub fn is_cyclotomic(p: &RationalPoly) -> Result<RootOfUnityVerdict> {
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let deg = p.degree().expect("monic") as u64;
    if deg == 0 {
        return Err(Error::OutOfDomain("constant polynomial".into()));
    }
    if !p.has_integer_coeffs() {
        return Ok(RootOfUnityVerdict::NotRootOfUnity);
    }
    // φ(n) ≥ √(n/2), so φ(n) = D forces n ≤ 2D²
    let bound = 2 * deg * deg + 4;
    let mut memo = HashMap::new();
    for n in (1..=bound).filter(|&n| euler_phi(n) == deg) {
        if &cyclotomic_memo(n, &mut memo) == p {
            return Ok(RootOfUnityVerdict::RootOfUnity(n));
        }
    }
    Ok(RootOfUnityVerdict::NotRootOfUnity)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// `ζ` is not a root of unity, so the generated group is infinite.
    InfiniteCertified,
    /// `ζ` has order `n`; finiteness of the whole group is left to closure.
    FiniteCandidate(u64),
    /// Exact arithmetic could not decide; fall back to numerics.
    Inconclusive,
}

/// Everything computed on the way to a [`Verdict`].
#[derive(Debug, Clone)]
pub struct ZetaAnalysis {
    pub trace: Mq,
    pub char_poly: CharPoly,
    pub min_poly: RationalPoly,
    pub root: RootOfUnityVerdict,
    pub verdict: Verdict,
}

/// Trace, `χ`, `f_ζ` and the root-of-unity verdict for an exact triplet.
pub fn analyze(t: &Triplet) -> Result<ZetaAnalysis> {
    let trace = trace_product_exact(t)?;
    let min_poly = minimal_poly_zeta(&trace)?;
    let root = is_cyclotomic(&min_poly)?;
    let verdict = match root {
        RootOfUnityVerdict::RootOfUnity(n) => Verdict::FiniteCandidate(n),
        RootOfUnityVerdict::NotRootOfUnity => Verdict::InfiniteCertified,
    };
    Ok(ZetaAnalysis {
        char_poly: char_poly(&trace),
        trace,
        min_poly,
        root,
        verdict,
    })
}

pub fn complexity_verdict(t: &Triplet) -> Result<Verdict> {
    match analyze(t) {
        Ok(a) => Ok(a.verdict),
        Err(Error::NotInField(_) | Error::UnsupportedAngle(_) | Error::MixedRadicals(_)) => {
            Ok(Verdict::Inconclusive)
        }
        Err(e) => Err(e),
    }
}

/// The eigenvalue `ζ = e^{iψ}` (upper half plane) of a rotation with trace `tr`.
pub fn numeric_zeta(tr: f64) -> Complex64 {
    let c = ((tr - 1.0) / 2.0).clamp(-1.0, 1.0);
    Complex64::new(c, (1.0 - c * c).sqrt())
}
