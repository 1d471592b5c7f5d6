//! The rotation pair `(C'_x, C'_y)` generated by an angle triplet.
//!
//! `C(θ)` fixes `p₁ = (1, 0, 0)` and turns the `(2,3)`-plane by `θ`. The second
//! generator is `U C(θ_y) Uᵀ`, where `U` is the fixed rotation by `φ` in the
//! `(1,2)`-plane
//!
//! ```text
//!     ⎡  cos φ   sin φ   0 ⎤
//! U = ⎢ −sin φ   cos φ   0 ⎥
//!     ⎣    0       0     1 ⎦
//! ```
//!
//! so its axis `U p₁` makes the angle `φ` with `p₁`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Matrix, Real, Vec3, Vector};
use crate::scalar::{exact_cos, exact_sin_sq, parse_angle, parse_rational, Angle, Mq, Rational};

/// Named values of `cos φ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CosPhiTag {
    /// `φ = π/2`.
    Zero,
    /// `cos φ = r`.
    Rat(Rational),
    /// `cos φ = √r`.
    SqrtRat(Rational),
    /// `ρ/√3`
    Phi23,
    /// `√(ρ/√5)`
    Phi25_1,
    /// `√(ρ⁻¹/√5)`
    Phi25_2,
    /// `√5/3`
    Phi33,
    /// `√(ρ³/(3√5))`
    Phi35_1,
    /// `√(ρ⁻³/(3√5))`
    Phi35_2,
    /// `1/√5`
    Phi55,
}

/// `cos φ` for `0 < φ ≤ π/2`, carried exactly through its square.
#[derive(Debug, Clone, PartialEq)]
pub struct CosPhi {
    pub tag: CosPhiTag,
    /// `cos² φ`, always exact.
    pub cos_sq: Mq,
    /// `cos φ` itself when it lies in the field.
    pub cos_exact: Option<Mq>,
    pub cos_float: f64,
}

impl CosPhi {
    pub fn new(tag: CosPhiTag) -> Result<Self> {
        let rho = Mq::rho();
        let sqrt5 = Mq::sqrt_of(5).expect("radical");
        let (cos_sq, cos_exact) = match &tag {
            CosPhiTag::Zero => (Mq::zero(), Some(Mq::zero())),
            CosPhiTag::Rat(r) => {
                let c = Mq::from_rational(r.clone());
                (&c * &c, Some(c))
            }
            CosPhiTag::SqrtRat(r) => {
                let sq = Mq::from_rational(r.clone());
                let exact = sq.sqrt().ok();
                (sq, exact)
            }
            CosPhiTag::Phi23 => (&(&rho * &rho) * &Mq::from_ratio(1, 3), None),
            CosPhiTag::Phi25_1 => (&(&rho * &sqrt5) * &Mq::from_ratio(1, 5), None),
            CosPhiTag::Phi25_2 => (&(&rho.inv()? * &sqrt5) * &Mq::from_ratio(1, 5), None),
            CosPhiTag::Phi33 => (Mq::from_ratio(5, 9), None),
            CosPhiTag::Phi35_1 => (&(&rho.pow(3)? * &sqrt5) * &Mq::from_ratio(1, 15), None),
            CosPhiTag::Phi35_2 => (&(&rho.pow(-3)? * &sqrt5) * &Mq::from_ratio(1, 15), None),
            CosPhiTag::Phi55 => (Mq::from_ratio(1, 5), None),
        };
        let cos_exact = cos_exact.or_else(|| cos_sq.sqrt().ok());
        if let CosPhiTag::Rat(r) = &tag {
            if r.is_negative() {
                return Err(Error::OutOfDomain(format!("cos φ = {r} < 0")));
            }
        }
        let sq = cos_sq.to_f64();
        if !(0.0..1.0).contains(&sq) || cos_sq == Mq::one() {
            return Err(Error::OutOfDomain(format!(
                "cos² φ = {cos_sq} is outside [0, 1)"
            )));
        }
        let cos_float = match &cos_exact {
            Some(c) => c.to_f64(),
            None => sq.sqrt(),
        };
        Ok(CosPhi {
            tag,
            cos_sq,
            cos_exact,
            cos_float,
        })
    }

    pub fn zero() -> Self {
        CosPhi::new(CosPhiTag::Zero).expect("cos φ = 0 is valid")
    }

    /// `cos φ = √r`.
    pub fn sqrt_rational(num: i64, den: i64) -> Result<Self> {
        CosPhi::new(CosPhiTag::SqrtRat(crate::scalar::rat(num, den)))
    }

    pub fn rational(num: i64, den: i64) -> Result<Self> {
        CosPhi::new(CosPhiTag::Rat(crate::scalar::rat(num, den)))
    }

    pub fn named(tag: CosPhiTag) -> Self {
        CosPhi::new(tag).expect("named constants are in range")
    }

    /// `sin² φ = 1 − cos² φ`.
    pub fn sin_sq(&self) -> Mq {
        Mq::one() - &self.cos_sq
    }

    pub fn sin_float(&self) -> f64 {
        self.sin_sq().to_f64().max(0.0).sqrt()
    }

    /// Parse the textual form: `0`, `r`, `sqrt(r)`, `phi23`, `phi25_1`,
    /// `phi25_2`, `phi33`, `phi35_1`, `phi35_2`, `phi55`.
    pub fn parse(src: &str) -> Result<Self> {
        let s = src.trim();
        let tag = match s {
            "0" => CosPhiTag::Zero,
            "phi23" => CosPhiTag::Phi23,
            "phi25_1" => CosPhiTag::Phi25_1,
            "phi25_2" => CosPhiTag::Phi25_2,
            "phi33" => CosPhiTag::Phi33,
            "phi35_1" => CosPhiTag::Phi35_1,
            "phi35_2" => CosPhiTag::Phi35_2,
            "phi55" => CosPhiTag::Phi55,
            _ => match s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
                Some(inner) => CosPhiTag::SqrtRat(parse_rational(inner)?),
                None => {
                    let r = parse_rational(s)?;
                    if r.is_zero() {
                        CosPhiTag::Zero
                    } else {
                        CosPhiTag::Rat(r)
                    }
                }
            },
        };
        CosPhi::new(tag)
    }
}

impl fmt::Display for CosPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let frac = |r: &Rational| {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        match &self.tag {
            CosPhiTag::Zero => write!(f, "0"),
            CosPhiTag::Rat(r) => write!(f, "{}", frac(r)),
            CosPhiTag::SqrtRat(r) => write!(f, "sqrt({})", frac(r)),
            CosPhiTag::Phi23 => write!(f, "phi23"),
            CosPhiTag::Phi25_1 => write!(f, "phi25_1"),
            CosPhiTag::Phi25_2 => write!(f, "phi25_2"),
            CosPhiTag::Phi33 => write!(f, "phi33"),
            CosPhiTag::Phi35_1 => write!(f, "phi35_1"),
            CosPhiTag::Phi35_2 => write!(f, "phi35_2"),
            CosPhiTag::Phi55 => write!(f, "phi55"),
        }
    }
}

/// A rotation angle: exact rational multiple of π, or plain radians.
#[derive(Debug, Clone, PartialEq)]
pub enum Theta {
    Exact(Angle),
    Radians(f64),
}

impl Theta {
    pub fn cos_sin(&self) -> (f64, f64) {
        match self {
            Theta::Exact(a) => a.cos_sin(),
            Theta::Radians(r) => (r.cos(), r.sin()),
        }
    }

    pub fn radians(&self) -> f64 {
        match self {
            Theta::Exact(a) => a.radians(),
            Theta::Radians(r) => *r,
        }
    }

    pub fn exact(&self) -> Option<&Angle> {
        match self {
            Theta::Exact(a) => Some(a),
            Theta::Radians(_) => None,
        }
    }

    /// Parse `p/q` (a multiple of π) or, with `radians`, a decimal number.
    pub fn parse(src: &str, radians: bool) -> Result<Self> {
        if radians {
            if let Ok(r) = src.trim().parse::<f64>() {
                return Ok(Theta::Radians(r));
            }
        }
        parse_angle(src).map(Theta::Exact)
    }

    fn is_pi(&self) -> bool {
        match self {
            Theta::Exact(a) => a == &Angle::pi(),
            Theta::Radians(r) => (r - std::f64::consts::PI).abs() < 1e-12,
        }
    }
}

impl From<Angle> for Theta {
    fn from(a: Angle) -> Self {
        Theta::Exact(a)
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Exact(a) => write!(f, "{a}"),
            Theta::Radians(r) => write!(f, "{r}rad"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Rational angles in `(0, π]`; exact traces are available.
    Exact,
    /// Any angle in `[0, 2π)`, exact or in radians.
    Numeric,
}

/// `(θ'_x, θ'_y, φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Triplet {
    pub theta_x: Theta,
    pub theta_y: Theta,
    pub phi: CosPhi,
    pub mode: Mode,
}

impl Triplet {
    /// Exact-mode triplet; both angles must lie in `(0, π]`.
    pub fn exact(theta_x: Angle, theta_y: Angle, phi: CosPhi) -> Result<Self> {
        for (name, a) in [("θ'_x", &theta_x), ("θ'_y", &theta_y)] {
            if a.is_zero() || a.q() > &Rational::one() {
                return Err(Error::OutOfDomain(format!("{name} = {a}π is not in (0, π]")));
            }
        }
        Ok(Triplet {
            theta_x: Theta::Exact(theta_x),
            theta_y: Theta::Exact(theta_y),
            phi,
            mode: Mode::Exact,
        })
    }

    /// Numeric-mode triplet; radian angles are reduced into `[0, 2π)`.
    pub fn numeric(theta_x: Theta, theta_y: Theta, phi: CosPhi) -> Self {
        let wrap = |t: Theta| match t {
            Theta::Radians(r) => Theta::Radians(r.rem_euclid(std::f64::consts::TAU)),
            other => other,
        };
        Triplet {
            theta_x: wrap(theta_x),
            theta_y: wrap(theta_y),
            phi,
            mode: Mode::Numeric,
        }
    }

    /// Shorthand for an exact triplet `(nx/dx·π, ny/dy·π, φ)`.
    pub fn pi_fracs(nx: i64, dx: i64, ny: i64, dy: i64, phi: CosPhi) -> Result<Self> {
        Triplet::exact(Angle::pi_frac(nx, dx), Angle::pi_frac(ny, dy), phi)
    }

    /// Promote to exact mode when both angles are rational and in `(0, π]`.
    pub fn to_exact(&self) -> Result<Self> {
        match (&self.theta_x, &self.theta_y) {
            (Theta::Exact(x), Theta::Exact(y)) => Triplet::exact(x.clone(), y.clone(), self.phi.clone()),
            _ => Err(Error::UnsupportedAngle("radian angle has no exact value".into())),
        }
    }

    pub fn is_pi_pi(&self) -> bool {
        self.theta_x.is_pi() && self.theta_y.is_pi()
    }
}

impl fmt::Display for Triplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.theta_x, self.theta_y, self.phi)
    }
}

/// A 3×3 rotation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3<T>(pub Mat3<T>);

impl<T: Real> Rotation3<T> {
    pub fn identity() -> Self {
        Rotation3(Matrix::identity())
    }

    pub fn matrix(&self) -> &Mat3<T> {
        &self.0
    }

    pub fn compose(&self, other: &Self) -> Self {
        Rotation3(self.0 * other.0)
    }

    pub fn inverse(&self) -> Self {
        Rotation3(self.0.transpose())
    }

    pub fn apply(&self, v: &Vec3<T>) -> Vec3<T> {
        self.0.apply(v)
    }

    pub fn trace(&self) -> T {
        self.0.trace()
    }

    /// `‖RᵀR − I‖∞ < tol` and `|det R − 1| < tol`.
    pub fn is_rotation(&self, tol: T) -> bool {
        self.0.orthogonality_error() < tol && (self.0.det() - T::one()).abs() < tol
    }

    pub fn is_identity(&self, tol: T) -> bool {
        self.0.max_abs_diff(&Matrix::identity()) < tol
    }

    /// Rotation axis (first nonzero coordinate positive) and angle in `[0, π]`.
    ///
    /// The axis is the largest cross product of two rows of `R − I`, which
    /// spans the null space for every non-identity rotation.
    pub fn axis_angle(&self) -> Result<(Vec3<T>, T)> {
        let m = &self.0;
        let tiny = T::epsilon() * T::lit(64.0);
        if self.is_identity(tiny) {
            return Err(Error::DegenerateAxis);
        }
        let d = *m - Matrix::identity();
        let rows = [
            Vector(d.0[0]),
            Vector(d.0[1]),
            Vector(d.0[2]),
        ];
        let axis = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| rows[i].cross(&rows[j]))
            .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
            .unwrap();
        let mut axis = axis.normalized();
        if let Some(first) = axis.0.iter().find(|x| x.abs() > tiny) {
            if *first < T::zero() {
                axis = -axis;
            }
        }
        let vee = Vector([
            m.0[2][1] - m.0[1][2],
            m.0[0][2] - m.0[2][0],
            m.0[1][0] - m.0[0][1],
        ]);
        let two = T::lit(2.0);
        let angle = (vee.norm() / two).atan2((m.trace() - T::one()) / two);
        Ok((axis, angle))
    }

    /// [`Self::axis_angle`] with the identity mapped to `(p₁, 0)`.
    pub fn axis_angle_or_default(&self) -> (Vec3<T>, T) {
        self.axis_angle()
            .unwrap_or_else(|_| (Vector::basis(0), T::zero()))
    }
}

/// `(C'_x, C'_y)` with the triplet that produced it, when known.
#[derive(Debug, Clone)]
pub struct RotationPair<T> {
    pub cx: Rotation3<T>,
    pub cy: Rotation3<T>,
    pub triplet: Option<Triplet>,
}

impl<T: Real> RotationPair<T> {
    pub fn new(cx: Rotation3<T>, cy: Rotation3<T>) -> Self {
        RotationPair { cx, cy, triplet: None }
    }

    /// `C'_x C'_y`.
    pub fn product_xy(&self) -> Rotation3<T> {
        self.cx.compose(&self.cy)
    }

    /// `C'_y C'_x`.
    pub fn product_yx(&self) -> Rotation3<T> {
        self.cy.compose(&self.cx)
    }

    pub fn generators(&self) -> [Rotation3<T>; 2] {
        [self.cx, self.cy]
    }
}

fn from_cos_sin<T: Real>(c: f64, s: f64) -> (T, T) {
    (T::lit(c), T::lit(s))
}

/// `C(θ)`: identity on `p₁`, rotation by `θ` in the `(2,3)`-plane.
pub fn c_of_theta<T: Real>(theta: &Theta) -> Rotation3<T> {
    let (c, s) = theta.cos_sin();
    let (c, s) = from_cos_sin::<T>(c, s);
    let (o, z) = (T::one(), T::zero());
    Rotation3(Matrix([[o, z, z], [z, c, -s], [z, s, c]]))
}

/// The fixed `U` rotating by `φ` in the `(1,2)`-plane.
pub fn u_of_phi<T: Real>(phi: &CosPhi) -> Rotation3<T> {
    let (c, s) = from_cos_sin::<T>(phi.cos_float, phi.sin_float());
    let (o, z) = (T::one(), T::zero());
    Rotation3(Matrix([[c, s, z], [-s, c, z], [z, z, o]]))
}

/// `(C(θ'_x), U C(θ'_y) Uᵀ)`.
pub fn build_pair<T: Real>(t: &Triplet) -> RotationPair<T> {
    let cx = c_of_theta(&t.theta_x);
    let u = u_of_phi::<T>(&t.phi);
    let cy = u.compose(&c_of_theta(&t.theta_y)).compose(&u.inverse());
    RotationPair {
        cx,
        cy,
        triplet: Some(t.clone()),
    }
}

fn sin_sign(a: &Angle) -> i32 {
    if a.is_zero() || a == &Angle::pi() {
        0
    } else if a.q() < &Rational::one() {
        1
    } else {
        -1
    }
}

/// Exact `tr(C'_x C'_y)` from the four-term trace formula
///
/// ```text
/// cos θx cos θy − 2 sin θx sin θy cos φ + (1 + cos θx cos θy) cos²φ + (cos θx + cos θy) sin²φ
/// ```
///
/// The cross term is the only one with odd powers of the sines; it is taken as
/// the square root of `4 sin²θx sin²θy cos²φ`, signed by the sines (both
/// nonnegative on the exact-mode domain, and `cos φ ≥ 0` always).
pub fn trace_product_exact(t: &Triplet) -> Result<Mq> {
    let (ax, ay) = match (&t.theta_x, &t.theta_y) {
        (Theta::Exact(x), Theta::Exact(y)) => (x, y),
        _ => return Err(Error::UnsupportedAngle("radian angle has no exact value".into())),
    };
    let cx = exact_cos(ax)?;
    let cy = exact_cos(ay)?;
    let sx2 = exact_sin_sq(ax)?;
    let sy2 = exact_sin_sq(ay)?;
    let cphi2 = &t.phi.cos_sq;
    let sphi2 = t.phi.sin_sq();

    let cross_sq = &(&(&sx2 * &sy2) * cphi2) * &Mq::from_int(4);
    let cross = cross_sq.sqrt()?;
    let cross = match sin_sign(ax) * sin_sign(ay) {
        s if s < 0 => -cross,
        _ => cross,
    };

    let cxcy = &cx * &cy;
    let tr = &(&cxcy - &cross) + &(&(&Mq::one() + &cxcy) * cphi2);
    Ok(&tr + &(&(&cx + &cy) * &sphi2))
}

/// `tr(C'_x C'_y)` of the numerically built pair.
pub fn trace_product_numeric(t: &Triplet) -> f64 {
    build_pair::<f64>(t).product_xy().trace()
}

fn scaled_tol<T: Real>(tol: f64) -> T {
    T::lit(tol).max(T::epsilon() * T::lit(64.0))
}

/// `tr(C'_x C'_y) = tr(C'_y C'_x)`, so both products share their eigenvalues.
pub fn check_trace_symmetry<T: Real>(pair: &RotationPair<T>) -> bool {
    (pair.product_xy().trace() - pair.product_yx().trace()).abs() < scaled_tol(1e-12)
}

/// The fixed axes of `C'_x C'_y` and `C'_y C'_x` are linearly independent.
///
/// The case `θ'_x = θ'_y = π` is excluded.
pub fn check_axes_independent<T: Real>(pair: &RotationPair<T>) -> Result<bool> {
    let excluded = match &pair.triplet {
        Some(t) => t.is_pi_pi(),
        None => {
            let near = |r: &Rotation3<T>| (r.trace() + T::one()).abs() < scaled_tol(1e-12);
            near(&pair.cx) && near(&pair.cy)
        }
    };
    if excluded {
        return Err(Error::ExcludedCase("(θ'_x, θ'_y) = (π, π)"));
    }
    let (a, _) = pair.product_xy().axis_angle()?;
    let (b, _) = pair.product_yx().axis_angle()?;
    Ok(a.cross(&b).norm() > T::lit(1e-8))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(n: i64, d: i64) -> Theta {
        Theta::Exact(Angle::pi_frac(n, d))
    }

    #[test]
    fn c_of_theta_examples() {
        let id = c_of_theta::<f64>(&pi(0, 1));
        assert_eq!(id, Rotation3::identity());
        let half = c_of_theta::<f64>(&pi(1, 1));
        assert_eq!(half.0, Matrix([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]));
        let quarter = c_of_theta::<f64>(&pi(1, 2));
        assert_eq!(quarter.0, Matrix([[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]]));
    }

    #[test]
    fn u_of_phi_examples() {
        let u = u_of_phi::<f64>(&CosPhi::zero());
        assert_eq!(u.0, Matrix([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]));
        let u = u_of_phi::<f64>(&CosPhi::sqrt_rational(1, 2).unwrap());
        let h = 2f64.sqrt() / 2.0;
        assert!((u.0[(0, 0)] - h).abs() < 1e-16 && (u.0[(0, 1)] - h).abs() < 1e-16);
        // oracle: inner product of p₁ with U p₁
        let phi = CosPhi::sqrt_rational(1, 3).unwrap();
        let u = u_of_phi::<f64>(&phi);
        let p1 = Vector::basis(0);
        let cos_angle = p1.dot(&u.apply(&p1));
        assert!((cos_angle - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn build_pair_half_turns() {
        let t = Triplet::pi_fracs(1, 1, 1, 1, CosPhi::zero()).unwrap();
        let pair = build_pair::<f64>(&t);
        assert_eq!(pair.cx.0, Matrix([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]));
        assert!(pair
            .cy
            .0
            .max_abs_diff(&Matrix([[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]))
            < 1e-15);
        assert_eq!(trace_product_numeric(&t), -1.0);
    }

    #[test]
    fn conjugated_axis_and_angle() {
        let phi = CosPhi::sqrt_rational(2, 3).unwrap();
        let t = Triplet::pi_fracs(1, 2, 2, 3, phi.clone()).unwrap();
        let pair = build_pair::<f64>(&t);
        let (axis, angle) = pair.cy.axis_angle().unwrap();
        let u = u_of_phi::<f64>(&phi);
        let up1 = u.apply(&Vector::basis(0));
        assert!(axis.cross(&up1).norm() < 1e-14);
        assert!((angle - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-14);
        assert!(pair.cx.is_rotation(1e-12) && pair.cy.is_rotation(1e-12));
    }

    #[test]
    fn trace_examples() {
        let any = CosPhi::named(CosPhiTag::Phi55);
        let t = Triplet::numeric(pi(0, 1), pi(0, 1), any);
        assert_eq!(trace_product_exact(&t).unwrap(), Mq::from_int(3));

        let t = Triplet::pi_fracs(1, 1, 1, 3, CosPhi::sqrt_rational(1, 3).unwrap()).unwrap();
        assert_eq!(trace_product_exact(&t).unwrap(), Mq::from_ratio(-2, 3));

        let t = Triplet::pi_fracs(1, 2, 2, 3, CosPhi::named(CosPhiTag::Phi23)).unwrap();
        assert_eq!(
            trace_product_exact(&t).unwrap(),
            -(Mq::rho() * Mq::from_ratio(1, 2))
        );

        let t = Triplet::pi_fracs(1, 2, 2, 5, CosPhi::zero()).unwrap();
        assert_eq!(
            trace_product_exact(&t).unwrap(),
            (Mq::sqrt_of(5).unwrap() - Mq::one()) * Mq::from_ratio(1, 4)
        );

        let t = Triplet::pi_fracs(1, 2, 2, 3, CosPhi::sqrt_rational(2, 3).unwrap()).unwrap();
        let exact = trace_product_exact(&t).unwrap();
        assert_eq!(exact, Mq::from_ratio(1, 2) - Mq::sqrt_of(2).unwrap());
        assert!((trace_product_numeric(&t) - (0.5 - 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn numeric_trace_on_irrational_angles() {
        let t = Triplet::numeric(Theta::Radians(1.0), Theta::Radians(1.0), CosPhi::zero());
        assert!(trace_product_numeric(&t).is_finite());
        assert!(trace_product_exact(&t).is_err());
    }

    #[test]
    fn unsupported_angle_is_reported() {
        let t = Triplet::pi_fracs(1, 2, 2, 7, CosPhi::zero()).unwrap();
        assert!(matches!(trace_product_exact(&t), Err(Error::UnsupportedAngle(_))));
    }

    #[test]
    fn axis_angle_conventions() {
        for d in [1, 2, 3, 4, 5, 6] {
            let r = c_of_theta::<f64>(&pi(1, d));
            let (axis, angle) = r.axis_angle().unwrap();
            assert_eq!(axis.0, [1.0, 0.0, 0.0]);
            assert!((angle - std::f64::consts::PI / d as f64).abs() < 1e-15);
        }
        assert_eq!(Rotation3::<f64>::identity().axis_angle(), Err(Error::DegenerateAxis));
        let (axis, angle) = Rotation3::<f64>::identity().axis_angle_or_default();
        assert_eq!((axis.0, angle), ([1.0, 0.0, 0.0], 0.0));
    }

    #[test]
    fn trace_symmetry_and_axis_independence() {
        let t = Triplet::pi_fracs(1, 2, 2, 3, CosPhi::sqrt_rational(2, 3).unwrap()).unwrap();
        let pair = build_pair::<f64>(&t);
        assert!(check_trace_symmetry(&pair));
        assert_eq!(check_axes_independent(&pair), Ok(true));

        let t = Triplet::pi_fracs(1, 1, 1, 1, CosPhi::zero()).unwrap();
        assert!(matches!(
            check_axes_independent(&build_pair::<f64>(&t)),
            Err(Error::ExcludedCase(_))
        ));
        let mut anonymous = build_pair::<f64>(&t);
        anonymous.triplet = None;
        assert!(check_axes_independent(&anonymous).is_err());
    }

    #[test]
    fn axes_independent_for_dihedral_five_halving() {
        // oracle: explicit 3×3 products and the cross product of their axes
        let t = Triplet::pi_fracs(1, 2, 2, 5, CosPhi::zero()).unwrap();
        let (c, s) = ((2.0 * std::f64::consts::PI / 5.0).cos(), (2.0 * std::f64::consts::PI / 5.0).sin());
        let cx = Matrix([[1.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]]);
        // rotation by 2π/5 about U p₁ = (0, -1, 0)
        let cy = Matrix([[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]]);
        let pair = build_pair::<f64>(&t);
        assert!(pair.cy.0.max_abs_diff(&cy) < 1e-15);
        let a = Rotation3(cx * cy).axis_angle().unwrap().0;
        let b = Rotation3(cy * cx).axis_angle().unwrap().0;
        assert!(a.cross(&b).norm() > 1e-8);
        assert_eq!(check_axes_independent(&pair), Ok(true));
    }

    #[test]
    fn cos_phi_vocabulary_is_consistent() {
        let tags = [
            CosPhiTag::Zero,
            CosPhiTag::Phi23,
            CosPhiTag::Phi25_1,
            CosPhiTag::Phi25_2,
            CosPhiTag::Phi33,
            CosPhiTag::Phi35_1,
            CosPhiTag::Phi35_2,
            CosPhiTag::Phi55,
            CosPhiTag::SqrtRat(crate::scalar::rat(1, 3)),
            CosPhiTag::SqrtRat(crate::scalar::rat(2, 3)),
            CosPhiTag::SqrtRat(crate::scalar::rat(1, 2)),
            CosPhiTag::Rat(crate::scalar::rat(1, 3)),
        ];
        let mut seen = Vec::new();
        for tag in tags {
            let c = CosPhi::new(tag).unwrap();
            assert!((c.cos_sq.to_f64() - c.cos_float * c.cos_float).abs() < 1e-14, "{c}");
            assert!((0.0..1.0).contains(&c.cos_float));
            assert_eq!(CosPhi::parse(&c.to_string()).unwrap(), c);
            assert!(!seen.iter().any(|s: &f64| (s - c.cos_float).abs() < 1e-9));
            seen.push(c.cos_float);
        }
        assert_eq!(seen.len(), 12);
    }

    #[test]
    fn cos_phi_literal_values() {
        let rho = (1.0 + 5f64.sqrt()) / 2.0;
        let close = |tag, v: f64| (CosPhi::named(tag).cos_float - v).abs() < 1e-15;
        assert!(close(CosPhiTag::Phi23, rho / 3f64.sqrt()));
        assert!(close(CosPhiTag::Phi25_1, (rho / 5f64.sqrt()).sqrt()));
        assert!(close(CosPhiTag::Phi25_2, (1.0 / rho / 5f64.sqrt()).sqrt()));
        assert!(close(CosPhiTag::Phi33, 5f64.sqrt() / 3.0));
        assert!(close(CosPhiTag::Phi35_1, (rho.powi(3) / (3.0 * 5f64.sqrt())).sqrt()));
        assert!(close(CosPhiTag::Phi35_2, (rho.powi(-3) / (3.0 * 5f64.sqrt())).sqrt()));
        assert!(close(CosPhiTag::Phi55, 1.0 / 5f64.sqrt()));
    }

    #[test]
    fn cos_phi_domain() {
        assert!(CosPhi::rational(1, 1).is_err());
        assert!(CosPhi::rational(-1, 2).is_err());
        assert!(CosPhi::sqrt_rational(3, 2).is_err());
        assert!(Triplet::pi_fracs(3, 2, 1, 2, CosPhi::zero()).is_err());
        assert!(Triplet::pi_fracs(0, 1, 1, 2, CosPhi::zero()).is_err());
    }
}
