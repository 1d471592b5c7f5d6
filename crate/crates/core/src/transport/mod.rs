//! `SO(4)` frames, the constant connection on the torus and parallel
//! transport along normal polygonal curves.
//!
//! Conventions:
//!
//! * The lift of `C ∈ SO(3)` is `C̃ = diag(1, C)`.
//! * The connection is `d + P₁ dx + P₂ dy` with `exp(−2π P₁) = B̃_x C̃_x` and
//!   `exp(−2π P₂) = B̃_y C̃_y`; the twists `B̃` default to the identity.
//! * A move `(axis, k)` travels `2πk` along that axis and contributes
//!   `exp(−2πk P_axis)`. Moves compose left to right: the curve
//!   `x+1,y+1` transports by `exp(−2πP₁)·exp(−2πP₂)`, matching the word
//!   `C_x C_y` in [`GroupClosure::evaluate_word`](crate::holonomy::GroupClosure::evaluate_word).
//! * Self-dual 2-vectors use the orthonormal frame
//!   `Ω₁ = (e₁∧e₂ + e₃∧e₄)/√2`, `Ω₂ = (e₁∧e₃ + e₄∧e₂)/√2`,
//!   `Ω₃ = (e₁∧e₄ + e₂∧e₃)/√2`, in which the action of `C̃` is `C` itself.

mod quat;

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Mat4, Matrix, Real, Vec4};
use crate::rotation::Rotation3;

use quat::{left_mul, right_mul};

const ORTHO_TOL: f64 = 1e-11;
const SKEW_TOL: f64 = 1e-13;

/// Orientation-preserving orthogonal 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct So4<T>(pub Mat4<T>);

impl<T: Real> So4<T> {
    /// Checks `‖MᵀM − I‖∞ < 1e−11` and `|det M − 1| < 1e−11`.
    pub fn new(m: Mat4<T>) -> Result<Self> {
        let ortho = m.orthogonality_error().to_f64_lossy();
        let det = m.det().to_f64_lossy();
        if !(ortho < ORTHO_TOL && (det - 1.0).abs() < ORTHO_TOL) {
            return Err(Error::OutOfDomain(format!(
                "not in SO(4): orthogonality error {ortho:e}, det {det}"
            )));
        }
        Ok(So4(m))
    }

    pub fn identity() -> Self {
        So4(Matrix::identity())
    }

    pub fn matrix(&self) -> &Mat4<T> {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        So4(self.0.transpose())
    }
}

impl<T: Real> Mul for So4<T> {
    type Output = So4<T>;
    fn mul(self, rhs: Self) -> Self {
        So4(self.0 * rhs.0)
    }
}

/// Skew-symmetric 4×4 matrix, an element of `so(4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Skew4<T>(pub Mat4<T>);

impl<T: Real> Skew4<T> {
    /// Checks `‖M + Mᵀ‖∞ < 1e−13`.
    pub fn new(m: Mat4<T>) -> Result<Self> {
        let err = (m + m.transpose()).max_abs().to_f64_lossy();
        if !(err < SKEW_TOL) {
            return Err(Error::OutOfDomain(format!("not skew-symmetric: {err:e}")));
        }
        Ok(Skew4(m))
    }

    pub fn zero() -> Self {
        Skew4(Matrix::zeros())
    }

    pub fn matrix(&self) -> &Mat4<T> {
        &self.0
    }

    pub fn scale(&self, s: T) -> Self {
        Skew4(self.0.scale(s))
    }

    /// Split into commuting self-dual and anti-self-dual parts.
    fn split(&self) -> (Mat4<T>, Mat4<T>) {
        let a = &self.0;
        let half = T::lit(0.5);
        // Hodge star on the 2-form with coefficients a[i][j].
        let s12 = a[(2, 3)];
        let s13 = a[(3, 1)];
        let s14 = a[(1, 2)];
        let (s23, s24, s34) = (a[(0, 3)], a[(2, 0)], a[(0, 1)]);
        let star = skew_from([s12, s13, s14, s23, s24, s34]);
        ((*a + star).scale(half), (*a - star).scale(half))
    }
}

/// Skew matrix from its upper entries `(12, 13, 14, 23, 24, 34)`.
fn skew_from<T: Real>(u: [T; 6]) -> Mat4<T> {
    let mut m = Matrix::zeros();
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        m[(i, j)] = u[k];
        m[(j, i)] = -u[k];
    }
    m
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `diag(1, C)`.
pub fn lift_so3_to_so4<T: Real>(c: &Rotation3<T>) -> So4<T> {
    let mut m = Matrix::identity();
    for i in 0..3 {
        for j in 0..3 {
            m[(i + 1, j + 1)] = c.0[(i, j)];
        }
    }
    So4(m)
}

/// The twist matrix `B̃` of a unit 4-vector `b`.
///
/// `B̃ x` is the quaternion product `x·b`, so `B̃` fixes every self-dual
/// 2-vector.
pub fn b_tilde<T: Real>(b: &Vec4<T>) -> Result<So4<T>> {
    let n = b.norm().to_f64_lossy();
    if !((n - 1.0).abs() <= 1e-12) {
        return Err(Error::NotUnit(n));
    }
    let [b1, b2, b3, b4] = b.0;
    Ok(So4(Matrix([
        [b1, -b2, -b3, -b4],
        [b2, b1, b4, -b3],
        [b3, -b4, b1, b2],
        [b4, b3, -b2, b1],
    ])))
}

/// Matrix exponential of a skew matrix.
///
/// `P = P₊ + P₋` with commuting parts satisfying `P±² = −α±² I`, so
/// `exp P = (cos α₊ I + sinc α₊ P₊)(cos α₋ I + sinc α₋ P₋)`.
pub fn so4_exp<T: Real>(p: &Skew4<T>) -> So4<T> {
    let (plus, minus) = p.split();
    So4(exp_isoclinic(&plus) * exp_isoclinic(&minus))
}

fn exp_isoclinic<T: Real>(a: &Mat4<T>) -> Mat4<T> {
    let sq: T = PAIRS.iter().fold(T::zero(), |acc, &(i, j)| acc + a[(i, j)] * a[(i, j)]);
    let alpha = (sq / T::lit(2.0)).sqrt();
    let sinc = if alpha < T::lit(1e-8) {
        T::one() - alpha * alpha / T::lit(6.0)
    } else {
        alpha.sin() / alpha
    };
    Matrix::<T, 4>::identity().scale(alpha.cos()) + a.scale(sinc)
}

/// Principal logarithm: `P` with `exp(−2πP) = M`.
///
/// `M` factors as `x ↦ a x c` for unit quaternions `(a, c)`, unique up to a
/// joint sign. With `a = exp(αu)` and `c = exp(γv)`, `α, γ ∈ [0, π]`, the
/// rotation angles of `M` are `α ± γ`; the sign is chosen so `α + γ ≤ π`,
/// which puts both angles in `[−π, π]`. When `α + γ = π` either sign gives a
/// half-turn block and the one with `Re a ≥ 0` is kept.
pub fn so4_log<T: Real>(m: &So4<T>) -> Result<Skew4<T>> {
    let (a, c) = quat::factor(&m.0)?;
    let (alpha, gamma) = (a.angle(), c.angle());
    let pi = T::lit(std::f64::consts::PI);
    let tie = T::lit(1e-12);
    let flip = alpha + gamma > pi + tie || ((alpha + gamma - pi).abs() <= tie && a.w < T::zero());
    let (a, c) = if flip { (a.neg(), c.neg()) } else { (a, c) };
    let gen = left_mul(&a.log()) + right_mul(&c.log());
    Ok(Skew4(gen.scale(-T::one() / (T::lit(2.0) * pi))))
}

/// Lie-algebra data of the connection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionSpec<T> {
    pub p1: Skew4<T>,
    pub p2: Skew4<T>,
}

/// `P₁ = log(B̃_x C̃_x)`, `P₂ = log(B̃_y C̃_y)` on the principal branch.
pub fn build_connection<T: Real>(
    cx: &Rotation3<T>,
    cy: &Rotation3<T>,
    bx: Option<&Vec4<T>>,
    by: Option<&Vec4<T>>,
) -> Result<ConnectionSpec<T>> {
    let twisted = |c: &Rotation3<T>, b: Option<&Vec4<T>>| -> Result<So4<T>> {
        let lift = lift_so3_to_so4(c);
        Ok(match b {
            Some(b) => b_tilde(b)? * lift,
            None => lift,
        })
    };
    Ok(ConnectionSpec {
        p1: so4_log(&twisted(cx, bx)?)?,
        p2: so4_log(&twisted(cy, by)?)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
        })
    }
}

/// Loop in the plane made of axis-parallel segments of length `2π·steps`,
/// starting at the origin.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalPolygonalCurve {
    moves: Vec<(Axis, i64)>,
}

impl NormalPolygonalCurve {
    pub fn new(moves: Vec<(Axis, i64)>) -> Result<Self> {
        if moves.iter().any(|&(_, k)| k == 0) {
            return Err(Error::Parse("curve moves must have nonzero steps".into()));
        }
        Ok(NormalPolygonalCurve { moves })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Curve for a generator word: `0 ↦ x+1`, `1 ↦ y+1`, `2 ↦ x−1`, `3 ↦ y−1`.
    pub fn from_word(word: &[u8]) -> Result<Self> {
        let moves = word
            .iter()
            .map(|&g| match g {
                0 => Ok((Axis::X, 1)),
                1 => Ok((Axis::Y, 1)),
                2 => Ok((Axis::X, -1)),
                3 => Ok((Axis::Y, -1)),
                _ => Err(Error::Parse(format!("no generator {g}"))),
            })
            .collect::<Result<_>>()?;
        Ok(NormalPolygonalCurve { moves })
    }

    pub fn moves(&self) -> &[(Axis, i64)] {
        &self.moves
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Net displacement in periods; `(0, 0)` for a closed curve in the plane.
    pub fn displacement(&self) -> (i64, i64) {
        self.moves.iter().fold((0, 0), |(x, y), &(a, k)| match a {
            Axis::X => (x + k, y),
            Axis::Y => (x, y + k),
        })
    }
}

impl FromStr for NormalPolygonalCurve {
    type Err = Error;

    /// Comma-separated moves such as `x+1,y-2`; the empty string is the
    /// constant curve.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let moves = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let bad = || Error::Parse(format!("bad curve move {tok:?}"));
                let mut chars = tok.chars();
                let axis = match chars.next() {
                    Some('x' | 'X') => Axis::X,
                    Some('y' | 'Y') => Axis::Y,
                    _ => return Err(bad()),
                };
                let rest = chars.as_str();
                if !rest.starts_with(['+', '-']) {
                    return Err(bad());
                }
                let k: i64 = rest.parse().map_err(|_| bad())?;
                Ok((axis, k))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(moves)
    }
}

impl fmt::Display for NormalPolygonalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, k)) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}{k:+}")?;
        }
        Ok(())
    }
}

/// Frame change along the curve: `∏ exp(−2π·k·P_axis)` in curve order.
pub fn transport<T: Real>(conn: &ConnectionSpec<T>, curve: &NormalPolygonalCurve) -> So4<T> {
    let two_pi = T::lit(2.0 * std::f64::consts::PI);
    curve.moves.iter().fold(So4::identity(), |acc, &(axis, k)| {
        let p = match axis {
            Axis::X => &conn.p1,
            Axis::Y => &conn.p2,
        };
        let step = so4_exp(&p.scale(-two_pi * T::lit(k as f64)));
        acc * step
    })
}

/// Coordinates of `Ω₁, Ω₂, Ω₃` on the basis `eᵢ∧eⱼ`, `i < j`, ordered as
/// `PAIRS`.
fn omega<T: Real>() -> [[T; 6]; 3] {
    let r = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let z = T::zero();
    [
        [r, z, z, z, z, r],
        [z, r, z, z, -r, z],
        [z, z, r, r, z, z],
    ]
}

/// Induced rotation of the self-dual frame: `R_jk = ⟨Ω_j, Λ²M Ω_k⟩`.
pub fn lambda_plus_action<T: Real>(m: &So4<T>) -> Rotation3<T> {
    let m = &m.0;
    // Λ²M on the basis of 2-vectors, by Plücker coordinates.
    let mut w = [[T::zero(); 6]; 6];
    for (col, &(a, b)) in PAIRS.iter().enumerate() {
        for (row, &(i, j)) in PAIRS.iter().enumerate() {
            w[row][col] = m[(i, a)] * m[(j, b)] - m[(j, a)] * m[(i, b)];
        }
    }
    let om = omega::<T>();
    let r = Mat3::from_fn(|j, k| {
        (0..6).fold(T::zero(), |acc, row| {
            let image: T = (0..6).fold(T::zero(), |s, col| s + w[row][col] * om[k][col]);
            acc + om[j][row] * image
        })
    });
    Rotation3(r)
}

/// `lambda_plus_action(transport(conn, curve))`.
pub fn holonomy_of_curve<T: Real>(
    conn: &ConnectionSpec<T>,
    curve: &NormalPolygonalCurve,
) -> Rotation3<T> {
    lambda_plus_action(&transport(conn, curve))
}
