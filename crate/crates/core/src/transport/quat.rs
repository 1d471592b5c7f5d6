//! Quaternions `w + xi + yj + zk`, identified with `R⁴` in that order.

use crate::error::{Error, Result};
use crate::linalg::{Mat4, Matrix, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(super) struct Quat<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Quat<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Quat { w, x, y, z }
    }

    fn from_array(a: [T; 4]) -> Self {
        Quat::new(a[0], a[1], a[2], a[3])
    }

    fn to_array(self) -> [T; 4] {
        [self.w, self.x, self.y, self.z]
    }

    fn basis(i: usize) -> Self {
        Self::from_array(std::array::from_fn(|k| if k == i { T::one() } else { T::zero() }))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Quat::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }

    pub fn neg(&self) -> Self {
        Quat::new(-self.w, -self.x, -self.y, -self.z)
    }

    fn vec_norm(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// `α ∈ [0, π]` with `q = cos α + u sin α`.
    pub fn angle(&self) -> T {
        self.vec_norm().atan2(self.w)
    }

    /// Pure quaternion `αu` with `exp(αu) = q`; for `q = −1` the axis `i`.
    pub fn log(&self) -> Self {
        let alpha = self.angle();
        let n = self.vec_norm();
        let z = T::zero();
        if n == z {
            return if self.w >= z {
                Quat::new(z, z, z, z)
            } else {
                Quat::new(z, alpha, z, z)
            };
        }
        let s = alpha / n;
        Quat::new(z, self.x * s, self.y * s, self.z * s)
    }
}

/// Matrix of `v ↦ q v`.
pub(super) fn left_mul<T: Real>(q: &Quat<T>) -> Mat4<T> {
    op_matrix(|v| q.mul(&v))
}

/// Matrix of `v ↦ v q`.
pub(super) fn right_mul<T: Real>(q: &Quat<T>) -> Mat4<T> {
    op_matrix(|v| v.mul(q))
}

fn op_matrix<T: Real>(f: impl Fn(Quat<T>) -> Quat<T>) -> Mat4<T> {
    let cols: [[T; 4]; 4] = std::array::from_fn(|j| f(Quat::basis(j)).to_array());
    Matrix::from_fn(|i, j| cols[j][i])
}

/// Unit quaternions `(a, c)` with `M v = a v c`, up to a joint sign.
///
/// The matrices of `v ↦ e_p v e_q` are orthogonal with squared norm 4, so
/// `a_p c_q = ⟨M, e_p · e_q⟩ / 4`; for `M ∈ SO(4)` that table has rank one.
pub(super) fn factor<T: Real>(m: &Mat4<T>) -> Result<(Quat<T>, Quat<T>)> {
    if m.0.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::SchurFailure("non-finite entry".into()));
    }
    let quarter = T::lit(0.25);
    let k: [[T; 4]; 4] = std::array::from_fn(|p| {
        std::array::from_fn(|q| {
            let (ep, eq) = (Quat::basis(p), Quat::basis(q));
            let t = op_matrix(|v| ep.mul(&v).mul(&eq));
            let mut dot = T::zero();
            for i in 0..4 {
                for j in 0..4 {
                    dot = dot + m[(i, j)] * t[(i, j)];
                }
            }
            dot * quarter
        })
    });
    let row_norm = |r: &[T; 4]| r.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
    let best = (0..4)
        .max_by(|&i, &j| row_norm(&k[i]).partial_cmp(&row_norm(&k[j])).unwrap())
        .unwrap();
    let n = row_norm(&k[best]);
    if n == T::zero() {
        return Err(Error::SchurFailure("zero matrix".into()));
    }
    let c = k[best].map(|x| x / n);
    let a: [T; 4] = std::array::from_fn(|p| (0..4).fold(T::zero(), |acc, q| acc + k[p][q] * c[q]));
    let mut resid = T::zero();
    for p in 0..4 {
        for q in 0..4 {
            resid = resid.max((k[p][q] - a[p] * c[q]).abs());
        }
    }
    let na = row_norm(&a);
    if resid > T::lit(1e-6) || (na - T::one()).abs() > T::lit(1e-6) {
        return Err(Error::SchurFailure(format!(
            "matrix is not a rotation (factor residual {:e}, norm {})",
            resid.to_f64_lossy(),
            na.to_f64_lossy()
        )));
    }
    Ok((Quat::from_array(a.map(|x| x / na)), Quat::from_array(c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_recovers_product() {
        let a = Quat::new(0.5f64, 0.5, -0.5, 0.5);
        let n = (0.9f64 * 0.9 + 0.3 * 0.3 + 0.3 * 0.3 + 0.1 * 0.1).sqrt();
        let c = Quat::new(0.9 / n, 0.3 / n, -0.3 / n, 0.1 / n);
        let m = left_mul(&a) * right_mul(&c);
        let (fa, fc) = factor(&m).unwrap();
        let s = if fa.w * a.w > 0.0 { 1.0 } else { -1.0 };
        for (x, y) in fa.to_array().iter().zip(a.to_array()) {
            assert!((x - s * y).abs() < 1e-14);
        }
        for (x, y) in fc.to_array().iter().zip(c.to_array()) {
            assert!((x - s * y).abs() < 1e-14);
        }
    }

    #[test]
    fn log_of_minus_one() {
        let q = Quat::new(-1.0f64, 0.0, 0.0, 0.0);
        let l = q.log();
        assert!((l.x - std::f64::consts::PI).abs() < 1e-15);
    }
}
