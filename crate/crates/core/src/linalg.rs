//! Fixed-size vectors and matrices over a generic real scalar.

use std::fmt::Debug;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{Float, FromPrimitive};

use crate::error::{Error, Result};

/// Floating-point scalar used by every numeric routine: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Debug + Default + Send + Sync + 'static {
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal fits the scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector<T, const N: usize>(pub [T; N]);

/// Row-major square matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<T, const N: usize>(pub [[T; N]; N]);

pub type Vec3<T> = Vector<T, 3>;
pub type Mat3<T> = Matrix<T, 3>;
pub type Vec4<T> = Vector<T, 4>;
pub type Mat4<T> = Matrix<T, 4>;

impl<T: Real, const N: usize> Vector<T, N> {
    pub fn zeros() -> Self {
        Vector([T::zero(); N])
    }

    /// Unit vector along coordinate `i`.
    pub fn basis(i: usize) -> Self {
        let mut v = Self::zeros();
        v.0[i] = T::one();
        v
    }

    pub fn dot(&self, other: &Self) -> T {
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: T) -> Self {
        Vector(self.0.map(|x| x * s))
    }

    pub fn normalized(&self) -> Self {
        self.scale(T::one() / self.norm())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }

    pub fn to_vec_f64(&self) -> Vec<f64> {
        self.0.iter().map(|x| x.to_f64_lossy()).collect()
    }

    pub fn cast<U: Real>(&self) -> Vector<U, N> {
        Vector(self.0.map(|x| U::lit(x.to_f64_lossy())))
    }
}

impl<T: Real> Vector<T, 3> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vector([x, y, z])
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = o.0;
        Vector([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }
}

impl<T: Real, const N: usize> Index<usize> for Vector<T, N> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Real, const N: usize> Add for Vector<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Vector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl<T: Real, const N: usize> Sub for Vector<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Vector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl<T: Real, const N: usize> Neg for Vector<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Vector(self.0.map(|x| -x))
    }
}

impl<T: Real, const N: usize> Matrix<T, N> {
    pub fn zeros() -> Self {
        Matrix([[T::zero(); N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = T::one();
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        Matrix(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn trace(&self) -> T {
        (0..N).fold(T::zero(), |acc, i| acc + self.0[i][i])
    }

    pub fn scale(&self, s: T) -> Self {
        Matrix(self.0.map(|row| row.map(|x| x * s)))
    }

    pub fn apply(&self, v: &Vector<T, N>) -> Vector<T, N> {
        Vector(std::array::from_fn(|i| {
            (0..N).fold(T::zero(), |acc, j| acc + self.0[i][j] * v.0[j])
        }))
    }

    pub fn column(&self, j: usize) -> Vector<T, N> {
        Vector(std::array::from_fn(|i| self.0[i][j]))
    }

    pub fn max_abs(&self) -> T {
        self.0
            .iter()
            .flatten()
            .fold(T::zero(), |acc, &x| acc.max(x.abs()))
    }

    /// `‖self − other‖∞` taken entrywise.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    /// Entrywise deviation of `MᵀM` from the identity.
    pub fn orthogonality_error(&self) -> T {
        (self.transpose() * *self).max_abs_diff(&Self::identity())
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> T {
        let mut a = self.0;
        let mut det = T::one();
        for col in 0..N {
            let pivot = (col..N)
                .max_by(|&r, &s| a[r][col].abs().partial_cmp(&a[s][col].abs()).unwrap())
                .unwrap();
            if a[pivot][col] == T::zero() {
                return T::zero();
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det = det * a[col][col];
            for r in col + 1..N {
                let f = a[r][col] / a[col][col];
                for c in col..N {
                    a[r][c] = a[r][c] - f * a[col][c];
                }
            }
        }
        det
    }

    pub fn to_rows_f64(&self) -> Vec<Vec<f64>> {
        self.0
            .iter()
            .map(|row| row.iter().map(|x| x.to_f64_lossy()).collect())
            .collect()
    }

    pub fn cast<U: Real>(&self) -> Matrix<U, N> {
        Matrix(self.0.map(|row| row.map(|x| U::lit(x.to_f64_lossy()))))
    }

    /// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues in ascending order and the matching orthonormal
    /// eigenvectors as the columns of the second value.
    pub fn symmetric_eigen(&self) -> Result<([T; N], Matrix<T, N>)> {
        let mut a = self.0;
        let mut v = Self::identity().0;
        let eps = T::epsilon() * T::lit(N as f64);
        let mut converged = false;
        for _sweep in 0..100 {
            let off: T = (0..N)
                .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
                .fold(T::zero(), |acc, (i, j)| acc + a[i][j] * a[i][j]);
            let scale: T = a.iter().flatten().fold(T::zero(), |acc, &x| acc + x * x);
            if off <= eps * eps * scale || off == T::zero() {
                converged = true;
                break;
            }
            for p in 0..N {
                for q in p + 1..N {
                    if a[p][q] == T::zero() {
                        continue;
                    }
                    let two = T::lit(2.0);
                    let theta = (a[q][q] - a[p][p]) / (two * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    let c = T::one() / (t * t + T::one()).sqrt();
                    let s = t * c;
                    for k in 0..N {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..N {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                    for row in v.iter_mut() {
                        let vkp = row[p];
                        let vkq = row[q];
                        row[p] = c * vkp - s * vkq;
                        row[q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        if !converged {
            return Err(Error::SchurFailure("Jacobi sweeps did not converge".into()));
        }
        let mut order: [usize; N] = std::array::from_fn(|i| i);
        order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
        let values = order.map(|i| a[i][i]);
        let vectors = Matrix::from_fn(|r, c| v[r][order[c]]);
        Ok((values, vectors))
    }
}

impl<T: Real, const N: usize> Index<(usize, usize)> for Matrix<T, N> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.0[i][j]
    }
}

impl<T: Real, const N: usize> IndexMut<(usize, usize)> for Matrix<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.0[i][j]
    }
}

impl<T: Real, const N: usize> Mul for Matrix<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Matrix::from_fn(|i, j| (0..N).fold(T::zero(), |acc, k| acc + self.0[i][k] * rhs.0[k][j]))
    }
}

impl<T: Real, const N: usize> Add for Matrix<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Matrix::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<T: Real, const N: usize> Sub for Matrix<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Matrix::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl<T: Real, const N: usize> Neg for Matrix<T, N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

/// Outer product `u vᵀ`.
pub fn outer<T: Real, const N: usize>(u: &Vector<T, N>, v: &Vector<T, N>) -> Matrix<T, N> {
    Matrix::from_fn(|i, j| u.0[i] * v.0[j])
}
