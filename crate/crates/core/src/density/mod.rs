//! How densely words in a rotation pair spread a point over the sphere.

mod grid;

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::holonomy::dedup_points;
use crate::linalg::{Mat3, Matrix, Real, Vec3, Vector};
use crate::rotation::{Rotation3, RotationPair};

pub use grid::SphereGrid;

/// How a [`WordOrbit`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Construction {
    /// Alternating powers of `C'_x C'_y` and `C'_y C'_x`, up to level `k`.
    WkIteration(usize),
    RandomWords,
}

#[derive(Debug, Clone)]
pub struct WordOrbit<T> {
    pub points: Vec<Vec3<T>>,
    pub construction: Construction,
    /// Cumulative point count after each level (iteration only).
    pub level_ends: Vec<usize>,
}

impl<T: Real> WordOrbit<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points distinct within `tol`.
    pub fn distinct_count(&self, tol: T) -> usize {
        dedup_points(self.points.iter().copied(), tol).len()
    }

    /// `x,y,z` rows with a header line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,y,z")?;
        for p in &self.points {
            let v = p.to_vec_f64();
            writeln!(out, "{},{},{}", v[0], v[1], v[2])?;
        }
        Ok(())
    }
}

fn powers<T: Real>(m: &Mat3<T>, count: usize) -> Vec<Mat3<T>> {
    let mut out = Vec::with_capacity(count);
    let mut acc = Matrix::identity();
    for _ in 0..count {
        out.push(acc);
        acc = *m * acc;
    }
    out
}

/// The sets `W_1, W'_1, W_2, W'_2, …, W'_{k_max}`.
///
/// `W_1 = {A^l p₀ : l < s}` with `A = C'_x C'_y`; each following level applies
/// `B^m`, `m < s`, to every point of the previous one, alternating `B = C'_y C'_x`
/// and `A`. A level has up to `|prev|·s` candidates, of which at most `s²` are
/// kept, one per stride of indices. Points are deduplicated within `1e−9`.
pub fn iterate_wk<T: Real>(
    pair: &RotationPair<T>,
    p0: &Vec3<T>,
    k_max: usize,
    samples_per_circle: usize,
) -> WordOrbit<T> {
    let s = samples_per_circle.max(1);
    let keep = s.saturating_mul(s);
    let a = powers(&pair.product_xy().0, s);
    let b = powers(&pair.product_yx().0, s);
    let tol = T::lit(1e-9);

    let mut level: Vec<Vec3<T>> = dedup_points(a.iter().map(|m| m.apply(p0)), tol);
    let mut all = level.clone();
    let mut level_ends = vec![all.len()];
    for step in 1..2 * k_max.max(1) {
        let pows = if step % 2 == 1 { &b } else { &a };
        let total = level.len() * s;
        let picks = total.min(keep);
        // one candidate per stride, with the offset cycling through the stride
        // so the kept points do not all share one power
        let stride = (total / keep).max(1);
        let next = (0..picks).map(|i| {
            let j = i * stride + i % stride;
            pows[j % s].apply(&level[j / s])
        });
        level = dedup_points(next, tol);
        all.extend_from_slice(&level);
        level_ends.push(all.len());
    }
    WordOrbit {
        points: all,
        construction: Construction::WkIteration(k_max.max(1)),
        level_ends,
    }
}

/// `p₁` followed by the images of `p₁` under `count` random words.
///
/// Each word has a length drawn uniformly from `0..=max_length` and letters
/// drawn uniformly from `{C'_x, C'_y}`, using ChaCha8 seeded with `seed`.
/// The result is the raw multiset; it is not deduplicated.
pub fn random_word_orbit<T: Real>(
    pair: &RotationPair<T>,
    max_length: usize,
    count: usize,
    seed: u64,
) -> WordOrbit<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = pair.generators();
    let p1: Vec3<T> = Vector::basis(0);
    let mut points = Vec::with_capacity(count + 1);
    points.push(p1);
    for _ in 0..count {
        let len = rng.gen_range(0..=max_length);
        let mut p = p1;
        for _ in 0..len {
            p = gens[rng.gen_range(0..2)].apply(&p);
        }
        points.push(p);
    }
    WordOrbit {
        points,
        construction: Construction::RandomWords,
        level_ends: Vec::new(),
    }
}

/// Fraction of grid cells containing at least one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub resolution_deg: f64,
    pub cells_total: usize,
    pub cells_hit: usize,
    pub fraction: f64,
    pub points_generated: usize,
    pub max_word_length: Option<usize>,
    pub seed: Option<u64>,
}

impl CoverageReport {
    pub fn with_words(mut self, max_word_length: usize, seed: u64) -> Self {
        self.max_word_length = Some(max_word_length);
        self.seed = Some(seed);
        self
    }
}

pub fn coverage<T: Real>(points: &[Vec3<T>], grid: &SphereGrid) -> CoverageReport {
    let mut hit = vec![false; grid.cells_total()];
    for p in points {
        hit[grid.cell_of(&p.cast())] = true;
    }
    let cells_hit = hit.iter().filter(|&&h| h).count();
    CoverageReport {
        resolution_deg: grid.resolution_deg(),
        cells_total: grid.cells_total(),
        cells_hit,
        fraction: cells_hit as f64 / grid.cells_total() as f64,
        points_generated: points.len(),
        max_word_length: None,
        seed: None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CircleFit {
    Circle { normal: [f64; 3], residual: f64 },
    NotCircle { residual: f64 },
}

/// Least-squares plane through the points; a circle when every point lies
/// within `1e−6` of the plane and the points are not all the same.
pub fn circle_test<T: Real>(points: &[Vec3<T>]) -> Result<CircleFit> {
    if points.len() < 10 {
        return Err(Error::TooFewPoints {
            needed: 10,
            got: points.len(),
        });
    }
    let pts: Vec<Vec3<f64>> = points.iter().map(|p| p.cast()).collect();
    let n = pts.len() as f64;
    let mean = pts.iter().fold(Vector([0.0; 3]), |acc, p| acc + *p).scale(1.0 / n);
    let mut cov = Matrix::<f64, 3>::zeros();
    for p in &pts {
        let d = *p - mean;
        for i in 0..3 {
            for j in 0..3 {
                cov[(i, j)] += d[i] * d[j];
            }
        }
    }
    let spread = pts.iter().map(|p| (*p - mean).norm()).fold(0.0, f64::max);
    let (_, vecs) = cov.scale(1.0 / n).symmetric_eigen()?;
    let normal = vecs.column(0);
    let residual = pts
        .iter()
        .map(|p| (*p - mean).dot(&normal).abs())
        .fold(0.0, f64::max);
    if spread < 1e-9 || residual >= 1e-6 {
        return Ok(CircleFit::NotCircle { residual });
    }
    let mut normal = normal;
    if let Some(first) = normal.0.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            normal = -normal;
        }
    }
    Ok(CircleFit::Circle {
        normal: normal.0,
        residual,
    })
}

/// Rotate every point by `r`.
pub fn rotate_points<T: Real>(points: &[Vec3<T>], r: &Rotation3<T>) -> Vec<Vec3<T>> {
    points.iter().map(|p| r.apply(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::{build_pair, CosPhi, Triplet};

    fn infinite_pair() -> RotationPair<f64> {
        build_pair(&Triplet::pi_fracs(1, 2, 2, 3, CosPhi::sqrt_rational(2, 3).unwrap()).unwrap())
    }

    fn a4_pair() -> RotationPair<f64> {
        build_pair(&Triplet::pi_fracs(1, 1, 2, 3, CosPhi::sqrt_rational(1, 3).unwrap()).unwrap())
    }

    #[test]
    fn fixed_point_gives_single_first_level() {
        let pair = infinite_pair();
        let (axis, _) = pair.product_xy().axis_angle().unwrap();
        let w = iterate_wk(&pair, &axis, 1, 50);
        assert_eq!(w.level_ends[0], 1);
        let second = &w.points[w.level_ends[0]..w.level_ends[1]];
        assert!(matches!(circle_test(second).unwrap(), CircleFit::Circle { .. }));
    }

    #[test]
    fn finite_pair_orbit_is_bounded() {
        let pair = a4_pair();
        let p = Vector([0.2, 0.3, 0.9f64]).normalized();
        let w = iterate_wk(&pair, &p, 3, 40);
        assert!(w.distinct_count(1e-9) <= 12);
        let r = random_word_orbit(&pair, 20, 500, 7);
        assert!(r.distinct_count(1e-9) <= 12);
    }

    #[test]
    fn iteration_spreads_for_infinite_pair() {
        let pair = infinite_pair();
        let p = Vector([0.2, 0.3, 0.9f64]).normalized();
        let w = iterate_wk(&pair, &p, 3, 200);
        let report = coverage(&w.points, &SphereGrid::new(5.0));
        assert!(report.cells_hit > 1000, "{report:?}");
    }

    #[test]
    fn random_words_are_deterministic() {
        let pair = infinite_pair();
        let a = random_word_orbit(&pair, 10, 100, 42);
        let b = random_word_orbit(&pair, 10, 100, 42);
        assert_eq!(a.points, b.points);
        let c = random_word_orbit(&pair, 10, 100, 43);
        assert_ne!(a.points, c.points);
        assert_eq!(random_word_orbit(&pair, 10, 0, 1).points, vec![Vector::basis(0)]);
    }

    #[test]
    fn coverage_examples() {
        let grid = SphereGrid::new(5.0);
        let empty: Vec<Vec3<f64>> = Vec::new();
        let r = coverage(&empty, &grid);
        assert_eq!((r.cells_hit, r.fraction), (0, 0.0));
        let w = random_word_orbit(&a4_pair(), 20, 2000, 3);
        assert!(coverage(&w.points, &grid).cells_hit <= 12);
    }

    #[test]
    fn coverage_is_monotone() {
        let grid = SphereGrid::new(10.0);
        let w = random_word_orbit(&infinite_pair(), 25, 4000, 9);
        let mut last = 0;
        for n in (0..=w.len()).step_by(500) {
            let hit = coverage(&w.points[..n], &grid).cells_hit;
            assert!(hit >= last);
            last = hit;
        }
    }

    #[test]
    fn circle_test_examples() {
        let pair = infinite_pair();
        let p = Vector([0.2, 0.3, 0.9f64]).normalized();
        let w = iterate_wk(&pair, &p, 1, 64);
        let first = &w.points[..w.level_ends[0]];
        let (axis, _) = pair.product_xy().axis_angle().unwrap();
        match circle_test(first).unwrap() {
            CircleFit::Circle { normal, .. } => {
                assert!(Vector(normal).cross(&axis).norm() < 1e-6);
            }
            other => panic!("{other:?}"),
        }
        let second = &w.points[w.level_ends[0]..w.level_ends[1]];
        assert!(matches!(circle_test(second).unwrap(), CircleFit::NotCircle { .. }));
        let same = vec![p; 10];
        assert!(matches!(circle_test(&same).unwrap(), CircleFit::NotCircle { .. }));
        assert!(matches!(circle_test(&same[..3]), Err(Error::TooFewPoints { .. })));
    }

    #[test]
    fn csv_export() {
        let w = random_word_orbit(&a4_pair(), 3, 2, 0);
        let mut buf = Vec::new();
        w.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x,y,z\n1,0,0\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
