//! The group generated by a rotation pair, its classification when finite,
//! and orbits of points on the sphere.

mod catalog;
mod index;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Real, Vec3, Vector};
use crate::poly::{complexity_verdict, Verdict};
use crate::rotation::{check_axes_independent, Rotation3, RotationPair};

pub use catalog::{
    catalog_verify, halved_triplets, Catalog, CatalogEntry, CatalogReport, EntryResult,
    HalvedTriplet,
};
pub(crate) use index::SpatialIndex;

pub const DEFAULT_CAP: usize = 10_000;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_WORD_LEN: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosureStatus {
    /// Closed under both generators; carries the order.
    Complete(usize),
    /// Stopped at the element cap or the word-length cap.
    CapExceeded(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct ClosureOptions<T> {
    pub cap: usize,
    pub tol: T,
    pub max_word_len: usize,
}

impl<T: Real> Default for ClosureOptions<T> {
    fn default() -> Self {
        ClosureOptions {
            cap: DEFAULT_CAP,
            tol: T::lit(DEFAULT_TOL),
            max_word_len: DEFAULT_MAX_WORD_LEN,
        }
    }
}

/// Elements reached by breadth-first search from the identity.
#[derive(Debug, Clone)]
pub struct GroupClosure<T> {
    pub generators: Vec<Rotation3<T>>,
    pub elements: Vec<Rotation3<T>>,
    /// Shortest word for each element: `elements[i] = g[w₀] g[w₁] ⋯`.
    pub words: Vec<Vec<u8>>,
    pub status: ClosureStatus,
    pub tol: T,
}

fn matrix_key<T: Real>(r: &Rotation3<T>) -> [T; 3] {
    let m = &r.0;
    [m[(0, 0)], m[(0, 1)], m[(1, 2)]]
}

/// Breadth-first closure under left multiplication by the generators.
pub fn close_group<T: Real>(generators: &[Rotation3<T>], cap: usize, tol: T) -> GroupClosure<T> {
    close_group_with(
        generators,
        ClosureOptions {
            cap,
            tol,
            max_word_len: DEFAULT_MAX_WORD_LEN,
        },
    )
}

pub fn close_group_with<T: Real>(generators: &[Rotation3<T>], opts: ClosureOptions<T>) -> GroupClosure<T> {
    let mut elements = vec![Rotation3::identity()];
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut index = SpatialIndex::new(opts.tol);
    index.insert(matrix_key(&elements[0]), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut status = None;

    'bfs: while let Some(i) = queue.pop_front() {
        for (g_idx, g) in generators.iter().enumerate() {
            let next = g.compose(&elements[i]);
            let found = index.find(matrix_key(&next), |j| {
                elements[j].0.max_abs_diff(&next.0) < opts.tol
            });
            if found.is_some() {
                continue;
            }
            if elements.len() >= opts.cap || words[i].len() >= opts.max_word_len {
                status = Some(ClosureStatus::CapExceeded(opts.cap));
                break 'bfs;
            }
            let mut word = Vec::with_capacity(words[i].len() + 1);
            word.push(g_idx as u8);
            word.extend_from_slice(&words[i]);
            index.insert(matrix_key(&next), elements.len());
            queue.push_back(elements.len());
            elements.push(next);
            words.push(word);
        }
    }

    GroupClosure {
        generators: generators.to_vec(),
        status: status.unwrap_or(ClosureStatus::Complete(elements.len())),
        elements,
        words,
        tol: opts.tol,
    }
}

impl<T: Real> GroupClosure<T> {
    pub fn is_complete(&self) -> bool {
        matches!(self.status, ClosureStatus::Complete(_))
    }

    pub fn order(&self) -> Option<usize> {
        match self.status {
            ClosureStatus::Complete(n) => Some(n),
            ClosureStatus::CapExceeded(_) => None,
        }
    }

    /// Index of the element equal to `r` within tolerance (linear scan).
    pub fn position(&self, r: &Rotation3<T>) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| e.0.max_abs_diff(&r.0) < self.tol)
    }

    /// Product of the generators along `word`.
    pub fn evaluate_word(&self, word: &[u8]) -> Rotation3<T> {
        word.iter().fold(Rotation3::identity(), |acc, &g| {
            acc.compose(&self.generators[g as usize])
        })
    }
}

/// Finite subgroups of `SO(3)` up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupLabel {
    Trivial,
    Cyclic(usize),
    Dihedral(usize),
    A4,
    S4,
    A5,
}

impl GroupLabel {
    pub fn order(&self) -> usize {
        match *self {
            GroupLabel::Trivial => 1,
            GroupLabel::Cyclic(n) => n,
            GroupLabel::Dihedral(n) => 2 * n,
            GroupLabel::A4 => 12,
            GroupLabel::S4 => 24,
            GroupLabel::A5 => 60,
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::Trivial => write!(f, "1"),
            GroupLabel::Cyclic(n) => write!(f, "C{n}"),
            GroupLabel::Dihedral(n) => write!(f, "D{n}"),
            GroupLabel::A4 => write!(f, "A4"),
            GroupLabel::S4 => write!(f, "S4"),
            GroupLabel::A5 => write!(f, "A5"),
        }
    }
}

impl FromStr for GroupLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown group label {s:?}"));
        Ok(match s {
            "1" => GroupLabel::Trivial,
            "A4" => GroupLabel::A4,
            "S4" => GroupLabel::S4,
            "A5" => GroupLabel::A5,
            _ => {
                let n: usize = s.get(1..).and_then(|n| n.parse().ok()).ok_or_else(bad)?;
                match &s[..1] {
                    "C" => GroupLabel::Cyclic(n),
                    "D" => GroupLabel::Dihedral(n),
                    _ => return Err(bad()),
                }
            }
        })
    }
}

impl Serialize for GroupLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn element_order<T: Real>(r: &Rotation3<T>, max: usize, tol: T) -> Option<usize> {
    let mut acc = *r;
    for k in 1..=max {
        if acc.is_identity(tol) {
            return Some(k);
        }
        acc = acc.compose(r);
    }
    None
}

/// Classify a complete closure by its axis structure and element orders.
pub fn classify_finite<T: Real>(g: &GroupClosure<T>) -> Result<GroupLabel> {
    let order = g.order().ok_or(Error::IncompleteGroup)?;
    let loose = T::lit(1e-6).max(g.tol * T::lit(100.0));
    if order == 1 {
        return Ok(GroupLabel::Trivial);
    }
    let axes: Vec<(Vec3<T>, T)> = g
        .elements
        .iter()
        .filter(|e| !e.is_identity(loose))
        .map(|e| e.axis_angle_or_default())
        .collect();
    let parallel = |a: &Vec3<T>, b: &Vec3<T>| a.cross(b).norm() < loose;

    if axes.iter().all(|(a, _)| parallel(a, &axes[0].0)) {
        return Ok(GroupLabel::Cyclic(order));
    }
    if order % 2 == 0 {
        let n = order / 2;
        let pi = T::lit(std::f64::consts::PI);
        let dihedral = axes.iter().any(|(main, _)| {
            let on_main = axes.iter().filter(|(a, _)| parallel(a, main)).count();
            let flips = axes
                .iter()
                .filter(|(a, angle)| {
                    a.dot(main).abs() < loose && (*angle - pi).abs() < loose
                })
                .count();
            on_main + 1 == n && flips == n
        });
        if dihedral {
            return Ok(GroupLabel::Dihedral(n));
        }
    }

    let mut histogram = BTreeMap::new();
    for e in &g.elements {
        let k = element_order(e, order, loose).ok_or(Error::UnrecognizedGroup { order })?;
        *histogram.entry(k).or_insert(0usize) += 1;
    }
    let hist: Vec<(usize, usize)> = histogram.into_iter().collect();
    match (order, hist.as_slice()) {
        (12, [(1, 1), (2, 3), (3, 8)]) => Ok(GroupLabel::A4),
        (24, [(1, 1), (2, 9), (3, 8), (4, 6)]) => Ok(GroupLabel::S4),
        (60, [(1, 1), (2, 15), (3, 20), (5, 24)]) => Ok(GroupLabel::A5),
        _ => Err(Error::UnrecognizedGroup { order }),
    }
}

/// Where an orbit starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrbitSource {
    /// The basis vector `p_i` (1-based).
    Basis(usize),
    Point,
}

#[derive(Debug, Clone)]
pub struct OrbitSet<T> {
    pub points: Vec<Vec3<T>>,
    pub source: OrbitSource,
}

impl<T: Real> OrbitSet<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Deduplicated unit vectors.
pub(crate) fn dedup_points<T: Real>(points: impl IntoIterator<Item = Vec3<T>>, tol: T) -> Vec<Vec3<T>> {
    let mut out: Vec<Vec3<T>> = Vec::new();
    let mut index = SpatialIndex::new(tol);
    for p in points {
        if index
            .find(p.0, |j| out[j].max_abs_diff(&p) < tol)
            .is_none()
        {
            index.insert(p.0, out.len());
            out.push(p);
        }
    }
    out
}

/// `{C p : C ∈ G}` for a complete closure.
pub fn orbit<T: Real>(g: &GroupClosure<T>, p: &Vec3<T>) -> Result<OrbitSet<T>> {
    if !g.is_complete() {
        return Err(Error::IncompleteGroup);
    }
    let norm = p.norm();
    if (norm - T::one()).abs() > T::lit(1e-10) {
        return Err(Error::NotUnit(norm.to_f64_lossy()));
    }
    let source = (0..3)
        .find(|&i| p.max_abs_diff(&Vector::basis(i)) == T::zero())
        .map_or(OrbitSource::Point, |i| OrbitSource::Basis(i + 1));
    let points = dedup_points(g.elements.iter().map(|c| c.apply(p)), g.tol);
    Ok(OrbitSet { points, source })
}

/// Conditions under which the pair's products generate a dense orbit:
/// `C₁² ≠ I` and `C₂² ≠ I` for `C₁ = C'_x C'_y`, `C₂ = C'_y C'_x`; their axes
/// are independent; and their common eigenvalue `ζ` is not a root of unity.
pub fn check_density_conditions<T: Real>(pair: &RotationPair<T>) -> bool {
    let tol = T::lit(1e-9).max(T::epsilon() * T::lit(64.0));
    let (c1, c2) = (pair.product_xy(), pair.product_yx());
    let squares_nontrivial = !c1.compose(&c1).is_identity(tol) && !c2.compose(&c2).is_identity(tol);
    let independent = matches!(check_axes_independent(pair), Ok(true));
    let irrational = pair
        .triplet
        .as_ref()
        .is_some_and(|t| matches!(complexity_verdict(t), Ok(Verdict::InfiniteCertified)));
    squares_nontrivial && independent && irrational
}
