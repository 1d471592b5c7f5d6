use std::collections::HashMap;

use crate::linalg::Real;

/// Hash of items by three real coordinates, for "already seen within `tol`"
/// queries.
///
/// Cells are much coarser than `tol`, so a query normally probes a single
/// cell; a coordinate lying within `tol` of a cell boundary also probes the
/// neighbour on that side. Unlike rounding to a fixed number of digits this
/// never splits two nearby values across different keys.
pub(crate) struct SpatialIndex<T> {
    cell: T,
    tol: T,
    buckets: HashMap<[i64; 3], Vec<usize>>,
}

impl<T: Real> SpatialIndex<T> {
    pub fn new(tol: T) -> Self {
        let cell = (tol * T::lit(1000.0)).max(T::lit(1e-6));
        SpatialIndex {
            cell,
            tol,
            buckets: HashMap::new(),
        }
    }

    fn cell_of(&self, x: T) -> (i64, T) {
        let scaled = x / self.cell;
        let k = scaled.floor();
        (k.to_i64().unwrap_or(i64::MAX), scaled - k)
    }

    /// First stored index `i` with `key` near and `same(i)` true.
    pub fn find(&self, key: [T; 3], mut same: impl FnMut(usize) -> bool) -> Option<usize> {
        let margin = self.tol / self.cell;
        let mut options: [Vec<i64>; 3] = Default::default();
        for (d, &x) in key.iter().enumerate() {
            let (k, frac) = self.cell_of(x);
            options[d].push(k);
            if frac < margin {
                options[d].push(k - 1);
            }
            if frac > T::one() - margin {
                options[d].push(k + 1);
            }
        }
        for &a in &options[0] {
            for &b in &options[1] {
                for &c in &options[2] {
                    if let Some(bucket) = self.buckets.get(&[a, b, c]) {
                        if let Some(&i) = bucket.iter().find(|&&i| same(i)) {
                            return Some(i);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn insert(&mut self, key: [T; 3], index: usize) {
        let cell = [
            self.cell_of(key[0]).0,
            self.cell_of(key[1]).0,
            self.cell_of(key[2]).0,
        ];
        self.buckets.entry(cell).or_default().push(index);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_values_are_found() {
        let mut idx = SpatialIndex::new(1e-9);
        let stored = [1e-6 - 1e-12, 0.5, 0.25];
        idx.insert(stored, 0);
        let probe = [1e-6 + 1e-12, 0.5, 0.25];
        assert_eq!(idx.find(probe, |_| true), Some(0));
        assert_eq!(idx.find([0.3, 0.5, 0.25], |_| true), None);
    }
}
