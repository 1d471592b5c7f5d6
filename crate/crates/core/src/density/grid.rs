use std::f64::consts::PI;

use crate::linalg::Vec3;

/// Equal-area partition of the unit sphere into latitude bands.
///
/// There are `round(180/res)` bands. Band `i` is split into `n_i` cells with
/// `n_i ∝ cos(latitude)` so that cells are roughly square; the band edges in
/// `z` are then placed so every band has area `4π n_i / N`, which makes all
/// `N = Σ n_i` cells exactly equal in area.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    resolution_deg: f64,
    /// `z` at the bottom of each band, plus `1.0` at the top.
    z_edges: Vec<f64>,
    per_band: Vec<usize>,
    /// Id of the first cell of each band.
    offsets: Vec<usize>,
    total: usize,
}

impl SphereGrid {
    pub fn new(resolution_deg: f64) -> Self {
        assert!(
            resolution_deg > 0.0 && resolution_deg <= 90.0,
            "resolution must be in (0, 90] degrees"
        );
        let bands = ((180.0 / resolution_deg).round() as usize).max(2);
        let height = PI / bands as f64;
        let per_band: Vec<usize> = (0..bands)
            .map(|i| {
                let lat = -PI / 2.0 + (i as f64 + 0.5) * height;
                ((2.0 * PI * lat.cos() / height).round() as usize).max(1)
            })
            .collect();
        let total: usize = per_band.iter().sum();
        let mut z_edges = Vec::with_capacity(bands + 1);
        let mut offsets = Vec::with_capacity(bands);
        let (mut z, mut acc) = (-1.0, 0usize);
        for &n in &per_band {
            z_edges.push(z);
            offsets.push(acc);
            acc += n;
            z = -1.0 + 2.0 * acc as f64 / total as f64;
        }
        z_edges.push(1.0);
        SphereGrid {
            resolution_deg,
            z_edges,
            per_band,
            offsets,
            total,
        }
    }

    pub fn resolution_deg(&self) -> f64 {
        self.resolution_deg
    }

    pub fn band_count(&self) -> usize {
        self.per_band.len()
    }

    pub fn cells_total(&self) -> usize {
        self.total
    }

    /// Area of band `i`'s cells divided by the mean cell area.
    pub fn relative_cell_area(&self, band: usize) -> f64 {
        let dz = self.z_edges[band + 1] - self.z_edges[band];
        (2.0 * PI * dz / self.per_band[band] as f64) / (4.0 * PI / self.total as f64)
    }

    /// Cell id in `0..cells_total()`. The input need not be exactly unit.
    pub fn cell_of(&self, p: &Vec3<f64>) -> usize {
        let norm = p.norm();
        let z = if norm > 0.0 { (p[2] / norm).clamp(-1.0, 1.0) } else { 0.0 };
        let band = self
            .z_edges
            .partition_point(|&e| e <= z)
            .saturating_sub(1)
            .min(self.per_band.len() - 1);
        let lon = p[1].atan2(p[0]).rem_euclid(2.0 * PI);
        let n = self.per_band[band];
        let cell = ((lon / (2.0 * PI) * n as f64) as usize).min(n - 1);
        self.offsets[band] + cell
    }
}
