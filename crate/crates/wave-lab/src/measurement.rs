//! The measurement operator: nonlinear solve restricted to a sampled
//! observation region.

use crate::error::WaveError;
use crate::field::WaveField;
use crate::grid::Grid;
use crate::solver::{solve_nonlinear, SpatialMetric};

/// Axis-aligned observation region in space-time.
#[derive(Debug, Clone, Copy)]
pub struct RegionU {
    pub t: (f64, f64),
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl RegionU {
    pub fn contains(&self, t: f64, x: f64, y: f64) -> bool {
        t >= self.t.0
            && t <= self.t.1
            && x >= self.x.0
            && x <= self.x.1
            && y >= self.y.0
            && y <= self.y.1
    }
}

#[derive(Debug, Clone)]
pub struct Measurement {
    /// (t, x, y, value) at the region's grid samples
    pub samples: Vec<(f64, f64, f64, f64)>,
}

/// `L_U : f -> u|_U` for the nonlinear equation, the synthetic data set.
pub fn measurement_l_u(
    grid: &Grid,
    metric: &SpatialMetric,
    f: &dyn Fn(f64, f64, f64) -> f64,
    a_coeff: &dyn Fn(f64, f64, f64) -> f64,
    amplitude_scale: f64,
    region: &RegionU,
) -> Result<Measurement, WaveError> {
    let u = solve_nonlinear(grid, metric, f, a_coeff, amplitude_scale)?;
    Ok(restrict(&u, region))
}

pub fn restrict(u: &WaveField, region: &RegionU) -> Measurement {
    let g = &u.grid;
    let mut samples = Vec::new();
    for n in 0..g.nt {
        let t = g.t(n);
        for j in 0..g.n[1] {
            for i in 0..g.n[0] {
                let (x, y) = (g.x(i), g.y(j));
                if region.contains(t, x, y) {
                    samples.push((t, x, y, u.at(n, i, j)));
                }
            }
        }
    }
    Measurement { samples }
}
