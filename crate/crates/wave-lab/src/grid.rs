//! Space-time grids.  Time runs over `[0, horizon]`; the spatial box must
//! contain the causal domain of influence of every source up to the
//! horizon, which the solvers verify cell by cell.

use crate::error::WaveError;

pub const DEFAULT_CFL: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    /// 1 or 2 spatial dimensions
    pub dim: usize,
    pub x0: [f64; 2],
    pub h: f64,
    pub n: [usize; 2],
    pub dt: f64,
    pub nt: usize,
    /// enforce that the field never reaches the boundary ring; turned
    /// off only when boundary reflections are verified causally
    /// irrelevant for the measured region
    pub check_support: bool,
}

impl Grid {
    pub fn new_1d(x_lo: f64, x_hi: f64, h: f64, horizon: f64, cfl: f64) -> Result<Self, WaveError> {
        let n = ((x_hi - x_lo) / h).round() as usize + 1;
        let dt = cfl * h;
        let ratio = dt / h;
        if ratio > DEFAULT_CFL + 1e-12 {
            return Err(WaveError::CflViolation {
                ratio,
                max: DEFAULT_CFL,
            });
        }
        Ok(Grid {
            dim: 1,
            x0: [x_lo, 0.0],
            h,
            n: [n, 1],
            dt,
            nt: (horizon / dt).round() as usize + 1,
            check_support: true,
        })
    }

    pub fn new_2d(
        lo: [f64; 2],
        hi: [f64; 2],
        h: f64,
        horizon: f64,
        cfl: f64,
    ) -> Result<Self, WaveError> {
        let nx = ((hi[0] - lo[0]) / h).round() as usize + 1;
        let ny = ((hi[1] - lo[1]) / h).round() as usize + 1;
        let dt = cfl * h / 2.0_f64.sqrt();
        let ratio = dt * 2.0_f64.sqrt() / h;
        if ratio > DEFAULT_CFL + 1e-12 {
            return Err(WaveError::CflViolation {
                ratio,
                max: DEFAULT_CFL,
            });
        }
        Ok(Grid {
            dim: 2,
            x0: lo,
            h,
            n: [nx, ny],
            dt,
            nt: (horizon / dt).round() as usize + 1,
            check_support: true,
        })
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0[0] + i as f64 * self.h
    }

    pub fn y(&self, j: usize) -> f64 {
        self.x0[1] + j as f64 * self.h
    }

    pub fn t(&self, n: usize) -> f64 {
        n as f64 * self.dt
    }

    pub fn cells_per_step(&self) -> usize {
        self.n[0] * self.n[1]
    }

    /// index into a flat spatial slice
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.n[0] + i
    }
}
