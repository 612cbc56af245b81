//! Gridded space-time fields.

use crate::grid::Grid;

#[derive(Debug, Clone)]
pub struct WaveField {
    pub grid: Grid,
    /// time-major: `values[n]` is the spatial slice at step n
    pub values: Vec<Vec<f64>>,
}

impl WaveField {
    pub fn zeros(grid: &Grid) -> Self {
        WaveField {
            grid: grid.clone(),
            values: vec![vec![0.0; grid.cells_per_step()]; grid.nt],
        }
    }

    pub fn from_fn(grid: &Grid, f: impl Fn(f64, f64, f64) -> f64) -> Self {
        let mut field = WaveField::zeros(grid);
        for n in 0..grid.nt {
            let t = grid.t(n);
            for j in 0..grid.n[1] {
                for i in 0..grid.n[0] {
                    field.values[n][grid.idx(i, j)] = f(t, grid.x(i), grid.y(j));
                }
            }
        }
        field
    }

    pub fn at(&self, n: usize, i: usize, j: usize) -> f64 {
        self.values[n][self.grid.idx(i, j)]
    }

    /// pointwise product (same grid)
    pub fn product(&self, other: &WaveField) -> WaveField {
        assert_eq!(self.grid, other.grid);
        WaveField {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x * y).collect())
                .collect(),
        }
    }

    pub fn scaled(&self, c: f64) -> WaveField {
        WaveField {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .map(|s| s.iter().map(|v| c * v).collect())
                .collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &WaveField, c: f64) {
        assert_eq!(self.grid, other.grid);
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += c * y;
            }
        }
    }

    /// discrete space-time L2 norm
    pub fn l2(&self) -> f64 {
        let cell = self.grid.dt * self.grid.h.powi(self.grid.dim as i32);
        (self
            .values
            .iter()
            .map(|s| s.iter().map(|v| v * v).sum::<f64>())
            .sum::<f64>()
            * cell)
            .sqrt()
    }

    pub fn linf(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|s| s.iter())
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// value at a space-time point by linear interpolation
    pub fn sample(&self, t: f64, x: f64, y: f64) -> f64 {
        let g = &self.grid;
        let tn = (t / g.dt).clamp(0.0, (g.nt - 1) as f64);
        let xi = ((x - g.x0[0]) / g.h).clamp(0.0, (g.n[0] - 1) as f64);
        let yj = if g.dim == 2 {
            ((y - g.x0[1]) / g.h).clamp(0.0, (g.n[1] - 1) as f64)
        } else {
            0.0
        };
        let (n0, i0, j0) = (
            tn.floor() as usize,
            xi.floor() as usize,
            yj.floor() as usize,
        );
        let (wt, wx, wy) = (tn - n0 as f64, xi - i0 as f64, yj - j0 as f64);
        let n1 = (n0 + 1).min(g.nt - 1);
        let i1 = (i0 + 1).min(g.n[0] - 1);
        let j1 = (j0 + 1).min(g.n[1] - 1);
        let mut acc = 0.0;
        for (n, wn) in [(n0, 1.0 - wt), (n1, wt)] {
            for (i, wi) in [(i0, 1.0 - wx), (i1, wx)] {
                for (j, wj) in [(j0, 1.0 - wy), (j1, wy)] {
                    acc += wn * wi * wj * self.at(n, i, j);
                }
            }
        }
        acc
    }

    /// CSV rows `t,x[,y],value` for every cell with |value| above the cut
    pub fn to_csv(&self, threshold: f64) -> String {
        let g = &self.grid;
        let mut s = String::new();
        if g.dim == 1 {
            s.push_str("t,x,value\n");
        } else {
            s.push_str("t,x,y,value\n");
        }
        for n in 0..g.nt {
            for j in 0..g.n[1] {
                for i in 0..g.n[0] {
                    let v = self.at(n, i, j);
                    if v.abs() >= threshold {
                        if g.dim == 1 {
                            s.push_str(&format!("{:.9},{:.9},{:.12e}\n", g.t(n), g.x(i), v));
                        } else {
                            s.push_str(&format!(
                                "{:.9},{:.9},{:.9},{:.12e}\n",
                                g.t(n),
                                g.x(i),
                                g.y(j),
                                v
                            ));
                        }
                    }
                }
            }
        }
        s
    }

    /// row-major little-endian f64 dump plus a JSON sidecar describing
    /// the grid layout
    pub fn to_binary(&self) -> (Vec<u8>, serde_json::Value) {
        let mut bytes = Vec::with_capacity(self.grid.nt * self.grid.cells_per_step() * 8);
        for slice in &self.values {
            for v in slice {
                bytes.extend_from_slice(&v.to_le_bytes());
            }
        }
        let g = &self.grid;
        let sidecar = serde_json::json!({
            "layout": "row-major [t][y][x], f64 little-endian",
            "dim": g.dim,
            "x0": g.x0,
            "h": g.h,
            "n": g.n,
            "dt": g.dt,
            "nt": g.nt,
        });
        (bytes, sidecar)
    }
}
