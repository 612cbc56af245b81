//! Explicit metric families.
//!
//! All families are globally hyperbolic on their working domain and come
//! with a global time function `t`.  Geometric units, `c = 1`, signature
//! `(-,+,..,+)`.

use crate::error::GeomError;
use crate::event::{Event, TangentVec};

/// One flat spatial factor of a static product metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpatialFactor {
    /// The real line.
    Line,
    /// A circle of the given circumference.
    Circle(f64),
}

/// Smooth positive conformal factor `c(t,x)` for the 1+1 family, stored as
/// a sparse polynomial `sum c_k t^{i_k} x^{j_k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalFactor {
    pub terms: Vec<(u32, u32, f64)>,
}

impl ConformalFactor {
    pub fn constant(c: f64) -> Self {
        ConformalFactor {
            terms: vec![(0, 0, c)],
        }
    }

    pub fn eval(&self, t: f64, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(i, j, c)| c * t.powi(i as i32) * x.powi(j as i32))
            .sum()
    }

    pub fn d_dt(&self, t: f64, x: f64) -> f64 {
        self.terms
            .iter()
            .filter(|&&(i, _, _)| i > 0)
            .map(|&(i, j, c)| c * i as f64 * t.powi(i as i32 - 1) * x.powi(j as i32))
            .sum()
    }

    pub fn d_dx(&self, t: f64, x: f64) -> f64 {
        self.terms
            .iter()
            .filter(|&&(_, j, _)| j > 0)
            .map(|&(i, j, c)| c * j as f64 * t.powi(i as i32) * x.powi(j as i32 - 1))
            .sum()
    }
}

/// Axis-aligned working box; geodesics are truncated when they leave it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box4 {
    pub lo: [f64; 4],
    pub hi: [f64; 4],
}

impl Box4 {
    pub fn symmetric(t_half: f64, space_half: f64) -> Self {
        Box4 {
            lo: [-t_half, -space_half, -space_half, -space_half],
            hi: [t_half, space_half, space_half, space_half],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Metric {
    /// Flat `R^{1+d}`, `d` in 1..=3.
    Minkowski { spatial_dim: usize, domain: Box4 },
    /// `-dt^2 + h(y)` with `h` a flat product of line/circle factors.
    StaticProduct {
        factors: Vec<SpatialFactor>,
        domain: Box4,
    },
    /// `-dt^2 + h(y) dy^2` with `h > 0` sampled on a uniform grid.
    SampledProduct1D {
        y0: f64,
        dy: f64,
        h: Vec<f64>,
        domain: Box4,
    },
    /// `c(t,x) * (-dt^2 + dx^2)` on a box, `c >= c_min > 0`.
    Conformal1p1 {
        factor: ConformalFactor,
        domain: Box4,
    },
}

impl Metric {
    pub fn minkowski(spatial_dim: usize, domain: Box4) -> Result<Self, GeomError> {
        if !(1..=3).contains(&spatial_dim) {
            return Err(GeomError::BadMetric(format!(
                "spatial dimension {spatial_dim} out of range 1..=3"
            )));
        }
        Ok(Metric::Minkowski {
            spatial_dim,
            domain,
        })
    }

    /// Cylinder `R_t x S^1_l`.
    pub fn cylinder(circumference: f64, t_half: f64) -> Self {
        Metric::StaticProduct {
            factors: vec![SpatialFactor::Circle(circumference)],
            domain: Box4 {
                lo: [-t_half, 0.0, 0.0, 0.0],
                hi: [t_half, circumference, 0.0, 0.0],
            },
        }
    }

    /// `R_t x S^1_l x R`: the 2+1 cylinder used by the reconstruction lab.
    pub fn cylinder_2p1(circumference: f64, t_half: f64, x_half: f64) -> Self {
        Metric::StaticProduct {
            factors: vec![SpatialFactor::Circle(circumference), SpatialFactor::Line],
            domain: Box4 {
                lo: [-t_half, 0.0, -x_half, 0.0],
                hi: [t_half, circumference, x_half, 0.0],
            },
        }
    }

    pub fn torus(circumferences: &[f64], t_half: f64) -> Self {
        let mut lo = [-t_half, 0.0, 0.0, 0.0];
        let mut hi = [t_half, 0.0, 0.0, 0.0];
        for (i, &l) in circumferences.iter().enumerate() {
            lo[1 + i] = 0.0;
            hi[1 + i] = l;
        }
        Metric::StaticProduct {
            factors: circumferences
                .iter()
                .map(|&l| SpatialFactor::Circle(l))
                .collect(),
            domain: Box4 { lo, hi },
        }
    }

    pub fn conformal_1p1(factor: ConformalFactor, domain: Box4) -> Result<Self, GeomError> {
        // Signature check: c must stay positive on the working box.
        let n = 24;
        for i in 0..=n {
            for j in 0..=n {
                let t = domain.lo[0] + (domain.hi[0] - domain.lo[0]) * i as f64 / n as f64;
                let x = domain.lo[1] + (domain.hi[1] - domain.lo[1]) * j as f64 / n as f64;
                let c = factor.eval(t, x);
                if c <= 0.0 || c.is_nan() {
                    return Err(GeomError::BadMetric(format!(
                        "conformal factor not positive at (t,x)=({t},{x}): c={c}"
                    )));
                }
            }
        }
        Ok(Metric::Conformal1p1 { factor, domain })
    }

    pub fn spatial_dim(&self) -> usize {
        match self {
            Metric::Minkowski { spatial_dim, .. } => *spatial_dim,
            Metric::StaticProduct { factors, .. } => factors.len(),
            Metric::SampledProduct1D { .. } => 1,
            Metric::Conformal1p1 { .. } => 1,
        }
    }

    pub fn domain(&self) -> &Box4 {
        match self {
            Metric::Minkowski { domain, .. } => domain,
            Metric::StaticProduct { domain, .. } => domain,
            Metric::SampledProduct1D { domain, .. } => domain,
            Metric::Conformal1p1 { domain, .. } => domain,
        }
    }

    /// True when the event lies in the working domain (periodic directions
    /// always count as inside).
    pub fn contains(&self, e: &Event) -> bool {
        let d = self.domain();
        let periodic = self.periodic_mask();
        for k in 0..=self.spatial_dim() {
            if periodic[k] {
                continue;
            }
            if e.coords[k] < d.lo[k] - 1e-12 || e.coords[k] > d.hi[k] + 1e-12 {
                return false;
            }
        }
        true
    }

    fn periodic_mask(&self) -> [bool; 4] {
        let mut m = [false; 4];
        if let Metric::StaticProduct { factors, .. } = self {
            for (i, f) in factors.iter().enumerate() {
                if let SpatialFactor::Circle(_) = f {
                    m[1 + i] = true;
                }
            }
        }
        m
    }

    /// Wrap periodic coordinates into the fundamental domain `[0, l)`.
    pub fn canonicalize(&self, e: Event) -> Event {
        match self {
            Metric::StaticProduct { factors, .. } => {
                let mut c = e.coords;
                for (i, f) in factors.iter().enumerate() {
                    if let SpatialFactor::Circle(l) = f {
                        c[1 + i] = c[1 + i].rem_euclid(*l);
                    }
                }
                Event::new(c)
            }
            _ => e,
        }
    }

    /// Metric pairing `g(v, w)` of two vectors at `v.base`.
    pub fn pair(&self, v: &TangentVec, w: &TangentVec) -> f64 {
        let spatial: f64 = match self {
            Metric::Minkowski { spatial_dim, .. } => {
                (1..=*spatial_dim).map(|k| v.comps[k] * w.comps[k]).sum()
            }
            Metric::StaticProduct { factors, .. } => {
                (1..=factors.len()).map(|k| v.comps[k] * w.comps[k]).sum()
            }
            Metric::SampledProduct1D { .. } => {
                let h = self.sampled_h(v.base.coords[1]);
                h * v.comps[1] * w.comps[1]
            }
            Metric::Conformal1p1 { factor, .. } => {
                let c = factor.eval(v.base.coords[0], v.base.coords[1]);
                return c * (-v.comps[0] * w.comps[0] + v.comps[1] * w.comps[1]);
            }
        };
        -v.comps[0] * w.comps[0] + spatial
    }

    pub fn g_vv(&self, v: &TangentVec) -> f64 {
        self.pair(v, v)
    }

    /// `h(y)` for the sampled 1-D factor, linearly interpolated.
    pub fn sampled_h(&self, y: f64) -> f64 {
        if let Metric::SampledProduct1D { y0, dy, h, .. } = self {
            let u = ((y - y0) / dy).clamp(0.0, (h.len() - 1) as f64);
            let i = (u.floor() as usize).min(h.len() - 2);
            let w = u - i as f64;
            h[i] * (1.0 - w) + h[i + 1] * w
        } else {
            panic!("sampled_h on non-sampled metric")
        }
    }

    /// Riemannian distance of the spatial slice between the spatial parts
    /// of `a` and `b` (minimized over winding classes on circles).
    pub fn spatial_dist(&self, a: &Event, b: &Event) -> f64 {
        match self {
            Metric::Minkowski { spatial_dim, .. } => (1..=*spatial_dim)
                .map(|k| (a.coords[k] - b.coords[k]).powi(2))
                .sum::<f64>()
                .sqrt(),
            Metric::StaticProduct { factors, .. } => {
                let mut s = 0.0;
                for (i, f) in factors.iter().enumerate() {
                    let d = a.coords[1 + i] - b.coords[1 + i];
                    let d = match f {
                        SpatialFactor::Line => d,
                        SpatialFactor::Circle(l) => {
                            let r = d.rem_euclid(*l);
                            r.min(*l - r)
                        }
                    };
                    s += d * d;
                }
                s.sqrt()
            }
            Metric::SampledProduct1D { y0, dy, h, .. } => {
                // arclength integral of sqrt(h) between the two points
                let (mut ya, mut yb) = (a.coords[1], b.coords[1]);
                if ya > yb {
                    std::mem::swap(&mut ya, &mut yb);
                }
                let n = 200;
                let step = (yb - ya) / n as f64;
                let mut acc = 0.0;
                for i in 0..n {
                    let y = ya + (i as f64 + 0.5) * step;
                    let u = ((y - y0) / dy).clamp(0.0, (h.len() - 1) as f64);
                    let j = (u.floor() as usize).min(h.len() - 2);
                    let w = u - j as f64;
                    acc += (h[j] * (1.0 - w) + h[j + 1] * w).sqrt() * step;
                }
                acc
            }
            Metric::Conformal1p1 { .. } => (a.coords[1] - b.coords[1]).abs(),
        }
    }

    /// Causal relation `a <= b` (b in the causal future of a).
    ///
    /// For the product families this is `dt >= d_h`; for the conformal 1+1
    /// family causality agrees with the flat cone since null curves are
    /// conformally invariant.
    pub fn causal_leq(&self, a: &Event, b: &Event) -> bool {
        let dt = b.t() - a.t();
        if dt < -1e-12 {
            return false;
        }
        match self {
            Metric::Conformal1p1 { .. } => dt + 1e-12 >= (b.coords[1] - a.coords[1]).abs(),
            _ => dt + 1e-12 >= self.spatial_dist(a, b),
        }
    }

    /// Strict chronological relation `a << b` (timelike separated).
    pub fn chron_ll(&self, a: &Event, b: &Event) -> bool {
        let dt = b.t() - a.t();
        if dt <= 0.0 {
            return false;
        }
        match self {
            Metric::Conformal1p1 { .. } => dt > (b.coords[1] - a.coords[1]).abs() + 1e-12,
            _ => dt > self.spatial_dist(a, b) + 1e-12,
        }
    }

    /// Whether the family admits closed-form rays (everything except the
    /// conformal family).
    pub fn is_flat_family(&self) -> bool {
        !matches!(
            self,
            Metric::Conformal1p1 { .. } | Metric::SampledProduct1D { .. }
        )
    }
}
