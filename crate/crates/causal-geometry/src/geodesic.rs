//! Geodesics: exact rays on the flat families, adaptive RK45 elsewhere.

use crate::error::GeomError;
use crate::event::{CausalClass, Event, TangentVec, TimeOrientation};
use crate::metric::Metric;
use crate::NULL_TOL;

#[derive(Debug, Clone, Copy)]
pub struct GeodesicSample {
    pub s: f64,
    pub event: Event,
    pub velocity: [f64; 4],
}

#[derive(Debug, Clone)]
pub struct Geodesic {
    pub initial: (Event, TangentVec),
    pub samples: Vec<GeodesicSample>,
    /// `T(x,xi)`: length of the maximal parameter interval inside the
    /// working box. `f64::INFINITY` when the ray never leaves it.
    pub max_param: f64,
    /// Set when the requested parameter range was cut short at the domain
    /// boundary; holds the exit parameter.
    pub exit_param: Option<f64>,
    /// Worst relative Hamiltonian drift seen along the integration.
    pub hamiltonian_drift: f64,
    exact: bool,
}

impl Geodesic {
    /// Event at affine parameter `s`.  Exact for the flat families, cubic
    /// Hermite interpolation of the stored samples otherwise.
    pub fn point_at(&self, metric: &Metric, s: f64) -> Event {
        if self.exact {
            let (x, xi) = &self.initial;
            let mut c = x.coords;
            for k in 0..4 {
                c[k] += s * xi.comps[k];
            }
            return metric.canonicalize(Event::new(c));
        }
        let smax = self.samples.last().unwrap().s;
        let sc = s.clamp(self.samples[0].s, smax);
        let idx = self
            .samples
            .partition_point(|p| p.s <= sc)
            .clamp(1, self.samples.len() - 1);
        let (a, b) = (&self.samples[idx - 1], &self.samples[idx]);
        let h = b.s - a.s;
        if h <= 0.0 {
            return a.event;
        }
        let u = (sc - a.s) / h;
        let (h00, h10, h01, h11) = hermite_basis(u);
        let mut c = [0.0; 4];
        for k in 0..4 {
            c[k] = h00 * a.event.coords[k]
                + h10 * h * a.velocity[k]
                + h01 * b.event.coords[k]
                + h11 * h * b.velocity[k];
        }
        metric.canonicalize(Event::new(c))
    }

    pub fn velocity_at(&self, s: f64) -> TangentVec {
        if self.exact {
            let (x, xi) = &self.initial;
            let mut c = x.coords;
            for k in 0..4 {
                c[k] += s * xi.comps[k];
            }
            return TangentVec::new(Event::new(c), xi.comps);
        }
        let idx = self
            .samples
            .partition_point(|p| p.s <= s)
            .clamp(1, self.samples.len() - 1);
        let (a, b) = (&self.samples[idx - 1], &self.samples[idx]);
        let u = ((s - a.s) / (b.s - a.s)).clamp(0.0, 1.0);
        let mut v = [0.0; 4];
        for k in 0..4 {
            v[k] = a.velocity[k] * (1.0 - u) + b.velocity[k] * u;
        }
        TangentVec::new(Event::new(a.event.coords), v)
    }
}

fn hermite_basis(u: f64) -> (f64, f64, f64, f64) {
    let u2 = u * u;
    let u3 = u2 * u;
    (
        2.0 * u3 - 3.0 * u2 + 1.0,
        u3 - 2.0 * u2 + u,
        -2.0 * u3 + 3.0 * u2,
        u3 - u2,
    )
}

/// Causal class and time orientation of a tangent vector.
pub fn classify(metric: &Metric, v: &TangentVec) -> (CausalClass, TimeOrientation) {
    let g = metric.g_vv(v);
    let scale = {
        // g+ norm squared: on these families the coordinate Euclidean norm
        // (scaled by c for the conformal family) plays the role of g+.
        let e2: f64 = v.comps.iter().map(|c| c * c).sum();
        match metric {
            Metric::Conformal1p1 { factor, .. } => {
                e2 * factor.eval(v.base.coords[0], v.base.coords[1])
            }
            _ => e2,
        }
    };
    let class = if g.abs() <= NULL_TOL * scale.max(f64::MIN_POSITIVE) {
        CausalClass::Null
    } else if g < 0.0 {
        CausalClass::Timelike
    } else {
        CausalClass::Spacelike
    };
    let orient = match class {
        CausalClass::Spacelike => TimeOrientation::None,
        _ => {
            if v.comps[0] > 0.0 {
                TimeOrientation::Future
            } else {
                TimeOrientation::Past
            }
        }
    };
    (class, orient)
}

/// Integrate (or trace exactly) the geodesic from `x` with velocity `xi`
/// up to affine parameter `s_max`.
pub fn geodesic(
    metric: &Metric,
    x: Event,
    xi: TangentVec,
    s_max: f64,
) -> Result<Geodesic, GeomError> {
    assert!(s_max > 0.0, "s_max must be positive");
    if xi.euclid_norm() == 0.0 {
        return Err(GeomError::WrongCausalClass {
            expected: "nonzero",
        });
    }
    if metric.is_flat_family() {
        return Ok(exact_ray(metric, x, xi, s_max));
    }
    integrate(metric, x, xi, s_max)
}

fn exact_ray(metric: &Metric, x: Event, xi: TangentVec, s_max: f64) -> Geodesic {
    // Exit parameter against the non-periodic box faces.
    let d = metric.domain();
    let periodic = match metric {
        Metric::StaticProduct { factors, .. } => {
            let mut m = [false; 4];
            for (i, f) in factors.iter().enumerate() {
                if matches!(f, crate::metric::SpatialFactor::Circle(_)) {
                    m[1 + i] = true;
                }
            }
            m
        }
        _ => [false; 4],
    };
    let mut exit = f64::INFINITY;
    for k in 0..=metric.spatial_dim() {
        if periodic[k] || xi.comps[k] == 0.0 {
            continue;
        }
        let to_hi = (d.hi[k] - x.coords[k]) / xi.comps[k];
        let to_lo = (d.lo[k] - x.coords[k]) / xi.comps[k];
        let t_exit = to_hi.max(to_lo);
        if t_exit >= 0.0 {
            exit = exit.min(t_exit);
        }
    }
    let reached = s_max.min(exit);
    let n = 32;
    let samples = (0..=n)
        .map(|i| {
            let s = reached * i as f64 / n as f64;
            let mut c = x.coords;
            for k in 0..4 {
                c[k] += s * xi.comps[k];
            }
            GeodesicSample {
                s,
                event: metric.canonicalize(Event::new(c)),
                velocity: xi.comps,
            }
        })
        .collect();
    Geodesic {
        initial: (x, xi),
        samples,
        max_param: exit,
        exit_param: if exit < s_max { Some(exit) } else { None },
        hamiltonian_drift: 0.0,
        exact: true,
    }
}

/// Geodesic acceleration `d^2 x / ds^2 = -Gamma(v, v)` for the curved
/// families.
fn accel(metric: &Metric, e: &Event, v: &[f64; 4]) -> [f64; 4] {
    match metric {
        Metric::Conformal1p1 { factor, .. } => {
            let (t, x) = (e.coords[0], e.coords[1]);
            let c = factor.eval(t, x);
            let pt = factor.d_dt(t, x) / (2.0 * c);
            let px = factor.d_dx(t, x) / (2.0 * c);
            let (vt, vx) = (v[0], v[1]);
            [
                -(pt * vt * vt + 2.0 * px * vt * vx + pt * vx * vx),
                -(px * vt * vt + 2.0 * pt * vt * vx + px * vx * vx),
                0.0,
                0.0,
            ]
        }
        Metric::SampledProduct1D { y0, dy, h, .. } => {
            let y = e.coords[1];
            // dh/dy of the piecewise linear interpolation
            let u = ((y - y0) / dy).clamp(0.0, (h.len() - 1) as f64);
            let i = (u.floor() as usize).min(h.len() - 2);
            let hp = (h[i + 1] - h[i]) / dy;
            let hv = metric.sampled_h(y);
            [0.0, -hp / (2.0 * hv) * v[1] * v[1], 0.0, 0.0]
        }
        _ => [0.0; 4],
    }
}

/// Dormand-Prince 5(4) adaptive step with Hamiltonian drift monitoring
/// (drift is recorded, never corrected, so energy conservation stays a
/// genuine check).
fn integrate(metric: &Metric, x: Event, xi: TangentVec, s_max: f64) -> Result<Geodesic, GeomError> {
    let g0 = metric.g_vv(&xi);
    let scale0 = xi.euclid_norm().powi(2).max(1e-300);
    let rhs = |e: &Event, v: &[f64; 4]| -> ([f64; 4], [f64; 4]) { (*v, accel(metric, e, v)) };

    let mut s = 0.0;
    let mut pos = x;
    let mut vel = xi.comps;
    let mut h = (s_max / 64.0).min(0.05);
    let tol = 1e-11;
    let mut samples = vec![GeodesicSample {
        s,
        event: pos,
        velocity: vel,
    }];
    let mut drift_max: f64 = 0.0;
    let mut exit_param = None;

    // Dormand-Prince coefficients
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let mut steps = 0usize;
    while s < s_max {
        steps += 1;
        if steps > 2_000_000 {
            return Err(GeomError::ToleranceNotMet {
                what: "geodesic integration step budget",
                achieved: s,
                requested: s_max,
            });
        }
        h = h.min(s_max - s);
        // stage evaluations
        let mut kp = [[0.0; 4]; 7];
        let mut kv = [[0.0; 4]; 7];
        let (dp, dv) = rhs(&pos, &vel);
        kp[0] = dp;
        kv[0] = dv;
        for st in 1..7 {
            let mut p = pos.coords;
            let mut v = vel;
            for j in 0..st {
                let a = if st < 7 { A[st - 1][j] } else { 0.0 };
                for k in 0..4 {
                    p[k] += h * a * kp[j][k];
                    v[k] += h * a * kv[j][k];
                }
            }
            let (dp, dv) = rhs(&Event::new(p), &v);
            kp[st] = dp;
            kv[st] = dv;
        }
        let mut p5 = pos.coords;
        let mut v5 = vel;
        let mut p4 = pos.coords;
        let mut v4 = vel;
        for j in 0..7 {
            for k in 0..4 {
                p5[k] += h * B5[j] * kp[j][k];
                v5[k] += h * B5[j] * kv[j][k];
                p4[k] += h * B4[j] * kp[j][k];
                v4[k] += h * B4[j] * kv[j][k];
            }
        }
        let mut err: f64 = 0.0;
        for k in 0..4 {
            err = err.max((p5[k] - p4[k]).abs()).max((v5[k] - v4[k]).abs());
        }
        if err > tol && h > 1e-12 {
            h *= 0.5;
            continue;
        }
        s += h;
        pos = Event::new(p5);
        vel = v5;
        let tv = TangentVec::new(pos, vel);
        drift_max = drift_max.max((metric.g_vv(&tv) - g0).abs() / scale0);
        samples.push(GeodesicSample {
            s,
            event: pos,
            velocity: vel,
        });
        if !metric.contains(&pos) {
            exit_param = Some(s);
            break;
        }
        if err < tol / 32.0 {
            h *= 2.0;
        }
    }

    Ok(Geodesic {
        initial: (x, xi),
        samples,
        max_param: exit_param.unwrap_or(f64::INFINITY),
        exit_param,
        hamiltonian_drift: drift_max,
        exact: false,
    })
}
