//! Freely falling observers and observation regions.

use crate::error::GeomError;
use crate::event::{CausalClass, Event, TangentVec, TimeOrientation};
use crate::geodesic::{classify, geodesic, Geodesic};
use crate::halton::halton_in_ball;
use crate::metric::Metric;

/// Marker parameters `s_{-3} < s_{-2} < s_{-1} < s_{+1} < s_{+2} < s_{+3}`
/// strictly inside `(-1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Markers {
    pub s: [f64; 6],
}

impl Default for Markers {
    fn default() -> Self {
        Markers {
            s: [-0.9, -0.75, -0.5, 0.5, 0.75, 0.9],
        }
    }
}

impl Markers {
    pub fn s_minus(&self) -> f64 {
        self.s[2]
    }
    pub fn s_plus(&self) -> f64 {
        self.s[3]
    }
    pub fn s_minus2(&self) -> f64 {
        self.s[1]
    }
    pub fn s_plus2(&self) -> f64 {
        self.s[4]
    }

    pub fn valid(&self) -> bool {
        self.s.windows(2).all(|w| w[0] < w[1]) && self.s[0] > -1.0 && self.s[5] < 1.0
    }
}

/// A timelike observer `mu(s)`, `s` in `[-1, 1]`, with `mu(s_{-2}) = z`
/// and `d mu/ds (s_{-2}) = eta` (unit timelike future).
#[derive(Debug, Clone)]
pub struct Observer {
    pub z: Event,
    pub eta: TangentVec,
    pub markers: Markers,
    /// path over `[s_{-2}, 1]`
    forward: Geodesic,
    /// path over `[-1, s_{-2}]`, integrated backwards
    backward: Geodesic,
}

impl Observer {
    pub fn new(
        metric: &Metric,
        z: Event,
        eta: TangentVec,
        markers: Markers,
    ) -> Result<Self, GeomError> {
        assert!(markers.valid(), "markers must increase inside (-1,1)");
        let (class, orient) = classify(metric, &eta);
        if class != CausalClass::Timelike || orient != TimeOrientation::Future {
            return Err(GeomError::WrongCausalClass {
                expected: "timelike future-pointing",
            });
        }
        let g = metric.g_vv(&eta);
        if (g + 1.0).abs() > 1e-9 {
            return Err(GeomError::WrongCausalClass {
                expected: "unit timelike (g(eta,eta) = -1)",
            });
        }
        let s_ref = markers.s_minus2();
        let forward = geodesic(metric, z, eta, 1.0 - s_ref)?;
        let backward = geodesic(metric, z, eta.scaled(-1.0), s_ref - (-1.0))?;
        Ok(Observer {
            z,
            eta,
            markers,
            forward,
            backward,
        })
    }

    /// Observer event at parameter `s` in `[-1, 1]`.
    pub fn eval(&self, metric: &Metric, s: f64) -> Event {
        let s_ref = self.markers.s_minus2();
        if s >= s_ref {
            self.forward.point_at(metric, s - s_ref)
        } else {
            self.backward.point_at(metric, s_ref - s)
        }
    }

    /// Unit-speed timelike observer sitting at fixed spatial coordinates
    /// (valid on the static families where `partial_t` is unit timelike).
    pub fn static_at(metric: &Metric, spatial: [f64; 3], markers: Markers) -> Self {
        let z = Event::new([
            // z at parameter s_{-2}: worldline is t = s for static observers
            markers.s_minus2(),
            spatial[0],
            spatial[1],
            spatial[2],
        ]);
        let eta = TangentVec::new(z, [1.0, 0.0, 0.0, 0.0]);
        Observer::new(metric, z, eta, markers).expect("static observer")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Observer arrival functions `f_mu^+` / `f_mu^-` (Def. of the earliest /
/// latest contact parameters), computed by monotone bisection.
///
/// Precondition: `x` in `J^+(mu(-1))` and `J^-(mu(+1))`.
pub fn obs_time(metric: &Metric, mu: &Observer, x: &Event, side: Side) -> Result<f64, GeomError> {
    let lo_ev = mu.eval(metric, -1.0);
    let hi_ev = mu.eval(metric, 1.0);
    if !metric.causal_leq(&lo_ev, x) || !metric.causal_leq(x, &hi_ev) {
        return Err(GeomError::OutOfDiamond);
    }
    // The infimum of { s : tau > 0 } coincides with the first causal
    // contact min { s : x <= mu(s) } on these families (J^+ is closed and
    // its boundary is the pre-cut cone).  Bisecting the causal relation
    // avoids the catastrophic cancellation of tau near the cone, where
    // the arrival functions are needed to 1e-9.
    match side {
        Side::Plus => {
            let inside = |s: f64| metric.causal_leq(x, &mu.eval(metric, s));
            if inside(-1.0) {
                return Ok(-1.0);
            }
            let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if inside(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ok(0.5 * (lo + hi))
        }
        Side::Minus => {
            let inside = |s: f64| metric.causal_leq(&mu.eval(metric, s), x);
            if inside(1.0) {
                return Ok(1.0);
            }
            let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if inside(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(0.5 * (lo + hi))
        }
    }
}

/// A finite family of observers sampled from the `h`-neighborhood of a
/// center observer, on a deterministic low-discrepancy grid.
#[derive(Debug, Clone)]
pub struct ObservationRegion {
    pub center: usize,
    pub h_hat: f64,
    pub observers: Vec<Observer>,
}

impl ObservationRegion {
    /// Sample `count` observers around `(z0, eta0)`.  Offsets are drawn
    /// from the Halton ball in `(z, velocity)` space of radius `h_hat`
    /// and the velocity is re-normalized to a unit timelike vector; the
    /// product-metric distance bound is enforced after normalization.
    pub fn sample(
        metric: &Metric,
        z0: Event,
        markers: Markers,
        h_hat: f64,
        count: usize,
    ) -> Result<Self, GeomError> {
        let dim = metric.spatial_dim();
        let eta0 = TangentVec::new(z0, [1.0, 0.0, 0.0, 0.0]);
        let mut observers = vec![Observer::new(metric, z0, eta0, markers)?];
        let ball_dim = (1 + dim) + dim;
        let mut cursor = 0u64;
        let mut guard = 0;
        while observers.len() < count {
            let (p, next) = halton_in_ball(cursor, ball_dim);
            cursor = next;
            guard += 1;
            if guard > 100_000 {
                break;
            }
            let mut zc = z0.coords;
            for k in 0..=dim {
                zc[k] += 0.7 * h_hat * p[k];
            }
            let z = metric.canonicalize(Event::new(zc));
            let mut v = [1.0, 0.0, 0.0, 0.0];
            for k in 0..dim {
                v[1 + k] = 0.7 * h_hat * p[1 + dim + k];
            }
            // normalize to g(eta,eta) = -1 keeping the spatial direction
            let e_probe = TangentVec::new(z, v);
            let spatial_sq = v[0] * v[0] + metric.g_vv(&e_probe);
            if spatial_sq >= 0.9 {
                continue;
            }
            let scale = 1.0 / (1.0 - spatial_sq).sqrt();
            let eta = TangentVec::new(z, [v[0] * scale, v[1] * scale, v[2] * scale, v[3] * scale]);
            // distance bound in the product metric after normalization
            let mut d2 = 0.0;
            for k in 0..4 {
                d2 += (z.coords[k] - z0.coords[k]).powi(2);
                d2 += (eta.comps[k] - eta0.comps[k]).powi(2);
            }
            if d2.sqrt() > h_hat {
                continue;
            }
            observers.push(Observer::new(metric, z, eta, markers)?);
        }
        Ok(ObservationRegion {
            center: 0,
            h_hat,
            observers,
        })
    }
}
