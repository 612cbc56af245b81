//! Modified cut values along null geodesics and the null length bound of
//! causal diamonds.

use crate::error::GeomError;
use crate::event::{CausalClass, Event, TangentVec, TimeOrientation};
use crate::geodesic::{classify, geodesic};
use crate::metric::Metric;
use crate::time_sep::{time_sep, TAU_POS_TOL};

/// Result of a cut-value computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CutValue {
    /// First affine parameter at which `tau(x, gamma(s))` turns positive.
    Cut(f64),
    /// `tau` stayed zero up to domain exit; carries the exit parameter as
    /// a certified lower bound.  `value()` reports the infinity sentinel.
    NoCutInDomain { lower_bound: f64 },
}

impl CutValue {
    pub fn value(&self) -> f64 {
        match self {
            CutValue::Cut(s) => *s,
            CutValue::NoCutInDomain { .. } => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CutValue::Cut(_))
    }
}

/// `rho(x, xi) = sup { s : tau(x, gamma_{x,xi}(s)) = 0 }`.
///
/// Bisection on the first parameter where `tau` becomes positive, to
/// `1e-6` in `s`; the search bracket is capped by the domain exit of the
/// ray, which plays the role of the null length bound of the working box.
pub fn cut_value(metric: &Metric, x: Event, xi: TangentVec) -> Result<CutValue, GeomError> {
    let (class, orient) = classify(metric, &xi);
    if class != CausalClass::Null || orient != TimeOrientation::Future {
        return Err(GeomError::WrongCausalClass {
            expected: "null future-pointing",
        });
    }
    // Horizon: domain exit parameter (or a generous cap for rays that
    // never exit, e.g. wrapped rays on the cylinder).
    let d = metric.domain();
    let time_span = d.hi[0] - x.coords[0];
    let horizon = if xi.comps[0] > 0.0 {
        time_span / xi.comps[0]
    } else {
        return Err(GeomError::WrongCausalClass {
            expected: "future-pointing (dt/ds > 0)",
        });
    };
    let geo = geodesic(metric, x, xi, horizon)?;
    let reach = geo.samples.last().unwrap().s;

    let tau_at = |s: f64| -> Result<f64, GeomError> {
        let p = geo.point_at(metric, s);
        time_sep(metric, &x, &p)
    };

    // march outward to bracket the first positive tau
    let n = 64;
    let mut lo = 0.0;
    let mut hi = None;
    for i in 1..=n {
        let s = reach * i as f64 / n as f64;
        if tau_at(s)? > TAU_POS_TOL {
            hi = Some(s);
            break;
        }
        lo = s;
    }
    let Some(mut hi) = hi else {
        return Ok(CutValue::NoCutInDomain { lower_bound: reach });
    };
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        if tau_at(mid)? > TAU_POS_TOL {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(CutValue::Cut(0.5 * (lo + hi)))
}

/// `R1`: supremum over a sampled fan of `g+`-unit null geodesics of the
/// affine length of the segment staying inside `J(p-, p+)`.
///
/// Monotone in the sampling resolution.  Returns 0 for the degenerate
/// diamond.
pub fn null_length_bound(
    metric: &Metric,
    p_minus: &Event,
    p_plus: &Event,
    events_per_axis: usize,
    n_dirs: usize,
) -> f64 {
    if p_minus == p_plus {
        return 0.0;
    }
    let dim = metric.spatial_dim();
    let dom = metric.domain();
    let mut best: f64 = 0.0;

    let in_diamond = |e: &Event| metric.causal_leq(p_minus, e) && metric.causal_leq(e, p_plus);

    // sample a coordinate grid over the diamond's bounding box
    let n = events_per_axis.max(2);
    let mut grid_axes: Vec<Vec<f64>> = Vec::new();
    for k in 0..=dim {
        let lo = if k == 0 { p_minus.t() } else { dom.lo[k] };
        let hi = if k == 0 { p_plus.t() } else { dom.hi[k] };
        grid_axes.push(
            (0..n)
                .map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64)
                .collect(),
        );
    }
    let dirs = unit_sphere_dirs(dim, n_dirs);

    let mut idx = vec![0usize; dim + 1];
    loop {
        let mut c = [0.0; 4];
        for k in 0..=dim {
            c[k] = grid_axes[k][idx[k]];
        }
        let e = metric.canonicalize(Event::new(c));
        if in_diamond(&e) {
            for v in &dirs {
                // g+-unit null direction (1, v)/sqrt(2)
                let inv = 1.0 / 2.0_f64.sqrt();
                let xi = [inv, v[0] * inv, v[1] * inv, v[2] * inv];
                let ray = |sgn: f64| -> f64 {
                    // march until the ray leaves the diamond, then bisect
                    let step = 0.1;
                    let mut s = 0.0;
                    let probe = |s: f64| {
                        let mut p = e.coords;
                        for k in 0..4 {
                            p[k] += sgn * s * xi[k];
                        }
                        in_diamond(&metric.canonicalize(Event::new(p)))
                    };
                    let mut guard = 0;
                    while probe(s + step) {
                        s += step;
                        guard += 1;
                        if guard > 10_000 {
                            break;
                        }
                    }
                    let (mut a, mut b) = (s, s + step);
                    for _ in 0..40 {
                        let m = 0.5 * (a + b);
                        if probe(m) {
                            a = m;
                        } else {
                            b = m;
                        }
                    }
                    a
                };
                let fwd = ray(1.0);
                let bwd = ray(-1.0);
                best = best.max(fwd + bwd);
            }
        }
        // advance multi-index
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k > dim {
                return best;
            }
        }
    }
}

/// Deterministic unit directions on the spatial sphere: +-1 in 1-D, a
/// uniform circle in 2-D, a Fibonacci sphere in 3-D.
pub fn unit_sphere_dirs(dim: usize, n: usize) -> Vec<[f64; 3]> {
    match dim {
        1 => vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]],
        2 => (0..n)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                [th.cos(), th.sin(), 0.0]
            })
            .collect(),
        3 => {
            let phi = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
            (0..n)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
                    let r = (1.0 - z * z).sqrt();
                    let th = phi * i as f64;
                    [r * th.cos(), r * th.sin(), z]
                })
                .collect()
        }
        _ => panic!("unsupported spatial dimension {dim}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Box4;

    #[test]
    fn minkowski_has_no_cut_points() {
        let m = Metric::minkowski(2, Box4::symmetric(5.0, 5.0)).unwrap();
        let x = Event::new([0.0; 4]);
        let xi = TangentVec::new(x, [1.0, 1.0, 0.0, 0.0]);
        let cv = cut_value(&m, x, xi).unwrap();
        assert!(!cv.is_finite());
        assert!(cv.value().is_infinite());
    }

    #[test]
    fn circle_cut_at_half_circumference() {
        // unit-time normalized ray: rho equals l/2
        let m = Metric::cylinder(1.0, 4.0);
        let x = Event::tx(0.0, 0.2);
        let xi = TangentVec::new(x, [1.0, 1.0, 0.0, 0.0]);
        let cv = cut_value(&m, x, xi).unwrap();
        assert!((cv.value() - 0.5).abs() < 1e-3, "rho = {}", cv.value());
    }

    #[test]
    fn degenerate_diamond_bound_is_zero() {
        let m = Metric::minkowski(1, Box4::symmetric(2.0, 2.0)).unwrap();
        let p = Event::tx(0.0, 0.0);
        assert_eq!(null_length_bound(&m, &p, &p, 8, 2), 0.0);
    }
}
