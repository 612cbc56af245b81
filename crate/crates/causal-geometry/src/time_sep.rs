//! Time separation `tau(x,y)`: supremal Lorentzian length of causal paths
//! from `x` to `y`, zero when `x <= y` fails.

use crate::error::GeomError;
use crate::event::Event;
use crate::metric::Metric;

/// Threshold above which a computed `tau` counts as strictly positive.
///
/// Along an exactly null ray the closed form `sqrt(dt^2 - d_h^2)` suffers
/// catastrophic cancellation and produces spurious values of order
/// `|dt| * 1e-8`; near a genuine cone crossing `tau` grows like a square
/// root, so a threshold of `1e-6` costs only O(1e-12) in the crossing
/// parameter while sitting three orders above the jitter floor.
pub const TAU_POS_TOL: f64 = 1e-6;

/// `tau(x,y)`.
///
/// Closed forms on the flat families: `sqrt(dt^2 - d_h^2)` with the
/// spatial distance minimized over winding classes.  On the conformal 1+1
/// family the supremum is taken numerically over broken causal paths,
/// doubling the segment count until the value stabilizes below `1e-6`.
pub fn time_sep(metric: &Metric, x: &Event, y: &Event) -> Result<f64, GeomError> {
    if !metric.causal_leq(x, y) {
        return Ok(0.0);
    }
    match metric {
        Metric::Conformal1p1 { .. } => conformal_zigzag(metric, x, y),
        _ => {
            let dt = y.t() - x.t();
            let dh = metric.spatial_dist(x, y);
            Ok((dt * dt - dh * dh).max(0.0).sqrt())
        }
    }
}

/// Lorentzian length of the piecewise-linear path through `pts`,
/// evaluated per segment with 4-point Gauss-Legendre quadrature.
fn path_length(metric: &Metric, pts: &[(f64, f64)]) -> f64 {
    const GL_X: [f64; 4] = [
        -0.861_136_311_594_052_6,
        -0.339_981_043_584_856_3,
        0.339_981_043_584_856_3,
        0.861_136_311_594_052_6,
    ];
    const GL_W: [f64; 4] = [
        0.347_854_845_137_453_86,
        0.652_145_154_862_546_1,
        0.652_145_154_862_546_1,
        0.347_854_845_137_453_86,
    ];
    let factor = match metric {
        Metric::Conformal1p1 { factor, .. } => factor,
        _ => unreachable!("zigzag maximizer is only used on the conformal family"),
    };
    let mut total = 0.0;
    for w in pts.windows(2) {
        let (t0, x0) = w[0];
        let (t1, x1) = w[1];
        let dt = t1 - t0;
        let dx = x1 - x0;
        let q2 = dt * dt - dx * dx;
        if q2 <= 0.0 {
            continue; // segment not timelike: contributes nothing
        }
        let mut seg = 0.0;
        for k in 0..4 {
            let u = 0.5 * (GL_X[k] + 1.0);
            let c = factor.eval(t0 + u * dt, x0 + u * dx).max(0.0);
            seg += GL_W[k] * (c * q2).sqrt();
        }
        total += 0.5 * seg;
    }
    total
}

fn conformal_zigzag(metric: &Metric, x: &Event, y: &Event) -> Result<f64, GeomError> {
    let (tx, xx) = (x.t(), x.coords[1]);
    let (ty, xy) = (y.t(), y.coords[1]);
    let dt_total = ty - tx;
    if dt_total <= 0.0 {
        return Ok(0.0);
    }

    let optimize = |k: usize| -> f64 {
        // interior waypoints at fixed uniform time slices, free x positions
        let mut pts: Vec<(f64, f64)> = (0..=k)
            .map(|i| {
                let u = i as f64 / k as f64;
                (tx + u * dt_total, xx + u * (xy - xx))
            })
            .collect();
        let slice_dt = dt_total / k as f64;
        let mut best = path_length(metric, &pts);
        for _sweep in 0..60 {
            let before = best;
            for i in 1..k {
                // causal bounds from the two neighbours
                let lo = (pts[i - 1].1 - slice_dt).max(pts[i + 1].1 - slice_dt);
                let hi = (pts[i - 1].1 + slice_dt).min(pts[i + 1].1 + slice_dt);
                if hi <= lo {
                    continue;
                }
                // golden-section maximization of the two adjacent segments
                let phi = 0.5 * (3.0 - 5.0_f64.sqrt());
                let (mut a, mut b) = (lo, hi);
                let eval = |xi: f64, pts: &mut Vec<(f64, f64)>| {
                    pts[i].1 = xi;
                    path_length(metric, &pts[i - 1..=i + 1])
                };
                let mut x1 = a + phi * (b - a);
                let mut x2 = b - phi * (b - a);
                let mut f1 = eval(x1, &mut pts);
                let mut f2 = eval(x2, &mut pts);
                for _ in 0..40 {
                    if f1 < f2 {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = b - phi * (b - a);
                        f2 = eval(x2, &mut pts);
                    } else {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = a + phi * (b - a);
                        f1 = eval(x1, &mut pts);
                    }
                }
                pts[i].1 = 0.5 * (a + b);
            }
            best = path_length(metric, &pts);
            if (best - before).abs() < 1e-9 {
                break;
            }
        }
        best
    };

    let mut k = 4;
    let mut prev = optimize(k);
    loop {
        k *= 2;
        let cur = optimize(k);
        if (cur - prev).abs() < 1e-6 {
            return Ok(cur.max(prev));
        }
        if k >= 128 {
            return Err(GeomError::ToleranceNotMet {
                what: "conformal time separation (zigzag maximizer)",
                achieved: (cur - prev).abs(),
                requested: 1e-6,
            });
        }
        prev = cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{Box4, ConformalFactor};

    #[test]
    fn minkowski_closed_form() {
        let m = Metric::minkowski(3, Box4::symmetric(4.0, 4.0)).unwrap();
        let x = Event::new([0.0; 4]);
        let y = Event::new([2.0, 1.0, 0.0, 0.0]);
        assert!((time_sep(&m, &x, &y).unwrap() - 3.0_f64.sqrt()).abs() < 1e-12);
        // non-causal pair
        let z = Event::new([1.0, 2.0, 0.0, 0.0]);
        assert_eq!(time_sep(&m, &x, &z).unwrap(), 0.0);
    }

    #[test]
    fn cylinder_uses_winding_shortcut() {
        let l = 2.0 * std::f64::consts::PI;
        let m = Metric::cylinder(l, 8.0);
        let x = Event::tx(0.0, 0.0);
        let y = Event::tx(std::f64::consts::PI + 0.5, std::f64::consts::PI);
        let expect = (std::f64::consts::PI + 0.25).sqrt();
        assert!((time_sep(&m, &x, &y).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn conformal_unit_factor_matches_flat() {
        let m = Metric::conformal_1p1(ConformalFactor::constant(1.0), Box4::symmetric(4.0, 4.0))
            .unwrap();
        let x = Event::tx(0.0, 0.0);
        let y = Event::tx(2.0, 1.0);
        let tau = time_sep(&m, &x, &y).unwrap();
        assert!(
            (tau - 3.0_f64.sqrt()).abs() < 1e-6,
            "tau={tau} expected sqrt(3)"
        );
    }
}
