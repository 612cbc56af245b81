#![allow(clippy::needless_range_loop)]

//! Independent oracles for the geometry engine: discretized path
//! maximization for `tau`, Richardson reference integration for the
//! conformal geodesics, winding enumeration for cut values, and the
//! lemma-level properties (reverse triangle inequality, monotone arrival
//! parameters, continuity of `f^+`).

use causal_geometry::cut::{cut_value, null_length_bound};
use causal_geometry::geodesic::geodesic;
use causal_geometry::metric::{Box4, ConformalFactor, Metric};
use causal_geometry::obs_set::{direct_arrival, Arrival};
use causal_geometry::observer::{obs_time, Markers, ObservationRegion, Observer, Side};
use causal_geometry::time_sep::time_sep;
use causal_geometry::{Event, TangentVec};

fn mink(d: usize) -> Metric {
    Metric::minkowski(d, Box4::symmetric(6.0, 6.0)).unwrap()
}

/// Brute-force lower bound on tau: maximize the Lorentzian length over
/// piecewise-linear causal paths with waypoints on uniform time slices,
/// scanning each waypoint over a spatial grid (independent of the
/// closed-form implementation path).
fn tau_oracle_broken_paths(x: &Event, y: &Event, segments: usize, grid: usize) -> f64 {
    let dt = (y.t() - x.t()) / segments as f64;
    // dynamic program over spatial positions (1-D spatial suffices here)
    let span = (y.coords[1] - x.coords[1]).abs() + (y.t() - x.t());
    let xs: Vec<f64> = (0..=grid)
        .map(|i| x.coords[1] - span + 2.0 * span * i as f64 / grid as f64)
        .collect();
    let seg_len = |xa: f64, xb: f64| -> Option<f64> {
        let dx = xb - xa;
        let q = dt * dt - dx * dx;
        if q >= 0.0 {
            Some(q.sqrt())
        } else {
            None
        }
    };
    let mut best = vec![f64::NEG_INFINITY; xs.len()];
    for (i, &xi) in xs.iter().enumerate() {
        if let Some(l) = seg_len(x.coords[1], xi) {
            best[i] = l;
        }
    }
    for _layer in 2..segments {
        let mut next = vec![f64::NEG_INFINITY; xs.len()];
        for (i, &xi) in xs.iter().enumerate() {
            for (j, &xj) in xs.iter().enumerate() {
                if best[j] > f64::NEG_INFINITY {
                    if let Some(l) = seg_len(xj, xi) {
                        next[i] = next[i].max(best[j] + l);
                    }
                }
            }
        }
        best = next;
    }
    let mut total = f64::NEG_INFINITY;
    for (j, &xj) in xs.iter().enumerate() {
        if best[j] > f64::NEG_INFINITY {
            if let Some(l) = seg_len(xj, y.coords[1]) {
                total = total.max(best[j] + l);
            }
        }
    }
    total
}

#[test]
fn tau_minkowski_matches_broken_path_oracle() {
    let m = mink(1);
    let x = Event::tx(0.0, 0.0);
    let y = Event::tx(2.0, 1.0);
    let closed = time_sep(&m, &x, &y).unwrap();
    assert!((closed - 3.0_f64.sqrt()).abs() < 1e-12);
    let oracle = tau_oracle_broken_paths(&x, &y, 8, 400);
    // the discretized maximum approaches the supremum from below
    assert!(oracle <= closed + 1e-9);
    assert!(closed - oracle < 5e-3, "oracle {oracle} vs closed {closed}");
}

#[test]
fn conformal_geodesic_matches_richardson_reference() {
    let f = ConformalFactor {
        terms: vec![(0, 0, 1.0), (1, 0, 0.1)],
    };
    let m = Metric::conformal_1p1(f.clone(), Box4::symmetric(6.0, 6.0)).unwrap();
    let x = Event::tx(0.0, 0.0);
    let xi = TangentVec::new(x, [1.0, 0.4, 0.0, 0.0]);
    let s_end = 2.0;
    let g = geodesic(&m, x, xi, s_end).unwrap();
    let p = g.point_at(&m, s_end);

    // fixed-step classical RK4 at h and h/2, Richardson-extrapolated
    let accel = |e: [f64; 4], v: [f64; 4]| -> [f64; 4] {
        let c = f.eval(e[0], e[1]);
        let pt = f.d_dt(e[0], e[1]) / (2.0 * c);
        let px = f.d_dx(e[0], e[1]) / (2.0 * c);
        [
            -(pt * v[0] * v[0] + 2.0 * px * v[0] * v[1] + pt * v[1] * v[1]),
            -(px * v[0] * v[0] + 2.0 * pt * v[0] * v[1] + px * v[1] * v[1]),
            0.0,
            0.0,
        ]
    };
    let rk4_run = |n: usize| -> [f64; 4] {
        let h = s_end / n as f64;
        let mut e = x.coords;
        let mut v = xi.comps;
        for _ in 0..n {
            let (k1e, k1v) = (v, accel(e, v));
            let add = |a: [f64; 4], b: [f64; 4], s: f64| {
                [
                    a[0] + s * b[0],
                    a[1] + s * b[1],
                    a[2] + s * b[2],
                    a[3] + s * b[3],
                ]
            };
            let (k2e, k2v) = (
                add(v, k1v, h / 2.0),
                accel(add(e, k1e, h / 2.0), add(v, k1v, h / 2.0)),
            );
            let (k3e, k3v) = (
                add(v, k2v, h / 2.0),
                accel(add(e, k2e, h / 2.0), add(v, k2v, h / 2.0)),
            );
            let (k4e, k4v) = (add(v, k3v, h), accel(add(e, k3e, h), add(v, k3v, h)));
            for k in 0..4 {
                e[k] += h / 6.0 * (k1e[k] + 2.0 * k2e[k] + 2.0 * k3e[k] + k4e[k]);
                v[k] += h / 6.0 * (k1v[k] + 2.0 * k2v[k] + 2.0 * k3v[k] + k4v[k]);
            }
        }
        e
    };
    let a = rk4_run(2000);
    let b = rk4_run(4000);
    let mut reference = [0.0; 4];
    for k in 0..4 {
        reference[k] = b[k] + (b[k] - a[k]) / 15.0;
    }
    for k in 0..2 {
        assert!(
            (p.coords[k] - reference[k]).abs() < 1e-7,
            "coord {k}: adaptive {} vs reference {}",
            p.coords[k],
            reference[k]
        );
    }
}

#[test]
fn cylinder_cut_value_grid_verified() {
    // oracle: tau(x, gamma(s)) > 0 exactly for s > l/2 by the winding
    // shortcut, checked on a parameter grid before trusting the bisection
    let l = 1.0;
    let m = Metric::cylinder(l, 4.0);
    let x = Event::tx(0.0, 0.3);
    let xi = TangentVec::new(x, [1.0, 1.0, 0.0, 0.0]);
    let geo = geodesic(&m, x, xi, 2.0).unwrap();
    for i in 0..100 {
        let s = 0.02 + 0.96 * i as f64 / 99.0;
        let tau = time_sep(&m, &x, &geo.point_at(&m, s)).unwrap();
        if s < l / 2.0 - 1e-3 {
            assert!(tau < 1e-6, "tau={tau} at s={s} below the cut");
        }
        if s > l / 2.0 + 1e-3 {
            assert!(tau > 1e-6, "tau={tau} at s={s} beyond the cut");
        }
    }
    let cv = cut_value(&m, x, xi).unwrap();
    assert!((cv.value() - 0.5).abs() < 1e-3);
}

#[test]
fn torus_axis_cut_per_factor() {
    let l = 2.0 * std::f64::consts::PI;
    let m = Metric::torus(&[l, l], 8.0);
    let x = Event::new([0.0, 1.0, 2.0, 0.0]);
    let xi = TangentVec::new(x, [1.0, 1.0, 0.0, 0.0]);
    let cv = cut_value(&m, x, xi).unwrap();
    assert!(
        (cv.value() - std::f64::consts::PI).abs() < 1e-3,
        "rho = {}",
        cv.value()
    );
}

#[test]
fn earliest_obs_truncation_sentinel_on_cylinder() {
    // A point late enough that its cone reaches the far observer only
    // after the window closes: explicit sentinel, while the untruncated
    // flat-cover cone *would* reach it at a parameter beyond the window.
    let m = Metric::cylinder(1.0, 4.0);
    let mu_far = Observer::static_at(&m, [0.5, 0.0, 0.0], Markers::default());
    let q = Event::tx(0.8, 0.0);
    let a = direct_arrival(&m, &q, &mu_far).unwrap();
    assert_eq!(a, Arrival::NotObserved);
    // untruncated arrival would be at t = 0.8 + 0.5 = 1.3 > 1
    let mu_near = Observer::static_at(&m, [0.1, 0.0, 0.0], Markers::default());
    match direct_arrival(&m, &q, &mu_near).unwrap() {
        Arrival::Observed { s } => assert!((s - 0.9).abs() < 1e-9),
        _ => panic!("near observer must see the cone"),
    }
}

#[test]
fn null_bound_on_unit_diamond_and_tall_cylinder() {
    let m = mink(1);
    let p_minus = Event::tx(-1.0, 0.0);
    let p_plus = Event::tx(1.0, 0.0);
    let r1 = null_length_bound(&m, &p_minus, &p_plus, 24, 2);
    assert!((r1 - 2.0_f64.sqrt()).abs() < 1e-3, "R1 = {r1}");

    let mc = Metric::cylinder(1.0, 4.0);
    let q_minus = Event::tx(-1.5, 0.0);
    let q_plus = Event::tx(1.5, 0.0);
    let r1c = null_length_bound(&mc, &q_minus, &q_plus, 16, 2);
    assert!(r1c.is_finite());
    assert!(r1c <= 3.0 * 2.0_f64.sqrt() + 1e-3, "R1 cylinder = {r1c}");
}

#[test]
fn reverse_triangle_inequality_sampled() {
    let m = Metric::cylinder(1.0, 4.0);
    let pts = [
        Event::tx(-1.0, 0.1),
        Event::tx(-0.2, 0.45),
        Event::tx(1.2, 0.8),
    ];
    let (x, y, z) = (pts[0], pts[1], pts[2]);
    if m.causal_leq(&x, &y) && m.causal_leq(&y, &z) {
        let txy = time_sep(&m, &x, &y).unwrap();
        let tyz = time_sep(&m, &y, &z).unwrap();
        let txz = time_sep(&m, &x, &z).unwrap();
        assert!(txz >= txy + tyz - 1e-9);
    } else {
        panic!("test points must be causally ordered");
    }
}

#[test]
fn arrival_parameter_monotone_along_observer() {
    let m = Metric::cylinder(1.0, 4.0);
    let mu = Observer::static_at(&m, [0.3, 0.0, 0.0], Markers::default());
    let x = Event::tx(-0.5, 0.1);
    let mut prev = 0.0;
    for i in 0..200 {
        let s = -1.0 + 2.0 * i as f64 / 199.0;
        let tau = time_sep(&m, &x, &mu.eval(&m, s)).unwrap();
        assert!(tau >= prev - 1e-9, "tau not monotone at s={s}");
        prev = tau;
    }
}

#[test]
fn f_plus_is_continuous_in_the_event() {
    let m = mink(2);
    let mu = Observer::static_at(&m, [0.0; 3], Markers::default());
    let x = Event::new([0.0, 0.3, 0.1, 0.0]);
    let fx = obs_time(&m, &mu, &x, Side::Plus).unwrap();
    for k in 1..=2 {
        for sgn in [-1.0, 1.0] {
            let mut c = x.coords;
            c[k] += sgn * 1e-4;
            let fy = obs_time(&m, &mu, &Event::new(c), Side::Plus).unwrap();
            assert!(
                (fx - fy).abs() < 1e-3,
                "f+ jumped by {} under a 1e-4 move",
                (fx - fy).abs()
            );
        }
    }
}

#[test]
fn no_closed_causal_curves() {
    let m = Metric::cylinder(1.0, 4.0);
    let samples = [
        (Event::tx(0.0, 0.2), Event::tx(0.9, 0.7)),
        (Event::tx(-1.0, 0.0), Event::tx(0.3, 0.4)),
        (Event::tx(0.1, 0.6), Event::tx(2.0, 0.6)),
    ];
    for (x, y) in samples {
        let fwd = time_sep(&m, &x, &y).unwrap();
        if fwd > 0.0 {
            assert_eq!(time_sep(&m, &y, &x).unwrap(), 0.0);
        }
    }
}

#[test]
fn hamiltonian_conservation_along_integrated_geodesics() {
    let f = ConformalFactor {
        terms: vec![(0, 0, 1.0), (1, 0, 0.08), (0, 1, 0.05)],
    };
    let m = Metric::conformal_1p1(f, Box4::symmetric(5.0, 5.0)).unwrap();
    let x = Event::tx(-1.0, 0.3);
    for vx in [0.0, 0.35, 0.7] {
        let xi = TangentVec::new(x, [1.0, vx, 0.0, 0.0]);
        let g = geodesic(&m, x, xi, 2.5).unwrap();
        assert!(
            g.hamiltonian_drift <= causal_geometry::HAMILTONIAN_TOL,
            "drift {} for vx={vx}",
            g.hamiltonian_drift
        );
    }
}

#[test]
fn conformal_tau_oracle_cross_check() {
    // c = 1 + 0.1 t: the zigzag maximizer against a straight-path lower
    // bound and a global sanity bound sqrt(c_max) * tau_flat
    let f = ConformalFactor {
        terms: vec![(0, 0, 1.0), (1, 0, 0.1)],
    };
    let m = Metric::conformal_1p1(f.clone(), Box4::symmetric(6.0, 6.0)).unwrap();
    let x = Event::tx(0.0, 0.0);
    let y = Event::tx(2.0, 1.0);
    let tau = time_sep(&m, &x, &y).unwrap();
    // straight segment length (a causal path, hence a lower bound)
    let n = 4000;
    let mut lower = 0.0;
    for i in 0..n {
        let u = (i as f64 + 0.5) / n as f64;
        let c = f.eval(2.0 * u, u);
        lower += (c * (4.0 - 1.0)).sqrt() / n as f64;
    }
    let upper = (f.eval(2.0, 1.0)).sqrt() * 3.0_f64.sqrt();
    assert!(tau >= lower - 1e-6, "tau {tau} below straight-path {lower}");
    assert!(tau <= upper + 1e-6, "tau {tau} above c_max bound {upper}");
}

#[test]
fn region_csv_dump_has_na_sentinels() {
    let m = Metric::cylinder(1.0, 4.0);
    let region =
        ObservationRegion::sample(&m, Event::tx(-0.75, 0.5), Markers::default(), 0.1, 6).unwrap();
    let q = Event::tx(0.8, 0.0);
    let sample = causal_geometry::obs_set::earliest_light_obs(&m, &q, &region).unwrap();
    let csv = sample.to_csv_rows(1);
    assert!(csv.contains("NA"), "expected at least one sentinel:\n{csv}");
}

#[test]
fn fan_and_direct_agree_in_2p1() {
    use causal_geometry::obs_set::{earliest_light_obs, Arrival, ConeFan};
    let m = Metric::minkowski(2, Box4::symmetric(3.0, 3.0)).unwrap();
    let region = ObservationRegion::sample(
        &m,
        Event::new([-0.75, 0.35, 0.1, 0.0]),
        Markers::default(),
        0.12,
        10,
    )
    .unwrap();
    let q = Event::new([-0.25, 0.02, -0.05, 0.0]);
    let direct = earliest_light_obs(&m, &q, &region).unwrap();
    let fan = ConeFan::new(&m, q, 720).unwrap();
    let (arr, flags) = fan.arrivals(&m, &region, 0.008, 0.05).unwrap();
    assert!(flags.iter().all(|f| !f));
    for ((_, a), b) in direct.entries.iter().zip(&arr) {
        match (a, b) {
            (Arrival::Observed { s: sa }, Arrival::Observed { s: sb }) => {
                assert!((sa - sb).abs() < 0.02, "direct {sa} vs fan {sb}");
            }
            (Arrival::NotObserved, _) => {}
            (got, fan) => panic!("direct {got:?} vs fan {fan:?}"),
        }
    }
}

#[test]
fn sampled_product_metric_distances_and_geodesics() {
    // constant h = 4 sampled on a grid: spatial distances double and the
    // integrated geodesics match the constant-coefficient closed form
    let m = Metric::SampledProduct1D {
        y0: -3.0,
        dy: 0.05,
        h: vec![4.0; 121],
        domain: Box4::symmetric(3.0, 3.0),
    };
    let a = Event::tx(0.0, 0.2);
    let b = Event::tx(1.0, 0.55);
    assert!((m.spatial_dist(&a, &b) - 0.7).abs() < 1e-9);
    let tau = time_sep(&m, &a, &b).unwrap();
    assert!((tau - (1.0_f64 - 0.49).sqrt()).abs() < 1e-9, "tau = {tau}");
    // null geodesic: coordinate speed 1/2 (h = 4), constant velocity
    let xi = TangentVec::new(a, [1.0, 0.5, 0.0, 0.0]);
    let g = geodesic(&m, a, xi, 2.0).unwrap();
    let p = g.point_at(&m, 2.0);
    assert!((p.coords[0] - 2.0).abs() < 1e-8);
    assert!((p.coords[1] - 1.2).abs() < 1e-8, "x = {}", p.coords[1]);
    assert!(g.hamiltonian_drift < causal_geometry::HAMILTONIAN_TOL);
}

#[test]
fn cut_results_carry_lower_bounds_and_conformal_rays_never_cut() {
    use causal_geometry::cut::CutValue;
    // flat space: no cut point; the result carries the domain-exit
    // parameter as a certified lower bound
    let m = mink(2);
    let x = Event::new([0.0; 4]);
    let xi = TangentVec::new(x, [1.0, 1.0, 0.0, 0.0]);
    match cut_value(&m, x, xi).unwrap() {
        CutValue::NoCutInDomain { lower_bound } => {
            assert!(
                lower_bound > 5.0,
                "bound {lower_bound} should reach the box edge"
            )
        }
        other => panic!("expected no cut, got {other:?}"),
    }
    // conformal 1+1: null rays are straight and stay achronal
    let f = ConformalFactor {
        terms: vec![(0, 0, 1.0), (1, 0, 0.1)],
    };
    let mc = Metric::conformal_1p1(f, Box4::symmetric(4.0, 4.0)).unwrap();
    let xc = Event::tx(-1.0, 0.0);
    let xic = TangentVec::new(xc, [1.0, 1.0, 0.0, 0.0]);
    match cut_value(&mc, xc, xic).unwrap() {
        CutValue::NoCutInDomain { .. } => {}
        other => panic!("conformal null ray cannot have a cut point, got {other:?}"),
    }
}
