//! Oracle cross-checks of the finite-difference lab: d'Alembert
//! convergence order, the nested closed-form second order, corner
//! finite differences for the mixed interaction wave, remainder orders,
//! the probe decay split, and the linearized measurement trace.

use wave_lab::closed_form::{q_boxes, q_quad, BoxSource};
use wave_lab::detector::{interaction_experiment, InteractionConfig};
use wave_lab::expansion::{
    expansion_terms, interaction_wave, interaction_wave_fd, log_log_fit, remainder_slope,
};
use wave_lab::field::WaveField;
use wave_lab::grid::Grid;
use wave_lab::measurement::{measurement_l_u, restrict, RegionU};
use wave_lab::probe::probe_indicator;
use wave_lab::solver::{solve_linear_fn, SpatialMetric};
use wave_lab::sources::PointProbe;

fn box_src(t: f64, x: f64, _y: f64) -> f64 {
    if (0.0..=0.1).contains(&t) && (-0.05..=0.05).contains(&x) {
        1.0
    } else {
        0.0
    }
}

fn the_boxes() -> Vec<BoxSource> {
    vec![BoxSource {
        t0: 0.0,
        t1: 0.1,
        x0: -0.05,
        x1: 0.05,
        value: 1.0,
    }]
}

const T_C: f64 = 0.15;
const T_R: f64 = 0.12;
const X_R: f64 = 0.25;
const AMP: f64 = 6.0;

fn bump3(u: f64) -> f64 {
    if u.abs() < 1.0 {
        (1.0 - u * u).powi(3)
    } else {
        0.0
    }
}

/// antiderivative of bump3, saturating outside [-1, 1]
fn bump3_int(u: f64) -> f64 {
    let v = u.clamp(-1.0, 1.0);
    v - v.powi(3) + 0.6 * v.powi(5) - v.powi(7) / 7.0
}

fn smooth_pulse(t: f64, x: f64, _y: f64) -> f64 {
    AMP * bump3((t - T_C) / T_R) * bump3(x / X_R)
}

/// d'Alembert solution of the separable source by a single 1-D
/// quadrature: `(Qf)(t,x) = 1/2 int T(s) (G(x+t-s) - G(x-t+s)) ds`
fn w1_oracle(t: f64, x: f64) -> f64 {
    let g = |z: f64| X_R * bump3_int(z / X_R);
    let f = |s: f64| AMP * bump3((s - T_C) / T_R) * (g(x + t - s) - g(x - t + s));
    0.5 * wave_lab::closed_form::integrate_1d(&f, 0.0, t, 1e-12)
}

#[test]
fn convergence_order_against_dalembert() {
    // L2 error over a fixed sample set, three refinements, slope 2 +- 0.2
    let mut pts = Vec::new();
    for i in 0..12 {
        for k in 0..6 {
            pts.push((0.3 + 0.1 * k as f64, -0.8 + 0.15 * i as f64));
        }
    }
    let mut errs = Vec::new();
    for &h in &[1.0 / 100.0, 1.0 / 200.0, 1.0 / 400.0] {
        let grid = Grid::new_1d(-2.0, 2.0, h, 1.0, 0.5).unwrap();
        let u = solve_linear_fn(&grid, &SpatialMetric::Flat, &smooth_pulse).unwrap();
        let mut e2 = 0.0;
        for &(t, x) in &pts {
            let d = u.sample(t, x, 0.0) - w1_oracle(t, x);
            e2 += d * d;
        }
        errs.push((h, (e2 / pts.len() as f64).sqrt()));
    }
    let (slope, _) = log_log_fit(&errs);
    assert!(
        (slope - 2.0).abs() <= 0.2,
        "convergence slope {slope}, errors {errs:?}"
    );
}

#[test]
fn nested_w2_oracle_convergence() {
    let a = 2.0;
    let pts = [(0.7, 0.1), (0.9, -0.2), (1.0, 0.3)];
    // nested closed-form integration: exact inner trace, quadrature outer
    let oracle = |t: f64, x: f64| -> f64 {
        q_quad(
            &|s, y| {
                let w1 = w1_oracle(s, y);
                -a * w1 * w1
            },
            t,
            x,
            1e-9,
        )
    };
    let mut errs = Vec::new();
    for &h in &[1.0 / 100.0, 1.0 / 200.0] {
        let grid = Grid::new_1d(-2.0, 2.0, h, 1.05, 0.5).unwrap();
        let exp =
            expansion_terms(&grid, &SpatialMetric::Flat, &smooth_pulse, &|_, _, _| a).unwrap();
        let mut worst: f64 = 0.0;
        for &(t, x) in &pts {
            let fd = exp.w[1].sample(t, x, 0.0);
            worst = worst.max((oracle(t, x) - fd).abs());
        }
        errs.push((h, worst));
    }
    // halving h should cut the error by about four
    let gain = errs[0].1 / errs[1].1;
    assert!(
        gain > 2.5,
        "w2 oracle agreement must improve at second order: {errs:?}"
    );
}

#[test]
fn m4_matches_corner_differences() {
    let grid = Grid::new_1d(-2.4, 2.4, 1.0 / 50.0, 1.1, 0.5).unwrap();
    let mk = |c: f64| move |t: f64, x: f64, y: f64| smooth_pulse(t, x - c, y) / 2.0;
    let (s1, s2, s3, s4) = (mk(-0.45), mk(-0.15), mk(0.15), mk(0.45));
    let a = |_: f64, _: f64, _: f64| 1.0;
    let m = interaction_wave(&grid, &SpatialMetric::Flat, &[&s1, &s2, &s3, &s4], &a).unwrap();
    let fd =
        interaction_wave_fd(&grid, &SpatialMetric::Flat, &[&s1, &s2, &s3, &s4], &a, 1e-2).unwrap();
    let mut diff = m.clone();
    diff.add_scaled(&fd, -1.0);
    let rel = diff.l2() / m.l2();
    assert!(rel < 5e-2, "M4 vs 16-corner FD relative error {rel}");
}

#[test]
fn remainder_slopes_orders_five_and_two() {
    let grid = Grid::new_1d(-2.4, 2.4, 1.0 / 120.0, 1.2, 0.5).unwrap();
    // the coupling sets the per-order contraction ratio of the series;
    // it must be large enough that the fifth order clears the roundoff
    // floor on the epsilon decade, yet keep eps * a * ||w1|| << 1
    let a = |_: f64, _: f64, _: f64| 25.0;
    let strong = |t: f64, x: f64, y: f64| 3.0 * smooth_pulse(t, x, y);
    let eps: Vec<f64> = (0..6).map(|i| 1e-3 * 10f64.powf(i as f64 / 5.0)).collect();
    let full = remainder_slope(&grid, &SpatialMetric::Flat, &strong, &a, &eps, 4).unwrap();
    assert!(
        (full.slope - 5.0).abs() <= 0.3 && !full.floor_flag,
        "remainder slope {} (floor {}), norms {:?}",
        full.slope,
        full.floor_flag,
        full.norms
    );
    let first = remainder_slope(&grid, &SpatialMetric::Flat, &strong, &a, &eps, 1).unwrap();
    assert!(
        (first.slope - 2.0).abs() <= 0.2,
        "first-order remainder slope {}",
        first.slope
    );
}

#[test]
fn remainder_floor_flagged_when_coupling_off() {
    let grid = Grid::new_1d(-2.0, 2.0, 1.0 / 60.0, 0.8, 0.5).unwrap();
    let eps: Vec<f64> = vec![1e-3, 3e-3, 1e-2];
    let fit = remainder_slope(
        &grid,
        &SpatialMetric::Flat,
        &smooth_pulse,
        &|_, _, _| 0.0,
        &eps,
        4,
    )
    .unwrap();
    assert!(fit.floor_flag, "zero coupling leaves only roundoff");
}

#[test]
fn sampled_metric_halves_the_wave_speed() {
    // h(y) = 4: Lap_h = (1/4) d_yy, speed 1/2
    let grid = Grid::new_1d(-2.0, 2.0, 1.0 / 100.0, 1.2, 0.5).unwrap();
    let metric = SpatialMetric::Sampled1D {
        y0: -2.0,
        dy: 0.05,
        h: vec![4.0; 81],
    };
    let u = solve_linear_fn(&grid, &metric, &box_src).unwrap();
    // at t = 1.0 the support must stay within |x| <= 0.05 + 0.5 t + slack
    let n = (1.0 / grid.dt).round() as usize;
    let cap = 1e-4 * u.linf();
    for i in 0..grid.n[0] {
        let x = grid.x(i);
        if x.abs() > 0.05 + 0.5 + 0.05 {
            assert!(
                u.at(n, i, 0).abs() <= cap,
                "speed-1/2 cone violated at x = {x}"
            );
        }
    }
    // and the flat-speed cone would be reached by a flat run
    let uf = solve_linear_fn(&grid, &SpatialMetric::Flat, &box_src).unwrap();
    let probe_x = 0.9;
    let i = ((probe_x - grid.x0[0]) / grid.h).round() as usize;
    assert!(uf.at(n, i, 0).abs() > cap);
}

#[test]
fn interaction_m2_matches_nested_quadrature() {
    // the interaction field from ideal traveling ridges, cross-checked
    // pointwise against -2 Q(a u1 u2) by adaptive quadrature, at two
    // grid resolutions: second-order convergence to the oracle
    let pts = [(0.9, 0.05), (1.0, -0.15), (1.1, 0.3), (1.2, 0.0)];
    let mut worsts = Vec::new();
    let mut scale: f64 = 0.0;
    for &h in &[1.0 / 160.0, 1.0 / 320.0] {
        let cfg = InteractionConfig {
            h,
            ..Default::default()
        };
        let rep = interaction_experiment(&cfg).unwrap();
        let (p1, p2) = (rep.pulses[0].clone(), rep.pulses[1].clone());
        let a = 1.0;
        let oracle = |t: f64, x: f64| -> f64 {
            q_quad(
                &|s, y| -2.0 * a * p1.ideal(s, y, 0.0) * p2.ideal(s, y, 0.0),
                t,
                x,
                1e-9,
            )
        };
        let mut worst: f64 = 0.0;
        for &(t, x) in &pts {
            let o = oracle(t, x);
            let v = rep.m_field.sample(t, x, 0.0);
            worst = worst.max((o - v).abs());
            scale = scale.max(o.abs());
        }
        worsts.push(worst);
        if h == 1.0 / 160.0 {
            // zero exactly before the overlap region exists
            assert_eq!(oracle(0.45, 0.0), 0.0);
        }
    }
    assert!(
        worsts[0] < 0.05 * scale,
        "M2 vs quadrature: worst {} at scale {scale}",
        worsts[0]
    );
    assert!(
        worsts[0] / worsts[1] > 2.5,
        "halving h must improve the oracle agreement at second order: {worsts:?}"
    );
}

#[test]
fn probe_splits_on_cone_from_off_cone() {
    let cfg = InteractionConfig {
        h: 1.0 / 160.0,
        ..Default::default()
    };
    let rep = interaction_experiment(&cfg).unwrap();
    let taus: Vec<f64> = vec![30.0, 45.0, 67.0, 100.0];
    // on-cone probe: base on the right branch, conormal covector
    let mk = |x: f64| PointProbe {
        base: [1.15, x, 0.0],
        xi: [-1.0, 1.0, 0.0],
        sigma: 10.0,
        radius: 0.12,
    };
    let on = probe_indicator(&rep.m_field, &mk(0.55), &taus, 1e-13).unwrap();
    // off-cone probe at the symmetric interior point: the field is a
    // saturated plateau there, smooth to machine level
    let off = probe_indicator(&rep.m_field, &mk(0.0), &taus, 1e-13).unwrap();
    // polynomial decay on the cone, markedly faster decay off it
    assert!(
        on.m_hat < 5.5,
        "on-cone decay order {} should be polynomial",
        on.m_hat
    );
    assert!(
        off.m_hat > on.m_hat + 1.5,
        "off-cone must decay faster: on {} vs off {}",
        on.m_hat,
        off.m_hat
    );
    // the on/off magnitude ratio grows along the ladder
    let r_first = on.values[0].1 / off.values[0].1;
    let r_last = on.values.last().unwrap().1 / off.values.last().unwrap().1;
    assert!(
        r_last > 10.0 * r_first,
        "separation must grow with frequency: {r_first} -> {r_last}"
    );
}

#[test]
fn measurement_linearizes_to_the_wave_trace() {
    let grid = Grid::new_1d(-2.0, 2.0, 1.0 / 80.0, 1.0, 0.5).unwrap();
    let region = RegionU {
        t: (0.2, 0.9),
        x: (-0.6, 0.6),
        y: (0.0, 0.0),
    };
    let a = |_: f64, _: f64, _: f64| 3.0;
    let linear = solve_linear_fn(&grid, &SpatialMetric::Flat, &smooth_pulse).unwrap();
    let trace = restrict(&linear, &region);
    // central difference of the nonlinear measurement in the source
    // amplitude reproduces the linear trace (the linearized data map)
    let eps = 1e-4;
    let plus = measurement_l_u(
        &grid,
        &SpatialMetric::Flat,
        &|t, x, y| eps * smooth_pulse(t, x, y),
        &a,
        eps,
        &region,
    )
    .unwrap();
    let minus = measurement_l_u(
        &grid,
        &SpatialMetric::Flat,
        &|t, x, y| -eps * smooth_pulse(t, x, y),
        &a,
        eps,
        &region,
    )
    .unwrap();
    let mut worst: f64 = 0.0;
    for ((p, m), l) in plus.samples.iter().zip(&minus.samples).zip(&trace.samples) {
        let deriv = (p.3 - m.3) / (2.0 * eps);
        worst = worst.max((deriv - l.3).abs());
    }
    let scale = trace.samples.iter().map(|s| s.3.abs()).fold(0.0, f64::max);
    assert!(
        worst < 1e-5 * scale.max(1e-9),
        "linearized measurement error {worst} at scale {scale}"
    );
}

#[test]
fn csv_and_binary_dumps_are_consistent() {
    let grid = Grid::new_1d(-0.5, 0.5, 0.1, 0.2, 0.5).unwrap();
    let u = WaveField::from_fn(&grid, |t, x, _| t + x);
    let (bytes, sidecar) = u.to_binary();
    assert_eq!(bytes.len(), grid.nt * grid.cells_per_step() * 8);
    assert_eq!(sidecar["nt"], serde_json::json!(grid.nt));
    let csv = u.to_csv(0.0);
    assert!(csv.lines().count() > grid.cells_per_step());
    // first value row decodes back
    let first = f64::from_le_bytes(bytes[0..8].try_into().unwrap());
    assert_eq!(first, u.at(0, 0, 0));
}

#[test]
fn linear_regime_of_the_measurement() {
    // L_U(eps f)/eps -> (Qf)|_U as eps -> 0, Richardson in eps
    let grid = Grid::new_1d(-2.0, 2.0, 1.0 / 80.0, 1.0, 0.5).unwrap();
    let region = RegionU {
        t: (0.3, 0.8),
        x: (-0.4, 0.4),
        y: (0.0, 0.0),
    };
    let a = |_: f64, _: f64, _: f64| 2.0;
    let f = smooth_pulse;
    let lin = restrict(
        &solve_linear_fn(&grid, &SpatialMetric::Flat, &f).unwrap(),
        &region,
    );
    let mut deviations = Vec::new();
    for &eps in &[4e-3, 2e-3, 1e-3] {
        let m = measurement_l_u(
            &grid,
            &SpatialMetric::Flat,
            &|t, x, y| eps * f(t, x, y),
            &a,
            eps,
            &region,
        )
        .unwrap();
        let worst = m
            .samples
            .iter()
            .zip(&lin.samples)
            .map(|(s, l)| (s.3 / eps - l.3).abs())
            .fold(0.0, f64::max);
        deviations.push(worst);
    }
    assert!(deviations[2] < deviations[0] / 3.0, "{deviations:?}");
}

#[test]
fn q_boxes_against_fd_solution_direct() {
    let grid = Grid::new_1d(-2.0, 2.0, 1.0 / 400.0, 1.0 + 1.0 / 400.0, 0.5).unwrap();
    let u = solve_linear_fn(&grid, &SpatialMetric::Flat, &box_src).unwrap();
    let v = u.sample(1.0, 0.0, 0.0);
    assert!((v - 0.005).abs() < 2e-4, "u(1,0) = {v}");
    let exact = q_boxes(&the_boxes(), 1.0, 0.0);
    assert!((exact - 0.005).abs() < 1e-15);
}
