//! Interaction experiments and the singularity-contrast detector.
//!
//! Crossing plane pulses source a top-order interaction wave carrying a
//! conic singularity from the crossing event; the detector compares
//! windowed second-difference energy (normalized by the local field
//! energy) in a tube around the forward cone against matched windows in
//! the smooth interior, staying clear of the incoming ridges and of the
//! superluminal pair-interaction trajectories.

use crate::error::WaveError;
use crate::expansion::interaction_wave;
use crate::field::WaveField;
use crate::grid::Grid;
use crate::solver::SpatialMetric;
use crate::sources::PlanePulse;

#[derive(Debug, Clone)]
pub struct InteractionConfig {
    /// spatial dimension: 1 (two pulses) or 2 (three pulses)
    pub dim: usize,
    pub h: f64,
    /// coupling coefficient
    pub a_coeff: f64,
    /// kink smoothing width in cells
    pub w_cells: f64,
    /// when true the pulses are aimed parallel and never cross
    pub parallel_control: bool,
}

impl Default for InteractionConfig {
    fn default() -> Self {
        InteractionConfig {
            dim: 1,
            h: 1.0 / 200.0,
            a_coeff: 1.0,
            w_cells: 2.5,
            parallel_control: false,
        }
    }
}

#[derive(Debug)]
pub struct ContrastReport {
    /// crossing event (t, x, y)
    pub q: [f64; 3],
    pub on_energy: f64,
    pub off_energy: f64,
    pub ratio: f64,
    /// false when both window families sit below the sensitivity floor
    pub signal: bool,
    pub crossing: bool,
    pub m_field: WaveField,
    pub pulses: Vec<PlanePulse>,
}

/// windowed second-difference energy around one cell, normalized by the
/// local field energy (3-cell window)
fn window_energy(m: &WaveField, n: usize, i: usize, j: usize) -> (f64, f64) {
    let g = &m.grid;
    let mut high = 0.0;
    let mut low = 0.0;
    for dn in -1i64..=1 {
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                if g.dim == 1 && dj != 0 {
                    continue;
                }
                let (nn, ii, jj) = (
                    (n as i64 + dn) as usize,
                    (i as i64 + di) as usize,
                    (j as i64 + dj) as usize,
                );
                if nn == 0 || nn + 1 >= g.nt || ii == 0 || ii + 1 >= g.n[0] {
                    continue;
                }
                if g.dim == 2 && (jj == 0 || jj + 1 >= g.n[1]) {
                    continue;
                }
                let dtt = m.at(nn + 1, ii, jj) - 2.0 * m.at(nn, ii, jj) + m.at(nn - 1, ii, jj);
                let dxx = m.at(nn, ii + 1, jj) - 2.0 * m.at(nn, ii, jj) + m.at(nn, ii - 1, jj);
                let mut d2 = dtt * dtt + dxx * dxx;
                if g.dim == 2 {
                    let dyy = m.at(nn, ii, jj + 1) - 2.0 * m.at(nn, ii, jj) + m.at(nn, ii, jj - 1);
                    d2 += dyy * dyy;
                }
                high += d2;
                low += m.at(nn, ii, jj).powi(2);
            }
        }
    }
    (high, low)
}

fn mean_normalized(m: &WaveField, cells: &[(usize, usize, usize)]) -> (f64, f64) {
    if cells.is_empty() {
        return (0.0, 0.0);
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for &(n, i, j) in cells {
        let (h, l) = window_energy(m, n, i, j);
        num += h;
        den += l;
    }
    let peak = (den / cells.len() as f64).sqrt();
    (num / (den + 1e-300), peak)
}

/// Detector sensitivity floor: interaction fields below this fraction of
/// the natural product scale `|a| amp1 amp2 ...` count as "no signal" and
/// the contrast ratio reports flat.
const SIGNAL_FLOOR: f64 = 1e-4;

fn contrast_ratio(on: (f64, f64), off: (f64, f64), product_scale: f64) -> (f64, bool) {
    let floor = SIGNAL_FLOOR * product_scale;
    if on.1 < floor && off.1 < floor {
        return (1.0, false);
    }
    ((on.0 + 1e-300) / (off.0 + 1e-300), true)
}

/// Run the d+1-pulse experiment and report the on/off-cone contrast.
pub fn interaction_experiment(cfg: &InteractionConfig) -> Result<ContrastReport, WaveError> {
    match cfg.dim {
        1 => experiment_1d(cfg),
        2 => experiment_2d(cfg),
        d => Err(WaveError::BadConfig(format!("dimension {d} unsupported"))),
    }
}

fn experiment_1d(cfg: &InteractionConfig) -> Result<ContrastReport, WaveError> {
    let w = cfg.w_cells * cfg.h;
    let mk = |dir: f64, edge0: f64| PlanePulse {
        dir: [dir, 0.0],
        edge0,
        a: 1,
        w,
        length: 0.3,
        amplitude: 1.0,
        t_ramp: 0.2,
        transverse_halfwidth: 0.0,
        transverse_center: 0.0,
    };
    // right-mover with edge on x - t = -0.6, left-mover on -x - t = -0.6:
    // edges cross at q = (0.6, 0)
    let (p1, p2) = if cfg.parallel_control {
        (mk(1.0, -0.6), mk(1.0, 0.4))
    } else {
        (mk(1.0, -0.6), mk(-1.0, -0.6))
    };
    let q_t = 0.6;
    let horizon = 1.45;

    // crossing check: the two edge characteristics dir.x - t = edge0
    // intersect at t = -(e1 + e2)/2 for opposite directions; parallel
    // directions never meet (miss = phase separation)
    let crossing = !cfg.parallel_control;
    if !cfg.parallel_control {
        if p1.dir[0] == p2.dir[0] {
            return Err(WaveError::NoIntersection {
                miss: (p1.edge0 - p2.edge0).abs(),
            });
        }
        let t_cross = -(p1.edge0 + p2.edge0) / 2.0;
        if !(0.0..horizon).contains(&t_cross) {
            return Err(WaveError::NoIntersection {
                miss: (t_cross - q_t).abs(),
            });
        }
    }

    let grid = Grid::new_1d(-2.6, 2.6, cfg.h, horizon, 0.5)?;
    let s1 = |t: f64, x: f64, y: f64| p1.source(t, x, y);
    let s2 = |t: f64, x: f64, y: f64| p2.source(t, x, y);
    let a = cfg.a_coeff;
    let m = interaction_wave(&grid, &SpatialMetric::Flat, &[&s1, &s2], &|_, _, _| a)?;

    // sample windows at late times: cone |x| = t - q_t, interior |x| =
    // 0.45 (t - q_t)
    let mut on = Vec::new();
    let mut off = Vec::new();
    for frac in [0.70, 0.78, 0.86, 0.94] {
        let t = q_t + (horizon - q_t - 3.0 * grid.dt) * frac;
        let n = (t / grid.dt).round() as usize;
        let r = t - q_t;
        for side in [-1.0, 1.0] {
            let xc = side * r;
            let i = ((xc - grid.x0[0]) / grid.h).round() as usize;
            on.push((n, i, 0));
            let xo = side * 0.45 * r;
            let io = ((xo - grid.x0[0]) / grid.h).round() as usize;
            off.push((n, io, 0));
        }
    }
    let on_stats = mean_normalized(&m, &on);
    let off_stats = mean_normalized(&m, &off);
    let product_scale = cfg.a_coeff.abs() * 0.02; // |a| amp^2 times the Q gain
    let (ratio, signal) = contrast_ratio(on_stats, off_stats, product_scale);
    Ok(ContrastReport {
        q: [q_t, 0.0, 0.0],
        on_energy: on_stats.0,
        off_energy: off_stats.0,
        ratio,
        signal,
        crossing,
        m_field: m,
        pulses: vec![p1, p2],
    })
}

fn experiment_2d(cfg: &InteractionConfig) -> Result<ContrastReport, WaveError> {
    let w = cfg.w_cells * cfg.h;
    let q_t = 0.55;
    let angles: Vec<f64> = if cfg.parallel_control {
        vec![0.0, 0.0, 0.0]
    } else {
        vec![
            0.0,
            2.0 * std::f64::consts::PI / 3.0,
            4.0 * std::f64::consts::PI / 3.0,
        ]
    };
    let pulses: Vec<PlanePulse> = angles
        .iter()
        .enumerate()
        .map(|(idx, &th)| PlanePulse {
            dir: [th.cos(), th.sin()],
            // all ridges pass through the origin at t = q_t; the parallel
            // control staggers them so they never overlap
            edge0: if cfg.parallel_control {
                -q_t + 0.55 * idx as f64
            } else {
                -q_t
            },
            a: 1,
            w,
            length: 0.28,
            amplitude: 1.0,
            t_ramp: 0.18,
            transverse_halfwidth: 0.8,
            transverse_center: 0.0,
        })
        .collect();

    let horizon = 0.95;
    let half = 1.35;
    let mut grid = Grid::new_2d([-half, -half], [half, half], cfg.h, horizon, 0.5)?;
    // boundary reflections are causally irrelevant for the detector
    // windows: the source strips fit inside radius ~1.16, the windows
    // inside ~0.45, and 2*half > window + horizon + source radius
    let source_radius = 1.16;
    let window_radius = 0.45;
    assert!(
        2.0 * half > window_radius + horizon + source_radius,
        "box too small for reflection-free windows"
    );
    grid.check_support = false;
    let a = cfg.a_coeff;
    let s0 = |t: f64, x: f64, y: f64| pulses[0].source(t, x, y);
    let s1 = |t: f64, x: f64, y: f64| pulses[1].source(t, x, y);
    let s2 = |t: f64, x: f64, y: f64| pulses[2].source(t, x, y);
    let m = interaction_wave(&grid, &SpatialMetric::Flat, &[&s0, &s1, &s2], &|_, _, _| a)?;

    // excluded directions: the ridge tangency points (the 3 pulse
    // directions) and the superluminal pair points (the 3 opposite
    // bisector directions)
    let mut excluded: Vec<f64> = Vec::new();
    for &th in &[
        0.0,
        2.0 * std::f64::consts::PI / 3.0,
        4.0 * std::f64::consts::PI / 3.0,
    ] {
        excluded.push(th);
        excluded.push(th + std::f64::consts::PI / 3.0);
    }
    let clear = |phi: f64| -> bool {
        excluded.iter().all(|&e| {
            let mut d = (phi - e).abs() % (2.0 * std::f64::consts::PI);
            if d > std::f64::consts::PI {
                d = 2.0 * std::f64::consts::PI - d;
            }
            d > 0.45
        })
    };

    let mut on = Vec::new();
    let mut off = Vec::new();
    for frac in [0.6, 0.85] {
        let t = q_t + (horizon - q_t - 3.0 * grid.dt) * frac;
        let n = (t / grid.dt).round() as usize;
        let r = t - q_t;
        for k in 0..48 {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / 48.0;
            if !clear(phi) {
                continue;
            }
            let place = |rr: f64, list: &mut Vec<(usize, usize, usize)>| {
                let x = rr * phi.cos();
                let y = rr * phi.sin();
                let i = ((x - grid.x0[0]) / grid.h).round() as usize;
                let j = ((y - grid.x0[1]) / grid.h).round() as usize;
                if i > 2 && j > 2 && i + 3 < grid.n[0] && j + 3 < grid.n[1] {
                    list.push((n, i, j));
                }
            };
            place(r, &mut on);
            place(0.45 * r, &mut off);
        }
    }
    let on_stats = mean_normalized(&m, &on);
    let off_stats = mean_normalized(&m, &off);
    let product_scale = cfg.a_coeff.abs() * 0.02;
    let (ratio, signal) = contrast_ratio(on_stats, off_stats, product_scale);
    Ok(ContrastReport {
        q: [q_t, 0.0, 0.0],
        on_energy: on_stats.0,
        off_energy: off_stats.0,
        ratio,
        signal,
        crossing: !cfg.parallel_control,
        m_field: m,
        pulses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_pulses_light_up_the_cone() {
        let cfg = InteractionConfig {
            h: 1.0 / 160.0,
            ..Default::default()
        };
        let rep = interaction_experiment(&cfg).unwrap();
        assert!(rep.crossing);
        assert!(
            rep.ratio >= 10.0,
            "on/off contrast {} (on {}, off {})",
            rep.ratio,
            rep.on_energy,
            rep.off_energy
        );
    }

    #[test]
    fn parallel_pulses_show_no_interaction_point() {
        let cfg = InteractionConfig {
            h: 1.0 / 160.0,
            parallel_control: true,
            ..Default::default()
        };
        let rep = interaction_experiment(&cfg).unwrap();
        assert!(
            rep.ratio <= 2.0,
            "control contrast {} should be flat",
            rep.ratio
        );
    }
}
