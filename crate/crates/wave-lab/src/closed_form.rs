//! The d'Alembert causal inverse in 1+1 as an independent oracle:
//! `(Qf)(t,x) = (1/2) * integral of f over the backward triangle
//! { (s,y) : 0 <= s <= t, |y - x| <= t - s }`, exactly for
//! piecewise-constant box sources and by adaptive nested quadrature for
//! arbitrary integrands.

use crate::error::WaveError;

/// One constant box `value` on `[t0,t1] x [x0,x1]`.
#[derive(Debug, Clone, Copy)]
pub struct BoxSource {
    pub t0: f64,
    pub t1: f64,
    pub x0: f64,
    pub x1: f64,
    pub value: f64,
}

/// Exact `(Qf)(t,x)` for a sum of constant boxes: per box, integrate the
/// overlap width of the light triangle with the box over time; the width
/// is piecewise linear in `s`, so a breakpoint-split trapezoid rule is
/// exact.
pub fn q_boxes(boxes: &[BoxSource], t: f64, x: f64) -> f64 {
    let mut total = 0.0;
    for b in boxes {
        let s_lo = b.t0.max(0.0);
        let s_hi = b.t1.min(t);
        if s_hi <= s_lo {
            continue;
        }
        // width(s) = len([x-(t-s), x+(t-s)] cap [x0,x1]), kinks where the
        // moving endpoints cross the box faces
        let mut brk = vec![s_lo, s_hi];
        for &face in &[b.x0, b.x1] {
            // x - (t-s) = face  ->  s = t - (x - face)
            let s1 = t - (x - face);
            // x + (t-s) = face  ->  s = t - (face - x)
            let s2 = t - (face - x);
            for s in [s1, s2] {
                if s > s_lo && s < s_hi {
                    brk.push(s);
                }
            }
        }
        brk.sort_by(|a, c| a.partial_cmp(c).unwrap());
        let width = |s: f64| -> f64 {
            let lo = (x - (t - s)).max(b.x0);
            let hi = (x + (t - s)).min(b.x1);
            (hi - lo).max(0.0)
        };
        let mut area = 0.0;
        for w in brk.windows(2) {
            area += 0.5 * (width(w[0]) + width(w[1])) * (w[1] - w[0]);
        }
        total += b.value * area;
    }
    0.5 * total
}

/// Adaptive Simpson in one dimension.
fn simpson_1d(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    (f(a) + 4.0 * f(c) + f(b)) * (b - a) / 6.0
}

fn adapt_1d(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, whole: f64, depth: u32) -> f64 {
    let c = 0.5 * (a + b);
    let l = simpson_1d(f, a, c);
    let r = simpson_1d(f, c, b);
    if (l + r - whole).abs() <= 15.0 * tol || depth == 0 {
        l + r + (l + r - whole) / 15.0
    } else {
        adapt_1d(f, a, c, tol / 2.0, l, depth - 1) + adapt_1d(f, c, b, tol / 2.0, r, depth - 1)
    }
}

pub fn integrate_1d(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    // seed with a few panels so nearly-cancelling humps are not missed
    let panels = 8;
    let mut acc = 0.0;
    for i in 0..panels {
        let pa = a + (b - a) * i as f64 / panels as f64;
        let pb = a + (b - a) * (i + 1) as f64 / panels as f64;
        acc += adapt_1d(f, pa, pb, tol / panels as f64, simpson_1d(f, pa, pb), 28);
    }
    acc
}

/// `(Qg)(t,x)` for an arbitrary integrand by nested adaptive quadrature
/// over the backward triangle.
pub fn q_quad(g: &dyn Fn(f64, f64) -> f64, t: f64, x: f64, tol: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let outer = |s: f64| -> f64 {
        let half = t - s;
        integrate_1d(&|y| g(s, y), x - half, x + half, tol)
    };
    0.5 * integrate_1d(&outer, 0.0, t, tol)
}

/// Nested closed-form second-order wave: `w2 = -Q(a (Qf)^2)` with the
/// inner inverse exact (box source) and the outer by quadrature.
pub fn w2_oracle(
    boxes: &[BoxSource],
    a_coeff: f64,
    t: f64,
    x: f64,
    tol: f64,
) -> Result<f64, WaveError> {
    if boxes.is_empty() {
        return Err(WaveError::UnsupportedSource);
    }
    let g = |s: f64, y: f64| -> f64 {
        let w1 = q_boxes(boxes, s, y);
        -a_coeff * w1 * w1
    };
    Ok(q_quad(&g, t, x, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_box() -> Vec<BoxSource> {
        vec![BoxSource {
            t0: 0.0,
            t1: 0.1,
            x0: -0.05,
            x1: 0.05,
            value: 1.0,
        }]
    }

    #[test]
    fn box_value_is_exact() {
        assert!((q_boxes(&unit_box(), 1.0, 0.0) - 0.005).abs() < 1e-15);
    }

    #[test]
    fn fundamental_solution_limit() {
        // shrinking box of unit mass: u -> 1/2 inside the light cone
        for eps in [0.1_f64, 0.02, 0.004] {
            let b = vec![BoxSource {
                t0: 0.0,
                t1: eps,
                x0: -eps / 2.0,
                x1: eps / 2.0,
                value: 1.0 / (eps * eps),
            }];
            let v = q_boxes(&b, 1.0, 0.3);
            assert!((v - 0.5).abs() < eps, "eps={eps}: u = {v}, expected -> 0.5");
        }
        // outside the cone: zero
        let b = vec![BoxSource {
            t0: 0.0,
            t1: 0.01,
            x0: -0.005,
            x1: 0.005,
            value: 1e4,
        }];
        assert_eq!(q_boxes(&b, 1.0, 1.5), 0.0);
    }

    #[test]
    fn time_translation_invariance() {
        let shifted: Vec<BoxSource> = unit_box()
            .iter()
            .map(|b| BoxSource {
                t0: b.t0 + 0.3,
                t1: b.t1 + 0.3,
                ..*b
            })
            .collect();
        let v0 = q_boxes(&unit_box(), 0.9, 0.2);
        let v1 = q_boxes(&shifted, 1.2, 0.2);
        assert!((v0 - v1).abs() < 1e-15);
    }

    #[test]
    fn quadrature_matches_exact_on_boxes() {
        let b = unit_box();
        let g = |s: f64, y: f64| -> f64 {
            if (0.0..=0.1).contains(&s) && (-0.05..=0.05).contains(&y) {
                1.0
            } else {
                0.0
            }
        };
        let exact = q_boxes(&b, 0.8, 0.1);
        let quad = q_quad(&g, 0.8, 0.1, 1e-10);
        assert!((exact - quad).abs() < 1e-6, "{exact} vs {quad}");
    }
}
