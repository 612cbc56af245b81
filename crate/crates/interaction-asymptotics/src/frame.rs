//! The five-covector null frame `b^(1)..b^(5)` and its exact Gram data.
//!
//! `b^(5) = (1,1,0,0)` and `b^(j) = (1, 1 - rho_j^2/2, y_j, rho_j^3)`
//! with `y_j = rho_j sqrt(1 - rho_j^2/4 - rho_j^4)` chosen so that every
//! frame covector is null *exactly*.  All Gram entries and the coordinate
//! change `y = A^{-1} x` are carried in the quadratic extension algebra,
//! in two flavors: exact rational parameters, or symbolic parameters
//! ordered by one of the two scale hierarchies.

use crate::error::AsymError;
use crate::ext::{det4, Ext, ExtCtx};
use crate::ring::{rat, Poly, Rat, Ring};

/// Which scale hierarchy orders the four parameters.
///
/// Einstein ordering: `rho_4 << rho_2 << rho_3 << rho_1`.
/// Scalar ordering:   `rho_4 << rho_2 << rho_1 << rho_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Einstein,
    Scalar,
}

impl Mode {
    /// Weight of each `rho_j` as an (integer) power of the base
    /// parameter; bigger weight = smaller quantity.
    pub fn weights(&self) -> [i64; 4] {
        match self {
            // rho1 base; rho3 = rho1^100, rho2 = rho3^100, rho4 = rho2^100
            Mode::Einstein => [1, 10_000, 100, 1_000_000],
            // rho3 base; rho1 = rho3^100, rho2 = rho1^100, rho4 = rho2^100
            Mode::Scalar => [100, 10_000, 1, 1_000_000],
        }
    }

    /// index (1..=4) of the larger of two parameters under the hierarchy
    pub fn larger(&self, a: usize, b: usize) -> usize {
        let w = self.weights();
        if w[a - 1] <= w[b - 1] {
            a
        } else {
            b
        }
    }

    /// Priority order of the exponent comparisons after the tau stage,
    /// as indices into the `[n4, n2, n3, n1]` storage order.
    pub fn priority(&self) -> [usize; 4] {
        match self {
            // n4, then n2, then n3, then n1
            Mode::Einstein => [0, 1, 2, 3],
            // n4, then n2, then n1, then n3
            Mode::Scalar => [0, 1, 3, 2],
        }
    }
}

/// One of the two parameter flavors of a frame.
#[allow(clippy::large_enum_variant)]
pub enum FrameKind {
    /// exact rational `rho` values
    Numeric { rho: [Rat; 4] },
    /// symbolic parameters ordered by the mode's hierarchy
    Hierarchy,
}

/// The frame over a given coefficient ring.
pub struct FrameData<R: Ring> {
    pub ctx: ExtCtx<R>,
    /// covector components, `b[j][k]`: j in 0..5 is the covector index
    /// (b^(1)..b^(5)), k the coordinate
    pub b: [[Ext<R>; 4]; 5],
    /// Gram matrix `omega_{jk} = g(b^(j), b^(k))`, 1-based covectors at
    /// 0-based storage
    pub gram: [[Ext<R>; 5]; 5],
    /// determinant of `A^{-1}` (rows are `b^(1)..b^(4)`)
    pub det_a_inv: Ext<R>,
}

pub struct NullFrame {
    pub mode: Mode,
    pub kind: FrameKind,
    pub numeric: Option<FrameData<Rat>>,
    pub symbolic: Option<FrameData<Poly>>,
}

const MINK_SIGN: [i64; 4] = [-1, 1, 1, 1];

fn minkowski_pair<R: Ring>(ctx: &ExtCtx<R>, a: &[Ext<R>; 4], b: &[Ext<R>; 4]) -> Ext<R> {
    let mut acc = Ext::zero();
    for k in 0..4 {
        let term = ctx.mul(&a[k], &b[k]);
        if MINK_SIGN[k] < 0 {
            acc = ctx.sub(&acc, &term);
        } else {
            acc = ctx.add(&acc, &term);
        }
    }
    acc
}

fn build_data<R: Ring>(rho: [R; 4]) -> FrameData<R> {
    // y_j^2 = rho_j^2 (1 - rho_j^2/4 - rho_j^4)
    let quarter = R::from_rat(&rat(1, 4));
    let squares: [R; 4] = std::array::from_fn(|j| {
        let r2 = rho[j].mul(&rho[j]);
        let r4 = r2.mul(&r2);
        let r6 = r4.mul(&r2);
        r2.sub(&r4.mul(&quarter)).sub(&r6)
    });
    let ctx = ExtCtx { squares };
    let one = Ext::scalar(R::one());
    let half = R::from_rat(&rat(1, 2));

    let mut b: [[Ext<R>; 4]; 5] = std::array::from_fn(|_| std::array::from_fn(|_| Ext::zero()));
    for j in 0..4 {
        let r2 = rho[j].mul(&rho[j]);
        let r3 = r2.mul(&rho[j]);
        b[j][0] = one.clone();
        b[j][1] = Ext::scalar(R::one().sub(&r2.mul(&half)));
        b[j][2] = Ext::gen(j + 1);
        b[j][3] = Ext::scalar(r3);
    }
    b[4][0] = one.clone();
    b[4][1] = one.clone();
    b[4][2] = Ext::zero();
    b[4][3] = Ext::zero();

    let mut gram: [[Ext<R>; 5]; 5] = std::array::from_fn(|_| std::array::from_fn(|_| Ext::zero()));
    for j in 0..5 {
        for k in 0..5 {
            gram[j][k] = minkowski_pair(&ctx, &b[j], &b[k]);
        }
    }

    let rows: [[Ext<R>; 4]; 4] = std::array::from_fn(|j| b[j].clone());
    let det_a_inv = det4(&ctx, &rows);

    FrameData {
        ctx,
        b,
        gram,
        det_a_inv,
    }
}

/// Largest admissible parameter: `1 - rho^2/4 - rho^4` must stay positive.
fn rho_admissible(rho: &Rat) -> bool {
    if rho <= &<Rat as num_traits::Zero>::zero() || rho >= &rat(1, 1) {
        return false;
    }
    let r2 = rho * rho;
    let r4 = &r2 * &r2;
    let v = rat(1, 1) - r2 / rat(4, 1) - r4;
    v > <Rat as num_traits::Zero>::zero()
}

/// Build a frame with exact rational parameters.
pub fn build_frame_numeric(mode: Mode, rho: [Rat; 4]) -> Result<NullFrame, AsymError> {
    for r in &rho {
        if !rho_admissible(r) {
            return Err(AsymError::BadParameter(format!(
                "rho = {r} outside the admissible range (0, root of 1 - x^2/4 - x^4)"
            )));
        }
    }
    let data = build_data(rho.clone());
    // frame sanity, all exact
    for j in 0..5 {
        assert!(
            data.gram[j][j].is_zero(),
            "covector {} must be exactly null",
            j + 1
        );
    }
    for j in 0..4 {
        let expect = Ext::scalar(-&rho[j] * &rho[j] / rat(2, 1));
        assert_eq!(data.gram[j][4], expect, "omega_j5 must be -rho_j^2/2");
    }
    if data.det_a_inv.is_zero() {
        return Err(AsymError::BadParameter(
            "frame covectors b^(1)..b^(4) are linearly dependent".into(),
        ));
    }
    // b5 outside the span of any three of b1..b4
    for drop in 0..4 {
        let rows: [[Ext<Rat>; 4]; 4] = std::array::from_fn(|i| {
            let src = if i < drop { i } else { i + 1 };
            if src < 4 {
                data.b[src].clone()
            } else {
                data.b[4].clone()
            }
        });
        let d = det4(&data.ctx, &rows);
        if d.is_zero() {
            return Err(AsymError::BadParameter(format!(
                "b^(5) lies in the span of three frame covectors (dropped {})",
                drop + 1
            )));
        }
    }
    Ok(NullFrame {
        mode,
        kind: FrameKind::Numeric { rho },
        numeric: Some(data),
        symbolic: None,
    })
}

/// Build a symbolic hierarchy frame: components are exact polynomials in
/// the four parameters, ordered by the mode's hierarchy for all leading
/// term extractions.
pub fn build_frame_hierarchy(mode: Mode) -> NullFrame {
    let rho: [Poly; 4] = std::array::from_fn(|j| Poly::var(j + 1));
    let data = build_data(rho);
    for j in 0..5 {
        assert!(data.gram[j][j].is_zero(), "nullity must be exact");
    }
    NullFrame {
        mode,
        kind: FrameKind::Hierarchy,
        numeric: None,
        symbolic: Some(data),
    }
}

impl NullFrame {
    /// `omega_{jk}` as an element of the numeric extension field
    /// (1-based covector indices, 5 = the oscillatory covector).
    pub fn gram_numeric(&self, j: usize, k: usize) -> &Ext<Rat> {
        &self
            .numeric
            .as_ref()
            .expect("numeric frame") /**/
            .gram[j - 1][k - 1]
    }

    /// Leading `rho`-exponent vector and coefficient of a symbolic
    /// element, with `y_j` counted as one power of `rho_j`.
    pub fn leading_of(&self, e: &Ext<Poly>) -> Option<([i64; 4], Rat)> {
        let w = self.mode.weights();
        let mut best: Option<(i64, [i64; 4], Rat)> = None;
        for (mask, poly) in e.comps.iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            if let Some((pe, pc)) = poly.leading(&w) {
                let mut exps = [0i64; 4];
                for j in 0..4 {
                    exps[j] = pe[j] as i64 + ((mask >> j) & 1) as i64;
                }
                let weight: i64 = exps.iter().zip(&w).map(|(&x, &ww)| x * ww).sum();
                let better = match &best {
                    None => true,
                    Some((bw, _, _)) => weight < *bw,
                };
                if better {
                    best = Some((weight, exps, pc));
                }
            }
        }
        best.map(|(_, e, c)| (e, c))
    }

    /// Leading exponent vector of `omega_{jk}` under the hierarchy:
    /// `-rho_j^2/2` exactly against the oscillatory covector, and
    /// `-rho_max^2/2` for a pair of small covectors.
    pub fn omega_leading_exps(&self, j: usize, k: usize) -> [i64; 4] {
        assert!(j != k);
        let mut e = [0i64; 4];
        if j == 5 || k == 5 {
            let o = if j == 5 { k } else { j };
            e[o - 1] = 2;
        } else {
            let big = self.mode.larger(j, k);
            e[big - 1] = 2;
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_to_f64;

    #[test]
    fn gram_off_diagonal_value() {
        // omega_15 = -rho_1^2/2 = -0.005 at rho_1 = 0.1, exactly
        let f = build_frame_numeric(
            Mode::Einstein,
            [rat(1, 10), rat(1, 12), rat(1, 11), rat(1, 13)],
        )
        .unwrap();
        let w15 = f.gram_numeric(1, 5);
        assert!(w15.is_scalar());
        assert_eq!(*w15.rational_part(), rat(-1, 200));
    }

    #[test]
    fn nullity_is_exact_both_scales() {
        for rho1 in [rat(1, 10), rat(1, 100)] {
            let f = build_frame_numeric(Mode::Einstein, [rho1, rat(1, 50), rat(1, 30), rat(1, 70)])
                .unwrap();
            let d = f.numeric.as_ref().unwrap();
            for j in 0..5 {
                assert!(d.gram[j][j].is_zero());
            }
        }
    }

    #[test]
    fn hierarchy_det_a_structure() {
        // det(A^{-1}) = (Vandermonde)/2 up to the y-corrections: the
        // leading exponents follow the hierarchy ordering of the
        // pairwise differences.
        let f = build_frame_hierarchy(Mode::Einstein);
        let d = f.symbolic.as_ref().unwrap();
        let (exps, coeff) = f.leading_of(&d.det_a_inv).unwrap();
        // pairs: (12),(13),(14) -> rho1^3; (23),(34) -> rho3^2; (24) -> rho2
        assert_eq!(exps, [3, 1, 2, 0], "leading exponents of det(A^-1)");
        let abs_coeff = if coeff < <Rat as num_traits::Zero>::zero() {
            -coeff.clone()
        } else {
            coeff.clone()
        };
        assert_eq!(abs_coeff, rat(1, 2));
        // cross-check at a steeply hierarchy-ordered numeric point; the
        // subleading corrections are then at the percent level
        let rho = [0.05, 1e-7, 1e-4, 1e-10];
        let val = eval_ext_f64(&d.det_a_inv, &rho);
        let pred = rat_to_f64(&coeff) * rho[0].powi(3) * rho[1] * rho[2].powi(2);
        assert!(
            (val / pred - 1.0).abs() < 2e-2,
            "numeric check {val} vs leading {pred}"
        );
    }

    fn eval_ext_f64(e: &Ext<Poly>, rho: &[f64; 4]) -> f64 {
        let mut acc = 0.0;
        for (mask, poly) in e.comps.iter().enumerate() {
            if poly.is_zero() {
                continue;
            }
            let mut y = 1.0;
            for j in 0..4 {
                if mask & (1 << j) != 0 {
                    y *= rho[j] * (1.0 - rho[j] * rho[j] / 4.0 - rho[j].powi(4)).sqrt();
                }
            }
            acc += poly.eval_f64(rho) * y;
        }
        acc
    }
}
