//! Polarization tensors, the harmonicity constraint space `L(b)`, and the
//! polarization factor of the strongest interaction term.

use crate::error::AsymError;
use crate::ext::{Ext, ExtCtx};
use crate::frame::NullFrame;
use crate::ring::{Rat, Ring};

/// Minkowski signs `diag(-1, 1, 1, 1)`; the inverse metric has the same
/// components, so raising an index multiplies by `s_n`.
const S: [i64; 4] = [-1, 1, 1, 1];

fn sign<R: Ring>(n: usize) -> R {
    if S[n] < 0 {
        R::one().neg()
    } else {
        R::one()
    }
}

/// Symmetric 4x4 tensor over the extension algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct PolTensor<R: Ring> {
    pub m: [[Ext<R>; 4]; 4],
}

impl<R: Ring> PolTensor<R> {
    pub fn zero() -> Self {
        PolTensor {
            m: std::array::from_fn(|_| std::array::from_fn(|_| Ext::zero())),
        }
    }

    pub fn from_rational(q: [[i64; 4]; 4]) -> Self {
        let mut t = PolTensor::zero();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(q[i][j], q[j][i], "polarization tensors are symmetric");
                t.m[i][j] = Ext::scalar(R::from_rat(&crate::ring::rat_int(q[i][j])));
            }
        }
        t
    }

    /// `b (x) b` for a frame covector.
    pub fn outer(ctx: &ExtCtx<R>, b: &[Ext<R>; 4]) -> Self {
        let mut t = PolTensor::zero();
        for i in 0..4 {
            for j in 0..4 {
                t.m[i][j] = ctx.mul(&b[i], &b[j]);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|row| row.iter().all(|e| e.is_zero()))
    }

    /// `v^{nm} xi_n zeta_m` with both indices raised by the flat metric.
    pub fn contract(&self, ctx: &ExtCtx<R>, xi: &[Ext<R>; 4], zeta: &[Ext<R>; 4]) -> Ext<R> {
        let mut acc = Ext::zero();
        for n in 0..4 {
            for m in 0..4 {
                let mut term = ctx.mul(&self.m[n][m], &ctx.mul(&xi[n], &zeta[m]));
                term = ctx.mul_scalar(&term, &sign::<R>(n).mul(&sign::<R>(m)));
                acc = ctx.add(&acc, &term);
            }
        }
        acc
    }
}

/// The non-degenerate pairing `B(v, w) = g_{nj} g_{mk} v^{nm} w^{jk}`,
/// i.e. the signed Frobenius product.
pub fn pairing_b<R: Ring>(ctx: &ExtCtx<R>, v: &PolTensor<R>, w: &PolTensor<R>) -> Ext<R> {
    let mut acc = Ext::zero();
    for j in 0..4 {
        for k in 0..4 {
            let mut term = ctx.mul(&v.m[j][k], &w.m[j][k]);
            term = ctx.mul_scalar(&term, &sign::<R>(j).mul(&sign::<R>(k)));
            acc = ctx.add(&acc, &term);
        }
    }
    acc
}

/// Residual of the harmonicity condition at covector `xi`:
/// `res_j = -g^{mn} xi_m v_{nj} + xi_j (g^{pq} v_{pq}) / 2`.
pub fn harmonicity_residual<R: Ring>(
    ctx: &ExtCtx<R>,
    v: &PolTensor<R>,
    xi: &[Ext<R>; 4],
) -> [Ext<R>; 4] {
    let half = R::from_rat(&crate::ring::rat(1, 2));
    // trace g^{pq} v_{pq}
    let mut trace = Ext::zero();
    for p in 0..4 {
        let t = ctx.mul_scalar(&v.m[p][p], &sign::<R>(p));
        trace = ctx.add(&trace, &t);
    }
    std::array::from_fn(|j| {
        let mut first = Ext::zero();
        for n in 0..4 {
            let t = ctx.mul_scalar(&ctx.mul(&xi[n], &v.m[n][j]), &sign::<R>(n));
            first = ctx.add(&first, &t);
        }
        let second = ctx.mul_scalar(&ctx.mul(&xi[j], &trace), &half);
        ctx.sub(&second, &first)
    })
}

/// index pairs of the 10 independent symmetric components
pub const SYM_PAIRS: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

/// The 6-dimensional space `L(b)` of symmetric tensors satisfying the
/// harmonicity condition at the null covector `b`, by exact null-space
/// computation of the 4x10 constraint system over the extension field.
pub struct PolSpace {
    pub basis: Vec<PolTensor<Rat>>,
}

pub fn pol_space(frame: &NullFrame, cov_index: usize) -> Result<PolSpace, AsymError> {
    let data = frame.numeric.as_ref().expect("numeric frame required");
    let ctx = &data.ctx;
    let b = &data.b[cov_index - 1];
    if !data.gram[cov_index - 1][cov_index - 1].is_zero() {
        return Err(AsymError::NotNull);
    }
    if b.iter().all(|c| c.is_zero()) {
        return Err(AsymError::NotNull);
    }

    // rows: 4 equations; cols: 10 symmetric unknowns
    let mut rows: Vec<Vec<Ext<Rat>>> = Vec::with_capacity(4);
    for j in 0..4 {
        let mut row = Vec::with_capacity(10);
        for &(p, q) in SYM_PAIRS.iter() {
            // unit tensor e_{pq} symmetrized
            let mut unit = PolTensor::<Rat>::zero();
            unit.m[p][q] = Ext::one();
            unit.m[q][p] = Ext::one();
            let res = harmonicity_residual(ctx, &unit, b);
            row.push(res[j].clone());
        }
        rows.push(row);
    }

    // exact Gauss-Jordan elimination
    let n_cols = 10;
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        let piv = (r..rows.len()).find(|&i| !rows[i][c].is_zero());
        let Some(piv) = piv else { continue };
        rows.swap(r, piv);
        let inv = ctx.inv(&rows[r][c]).expect("pivot invertible");
        for cc in 0..n_cols {
            rows[r][cc] = ctx.mul(&rows[r][cc], &inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for cc in 0..n_cols {
                    let t = ctx.mul(&factor, &rows[r][cc]);
                    rows[i][cc] = ctx.sub(&rows[i][cc], &t);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }

    // free columns parametrize the null space
    let mut basis = Vec::new();
    for c in 0..n_cols {
        if pivot_cols.contains(&c) {
            continue;
        }
        let mut coords = vec![Ext::<Rat>::zero(); n_cols];
        coords[c] = Ext::one();
        for (pr, &pc) in pivot_cols.iter().enumerate() {
            coords[pc] = ctx.neg(&rows[pr][c]);
        }
        let mut t = PolTensor::<Rat>::zero();
        for (ci, &(p, q)) in SYM_PAIRS.iter().enumerate() {
            t.m[p][q] = coords[ci].clone();
            t.m[q][p] = coords[ci].clone();
        }
        // exactness check on the produced basis vector
        let res = harmonicity_residual(ctx, &t, b);
        assert!(
            res.iter().all(|x| x.is_zero()),
            "null-space vector must satisfy the constraint exactly"
        );
        basis.push(t);
    }
    Ok(PolSpace { basis })
}

/// The strongest term's polarization factor:
/// `P = (v4 . b1 b1)(v3 . b1 b1)(v2 . b1 b1) * D`, `D = B(v5, v1)`.
pub fn pol_factor(frame: &NullFrame, v: &[PolTensor<Rat>; 5]) -> (Ext<Rat>, Ext<Rat>) {
    let data = frame.numeric.as_ref().expect("numeric frame required");
    let ctx = &data.ctx;
    let b1 = &data.b[0];
    let d = pairing_b(ctx, &v[4], &v[0]);
    let mut p = d.clone();
    for r in [3, 2, 1] {
        let c = v[r].contract(ctx, b1, b1);
        p = ctx.mul(&p, &c);
    }
    (p, d)
}
