//! Quadratic extension tower `R[y1..y4] / (y_j^2 = r_j)`.
//!
//! The null frame's third components are
//! `y_j = rho_j sqrt(1 - rho_j^2/4 - rho_j^4)`, irrational over the
//! rationals.  Adjoining all four square roots gives a 16-dimensional
//! algebra in which every Gram identity is checked with literal
//! equality, no tolerances.  Elements are stored as coefficient arrays
//! indexed by the subset mask of the generators.

use crate::ring::{Rat, Ring};

#[derive(Debug, Clone, PartialEq)]
pub struct Ext<R: Ring> {
    /// component `comps[mask]` multiplies `prod_{j in mask} y_j`
    pub comps: Vec<R>,
}

impl<R: Ring> Ext<R> {
    pub fn scalar(r: R) -> Self {
        let mut comps = vec![R::zero(); 16];
        comps[0] = r;
        Ext { comps }
    }

    pub fn zero() -> Self {
        Ext {
            comps: vec![R::zero(); 16],
        }
    }

    pub fn one() -> Self {
        Ext::scalar(R::one())
    }

    /// the generator `y_j`, j in 1..=4
    pub fn gen(j: usize) -> Self {
        let mut comps = vec![R::zero(); 16];
        comps[1 << (j - 1)] = R::one();
        Ext { comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn rational_part(&self) -> &R {
        &self.comps[0]
    }

    /// true when only the mask-0 component is populated
    pub fn is_scalar(&self) -> bool {
        self.comps.iter().skip(1).all(|c| c.is_zero())
    }
}

/// The algebra context: the squares of the four generators.
#[derive(Debug, Clone)]
pub struct ExtCtx<R: Ring> {
    pub squares: [R; 4],
}

impl<R: Ring> ExtCtx<R> {
    pub fn add(&self, a: &Ext<R>, b: &Ext<R>) -> Ext<R> {
        Ext {
            comps: a
                .comps
                .iter()
                .zip(&b.comps)
                .map(|(x, y)| x.add(y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &Ext<R>, b: &Ext<R>) -> Ext<R> {
        Ext {
            comps: a
                .comps
                .iter()
                .zip(&b.comps)
                .map(|(x, y)| x.sub(y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &Ext<R>) -> Ext<R> {
        Ext {
            comps: a.comps.iter().map(|x| x.neg()).collect(),
        }
    }

    pub fn mul(&self, a: &Ext<R>, b: &Ext<R>) -> Ext<R> {
        let mut out = vec![R::zero(); 16];
        for ma in 0..16usize {
            if a.comps[ma].is_zero() {
                continue;
            }
            for mb in 0..16usize {
                if b.comps[mb].is_zero() {
                    continue;
                }
                let mut c = a.comps[ma].mul(&b.comps[mb]);
                let overlap = ma & mb;
                for j in 0..4 {
                    if overlap & (1 << j) != 0 {
                        c = c.mul(&self.squares[j]);
                    }
                }
                let m = ma ^ mb;
                out[m] = out[m].add(&c);
            }
        }
        Ext { comps: out }
    }

    pub fn mul_scalar(&self, a: &Ext<R>, s: &R) -> Ext<R> {
        Ext {
            comps: a.comps.iter().map(|c| c.mul(s)).collect(),
        }
    }

    /// flip the sign of every component containing `y_j`
    pub fn conj(&self, a: &Ext<R>, j: usize) -> Ext<R> {
        let bit = 1 << (j - 1);
        Ext {
            comps: a
                .comps
                .iter()
                .enumerate()
                .map(|(m, c)| if m & bit != 0 { c.neg() } else { c.clone() })
                .collect(),
        }
    }
}

impl ExtCtx<Rat> {
    /// Exact inverse by iterated rationalization: multiplying by the
    /// `y_j`-conjugate removes the generator from the running product,
    /// leaving a rational after four rounds.
    pub fn inv(&self, a: &Ext<Rat>) -> Option<Ext<Rat>> {
        if a.is_zero() {
            return None;
        }
        let mut numerator = Ext::one();
        let mut cur = a.clone();
        for j in 1..=4 {
            let cj = self.conj(&cur, j);
            numerator = self.mul(&numerator, &cj);
            cur = self.mul(&cur, &cj);
        }
        debug_assert!(cur.is_scalar(), "norm must be rational");
        let n = cur.rational_part();
        if n.is_zero() {
            return None;
        }
        let inv_n = Rat::one() / n;
        Some(self.mul_scalar(&numerator, &inv_n))
    }

    pub fn div(&self, a: &Ext<Rat>, b: &Ext<Rat>) -> Option<Ext<Rat>> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

/// 4x4 determinant over the extension algebra (cofactor expansion).
pub fn det4<R: Ring>(ctx: &ExtCtx<R>, m: &[[Ext<R>; 4]; 4]) -> Ext<R> {
    let mut acc = Ext::zero();
    // permutations of 4 elements with signs, generated inline
    let perms: [([usize; 4], i32); 24] = PERMS4;
    for (p, sgn) in perms {
        let mut prod = Ext::one();
        for (row, &col) in p.iter().enumerate() {
            prod = ctx.mul(&prod, &m[row][col]);
        }
        if sgn < 0 {
            prod = ctx.neg(&prod);
        }
        acc = ctx.add(&acc, &prod);
    }
    acc
}

/// All permutations of `{0,1,2,3}` with parity.
pub const PERMS4: [([usize; 4], i32); 24] = [
    ([0, 1, 2, 3], 1),
    ([0, 1, 3, 2], -1),
    ([0, 2, 1, 3], -1),
    ([0, 2, 3, 1], 1),
    ([0, 3, 1, 2], 1),
    ([0, 3, 2, 1], -1),
    ([1, 0, 2, 3], -1),
    ([1, 0, 3, 2], 1),
    ([1, 2, 0, 3], 1),
    ([1, 2, 3, 0], -1),
    ([1, 3, 0, 2], -1),
    ([1, 3, 2, 0], 1),
    ([2, 0, 1, 3], 1),
    ([2, 0, 3, 1], -1),
    ([2, 1, 0, 3], -1),
    ([2, 1, 3, 0], 1),
    ([2, 3, 0, 1], 1),
    ([2, 3, 1, 0], -1),
    ([3, 0, 1, 2], -1),
    ([3, 0, 2, 1], 1),
    ([3, 1, 0, 2], 1),
    ([3, 1, 2, 0], -1),
    ([3, 2, 0, 1], -1),
    ([3, 2, 1, 0], 1),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn ctx() -> ExtCtx<Rat> {
        // y_j^2 = j + 1 (arbitrary non-squares for the test)
        ExtCtx {
            squares: [rat(2, 1), rat(3, 1), rat(5, 1), rat(7, 1)],
        }
    }

    #[test]
    fn square_reduces() {
        let c = ctx();
        let y1 = Ext::gen(1);
        let sq = c.mul(&y1, &y1);
        assert!(sq.is_scalar());
        assert_eq!(*sq.rational_part(), rat(2, 1));
    }

    #[test]
    fn inverse_roundtrip() {
        let c = ctx();
        // a = 1 + y1 + y2 y3
        let mut a = Ext::one();
        a = c.add(&a, &Ext::gen(1));
        a = c.add(&a, &c.mul(&Ext::gen(2), &Ext::gen(3)));
        let inv = c.inv(&a).unwrap();
        let prod = c.mul(&a, &inv);
        assert_eq!(prod, Ext::one());
    }
}
