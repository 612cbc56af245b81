//! Coefficient rings for the exact frame algebra: arbitrary-precision
//! rationals for numeric frames and sparse multivariate polynomials in
//! the four small parameters for hierarchy (symbolic) frames.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

/// Ring operations shared by the rational and polynomial coefficients.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_rat(q: &Rat) -> Self;
}

impl Ring for Rat {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        <BigRational as Zero>::is_zero(self)
    }
    fn from_rat(q: &Rat) -> Self {
        q.clone()
    }
}

/// Sparse polynomial in the four scale parameters `rho_1..rho_4` with
/// rational coefficients.  Exponents stay small (the frame components
/// have degree <= 6), so a BTreeMap keyed by the exponent vector is
/// plenty.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub terms: BTreeMap<[u16; 4], Rat>,
}

impl Poly {
    pub fn constant(q: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !<BigRational as Zero>::is_zero(&q) {
            terms.insert([0; 4], q);
        }
        Poly { terms }
    }

    /// the variable `rho_j` (j in 1..=4)
    pub fn var(j: usize) -> Self {
        let mut e = [0u16; 4];
        e[j - 1] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, <BigRational as One>::one());
        Poly { terms }
    }

    pub fn var_pow(j: usize, p: u16) -> Self {
        let mut e = [0u16; 4];
        e[j - 1] = p;
        let mut terms = BTreeMap::new();
        terms.insert(e, <BigRational as One>::one());
        Poly { terms }
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !<BigRational as Zero>::is_zero(c));
        self
    }

    /// Leading term under a weight on the exponent vector: the term of
    /// minimal total weight is the largest as the parameters shrink.
    pub fn leading(&self, weights: &[i64; 4]) -> Option<([u16; 4], Rat)> {
        self.terms
            .iter()
            .min_by_key(|(e, _)| {
                e.iter()
                    .zip(weights)
                    .map(|(&x, &w)| x as i64 * w)
                    .sum::<i64>()
            })
            .map(|(e, c)| (*e, c.clone()))
    }

    pub fn eval_f64(&self, rho: &[f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = rat_to_f64(c);
                for j in 0..4 {
                    v *= rho[j].powi(e[j] as i32);
                }
                v
            })
            .sum()
    }
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    // good enough for the moderate numerators appearing here
    let n = q.numer();
    let d = q.denom();
    let fn_ = bigint_to_f64(n);
    let fd = bigint_to_f64(d);
    fn_ / fd
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    let s = b.to_string();
    s.parse::<f64>().unwrap_or(if b.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Poly::constant(<BigRational as One>::one())
    }
    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let entry = terms.entry(*e).or_insert_with(<BigRational as Zero>::zero);
            *entry = &*entry + c;
        }
        Poly { terms }.normalized()
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<[u16; 4], Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = [0u16; 4];
                for k in 0..4 {
                    e[k] = ea[k] + eb[k];
                }
                let entry = terms.entry(e).or_insert_with(<BigRational as Zero>::zero);
                *entry = &*entry + ca * cb;
            }
        }
        Poly { terms }.normalized()
    }
    fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rat(q: &Rat) -> Self {
        Poly::constant(q.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_arithmetic() {
        let p = Poly::var(1).add(&Poly::constant(rat_int(2)));
        let q = p.mul(&p);
        // (rho1 + 2)^2 = rho1^2 + 4 rho1 + 4
        assert_eq!(q.terms.len(), 3);
        assert_eq!(q.terms[&[2, 0, 0, 0]], rat_int(1));
        assert_eq!(q.terms[&[1, 0, 0, 0]], rat_int(4));
        assert_eq!(q.terms[&[0, 0, 0, 0]], rat_int(4));
    }

    #[test]
    fn leading_respects_weights() {
        // rho1^3 vs rho2: with einstein weights rho2 is much smaller
        let p = Poly::var_pow(1, 3).add(&Poly::var(2));
        let (e, _) = p.leading(&[1, 10_000, 100, 1_000_000]).unwrap();
        assert_eq!(e, [3, 0, 0, 0]);
    }
}
