//! Formal plane-wave products and the formal parametrix `Q0`.
//!
//! Expressions are products `c * prod_j (b^(j).x)_+^{a_j}` optionally
//! times the oscillatory factor `exp(i tau b^(5).x)`.  Coefficients track
//! an exact rational, a power of `i`, a power of `tau`, and symbolic
//! Gram factors `omega_{jk}^e`, so that applying the d'Alembertian after
//! `Q0` recovers the input with literal equality.

use crate::error::AsymError;
use crate::frame::NullFrame;
use crate::ring::{rat_int, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct PwCoeff {
    pub rat: Rat,
    /// power of the imaginary unit, folded mod 4
    pub i_pow: u8,
    pub tau_pow: i64,
    /// symbolic Gram factors `omega_{jk}^e` with `j < k`, 1-based, 5 = osc
    pub omega: BTreeMap<(u8, u8), i64>,
}

impl PwCoeff {
    pub fn one() -> Self {
        PwCoeff {
            rat: Rat::one(),
            i_pow: 0,
            tau_pow: 0,
            omega: BTreeMap::new(),
        }
    }

    fn mul_rat(&mut self, q: &Rat) {
        self.rat = &self.rat * q;
    }

    fn div_rat(&mut self, q: &Rat) {
        self.rat = &self.rat / q;
    }

    fn mul_i(&mut self, n: u8) {
        let total = (self.i_pow + n) % 4;
        // fold i^2 = -1 into the rational sign
        if self.i_pow + n >= 4 {
            // wrapped a full i^4 = 1: nothing
        }
        let wraps = (self.i_pow as i32 + n as i32) / 2 - self.i_pow as i32 / 2;
        let _ = wraps;
        self.i_pow = total;
        // normalize: keep i_pow in {0,1}, fold pairs into sign
        while self.i_pow >= 2 {
            self.i_pow -= 2;
            self.rat = -&self.rat;
        }
    }

    fn push_omega(&mut self, j: u8, k: u8, e: i64) {
        let key = if j < k { (j, k) } else { (k, j) };
        let entry = self.omega.entry(key).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.omega.remove(&key);
        }
    }

    fn normalized(mut self) -> Self {
        while self.i_pow >= 2 {
            self.i_pow -= 2;
            self.rat = -&self.rat;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveExpr {
    pub coeff: PwCoeff,
    /// exponents of `(b^(j).x)_+`, j = 1..4
    pub exps: [i64; 4],
    pub oscillatory: bool,
}

impl PlaneWaveExpr {
    pub fn product(exps: [i64; 4], oscillatory: bool) -> Self {
        PlaneWaveExpr {
            coeff: PwCoeff::one(),
            exps,
            oscillatory,
        }
    }

    fn active_factors(&self) -> Vec<usize> {
        (0..4).filter(|&j| self.exps[j] != 0).collect()
    }
}

/// Apply the formal parametrix to a product of exactly two active
/// factors.  Plane-plane pair: both exponents rise by one and the
/// coefficient picks up `1 / (2 (a1+1)(a2+1) omega_{jk})`; the
/// oscillatory pair instead picks up `1 / (2 i (a+1) omega_{j5} tau)`.
pub fn q0_apply(e: &PlaneWaveExpr, frame: &NullFrame) -> Result<PlaneWaveExpr, AsymError> {
    let act = e.active_factors();
    let mut out = e.clone();
    match (act.len(), e.oscillatory) {
        (2, false) => {
            let (j, k) = (act[0], act[1]);
            if frame
                .numeric
                .as_ref()
                .map(|d| d.gram[j][k].is_zero())
                .unwrap_or(false)
            {
                return Err(AsymError::SingularPair(j + 1, k + 1));
            }
            let (a1, a2) = (e.exps[j], e.exps[k]);
            out.exps[j] += 1;
            out.exps[k] += 1;
            out.coeff
                .div_rat(&(rat_int(2) * rat_int(a1 + 1) * rat_int(a2 + 1)));
            out.coeff.push_omega(j as u8 + 1, k as u8 + 1, -1);
            Ok(out)
        }
        (1, true) => {
            let j = act[0];
            if frame
                .numeric
                .as_ref()
                .map(|d| d.gram[j][4].is_zero())
                .unwrap_or(false)
            {
                return Err(AsymError::SingularPair(j + 1, 5));
            }
            let a = e.exps[j];
            out.exps[j] += 1;
            out.coeff.div_rat(&(rat_int(2) * rat_int(a + 1)));
            // dividing by i multiplies by -i = i^3
            out.coeff.mul_i(3);
            out.coeff.push_omega(j as u8 + 1, 5, -1);
            out.coeff.tau_pow -= 1;
            out.coeff = out.coeff.clone().normalized();
            Ok(out)
        }
        _ => Err(AsymError::NotAPair),
    }
}

/// Symbolic d'Alembertian of a plane-wave product: by the exact nullity
/// of the frame covectors only the cross terms survive,
/// `square(f g) = 2 g(grad f, grad g)` summed over factor pairs (plus
/// the oscillatory cross terms).
pub fn box_apply(e: &PlaneWaveExpr, _frame: &NullFrame) -> Vec<PlaneWaveExpr> {
    let mut out: Vec<PlaneWaveExpr> = Vec::new();
    let act = e.active_factors();
    for (idx, &j) in act.iter().enumerate() {
        for &k in act.iter().skip(idx + 1) {
            let (aj, ak) = (e.exps[j], e.exps[k]);
            if aj == 0 || ak == 0 {
                continue;
            }
            let mut t = e.clone();
            t.exps[j] -= 1;
            t.exps[k] -= 1;
            t.coeff.mul_rat(&(rat_int(2) * rat_int(aj) * rat_int(ak)));
            t.coeff.push_omega(j as u8 + 1, k as u8 + 1, 1);
            out.push(t);
        }
        if e.oscillatory {
            let aj = e.exps[j];
            if aj != 0 {
                let mut t = e.clone();
                t.exps[j] -= 1;
                t.coeff.mul_rat(&(rat_int(2) * rat_int(aj)));
                t.coeff.mul_i(1);
                t.coeff.tau_pow += 1;
                t.coeff.push_omega(j as u8 + 1, 5, 1);
                t.coeff = t.coeff.clone().normalized();
                out.push(t);
            }
        }
    }
    // merge identical shapes
    let mut merged: Vec<PlaneWaveExpr> = Vec::new();
    for t in out {
        if let Some(m) = merged.iter_mut().find(|m| {
            m.exps == t.exps
                && m.oscillatory == t.oscillatory
                && m.coeff.omega == t.coeff.omega
                && m.coeff.i_pow == t.coeff.i_pow
                && m.coeff.tau_pow == t.coeff.tau_pow
        }) {
            m.coeff.rat = &m.coeff.rat + &t.coeff.rat;
        } else {
            merged.push(t);
        }
    }
    merged.retain(|m| !m.coeff.rat.is_zero());
    merged
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{build_frame_numeric, Mode};
    use crate::ring::rat;

    fn frame() -> NullFrame {
        build_frame_numeric(
            Mode::Einstein,
            [rat(1, 10), rat(1, 14), rat(1, 12), rat(1, 16)],
        )
        .unwrap()
    }

    #[test]
    fn q0_pair_coefficient() {
        // Q0[(b1.x)_+^1 (b2.x)_+^1] = (b1.x)_+^2 (b2.x)_+^2 / (8 w12)
        let f = frame();
        let e = PlaneWaveExpr::product([1, 1, 0, 0], false);
        let r = q0_apply(&e, &f).unwrap();
        assert_eq!(r.exps, [2, 2, 0, 0]);
        assert_eq!(r.coeff.rat, rat(1, 8));
        assert_eq!(r.coeff.omega.get(&(1, 2)), Some(&-1));
    }

    #[test]
    fn q0_oscillatory_coefficient() {
        // Q0[(b4.x)_+^a e^{i tau b5.x}]: coefficient 1/(2 i (a+1) w45 tau)
        let f = frame();
        let a = 3;
        let e = PlaneWaveExpr::product([0, 0, 0, a], true);
        let r = q0_apply(&e, &f).unwrap();
        assert_eq!(r.exps, [0, 0, 0, a + 1]);
        assert_eq!(r.coeff.tau_pow, -1);
        assert_eq!(r.coeff.omega.get(&(4, 5)), Some(&-1));
        // 1/(2i(a+1)) = -i/(2(a+1)): i_pow 1, rational -1/8
        assert_eq!(r.coeff.i_pow, 1);
        assert_eq!(r.coeff.rat, rat(-1, 2 * (a + 1)));
    }

    #[test]
    fn box_after_q0_is_identity() {
        let f = frame();
        for a1 in 1..=4 {
            for a2 in 1..=4 {
                let e = PlaneWaveExpr::product([a1, 0, a2, 0], false);
                let q = q0_apply(&e, &f).unwrap();
                let back = box_apply(&q, &f);
                assert_eq!(back.len(), 1, "single term expected");
                assert_eq!(back[0], e, "box(Q0 e) must equal e exactly");
            }
        }
    }

    #[test]
    fn box_after_q0_oscillatory_is_identity() {
        let f = frame();
        let e = PlaneWaveExpr::product([0, 0, 0, 2], true);
        let q = q0_apply(&e, &f).unwrap();
        let back = box_apply(&q, &f);
        assert_eq!(back.len(), 1);
        assert_eq!(back[0], e);
    }

    #[test]
    fn three_active_factors_is_an_error() {
        let f = frame();
        let e = PlaneWaveExpr::product([1, 1, 1, 0], false);
        assert!(matches!(q0_apply(&e, &f), Err(AsymError::NotAPair)));
    }
}
