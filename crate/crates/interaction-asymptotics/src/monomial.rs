//! Exact monomials in `(tau^-1, rho_4, rho_2, rho_3, rho_1)` and the
//! dominance order that isolates the strongest interaction term.

use crate::frame::Mode;
use crate::ring::{rat_to_f64, Rat};
use std::cmp::Ordering;

/// Coefficient classes.  Generic constants of the closed-form templates
/// are never computed; what matters is whether a coefficient is exactly
/// known, known-nonzero times the distinguished polarization pairing, or
/// merely bounded.  Bounded coefficients are never allowed to win a
/// dominance comparison.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffClass {
    /// exactly this rational (relative to one shared generic constant)
    Exact(Rat),
    /// nonzero rational multiple of the pairing `D = B(v5, v1)`
    NonzeroTimesD(Rat),
    /// bounded as the scales shrink, possibly zero
    O1Bounded,
    Zero,
}

impl CoeffClass {
    pub fn is_zero(&self) -> bool {
        match self {
            CoeffClass::Zero => true,
            CoeffClass::Exact(q) | CoeffClass::NonzeroTimesD(q) => num_traits::Zero::is_zero(q),
            CoeffClass::O1Bounded => false,
        }
    }

    /// May this coefficient certify dominance over another term?
    pub fn certifies_nonzero(&self) -> bool {
        match self {
            CoeffClass::Exact(q) | CoeffClass::NonzeroTimesD(q) => !num_traits::Zero::is_zero(q),
            _ => false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            CoeffClass::Exact(q) => format!("exact({})", q),
            CoeffClass::NonzeroTimesD(q) => format!("nonzero*D({})", q),
            CoeffClass::O1Bounded => "O(1)-bounded".into(),
            CoeffClass::Zero => "zero".into(),
        }
    }
}

/// `coeff * tau^{-exps[0]} * rho4^{exps[1]} rho2^{exps[2]} rho3^{exps[3]}
/// rho1^{exps[4]}`.
///
/// Storage order of the exponents follows the serialization contract
/// `[n_tau, n4, n2, n3, n1]`; comparison priority is mode-dependent.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coeff: CoeffClass,
    pub exps: [i64; 5],
}

impl Monomial {
    pub fn new(coeff: CoeffClass, n_tau: i64, n4: i64, n2: i64, n3: i64, n1: i64) -> Self {
        Monomial {
            coeff,
            exps: [n_tau, n4, n2, n3, n1],
        }
    }

    /// exponents as `[n1, n2, n3, n4]` (covector-indexed)
    pub fn rho_exps(&self) -> [i64; 4] {
        [self.exps[4], self.exps[2], self.exps[3], self.exps[1]]
    }
}

/// Strict comparison of exponent vectors: returns `Greater` when `a`
/// strictly dominates `b` (larger as `tau -> infinity`, `rho -> 0`),
/// comparing the tau decay first and then the rho exponents in the
/// mode's priority order; the smaller exponent wins at every stage.
pub fn compare_exps(mode: Mode, a: &[i64; 5], b: &[i64; 5]) -> Ordering {
    if a[0] != b[0] {
        // smaller tau decay order dominates
        return b[0].cmp(&a[0]);
    }
    // storage beyond tau: [n4, n2, n3, n1]
    for idx in mode.priority() {
        let (x, y) = (a[1 + idx], b[1 + idx]);
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

/// A normalized multiset of monomials: equal exponent vectors merged.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymSum {
    pub mode: Mode,
    pub terms: Vec<Monomial>,
}

impl AsymSum {
    pub fn new(mode: Mode, terms: Vec<Monomial>) -> Self {
        let mut s = AsymSum { mode, terms };
        s.normalize();
        s
    }

    pub fn normalize(&mut self) {
        self.terms.sort_by_key(|a| a.exps);
        let mut merged: Vec<Monomial> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            if let Some(last) = merged.last_mut() {
                if last.exps == t.exps {
                    last.coeff = merge_coeffs(&last.coeff, &t.coeff);
                    continue;
                }
            }
            merged.push(t);
        }
        merged.retain(|m| !m.coeff.is_zero());
        self.terms = merged;
    }

    /// All monomials that no other (nonzero-certified) monomial strictly
    /// dominates.  Bounded coefficients can be dominated but never
    /// declared dominant: if one survives, it is still returned so the
    /// caller's theorem check fails loudly.
    pub fn dominant_terms(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        'outer: for (i, m) in self.terms.iter().enumerate() {
            for (j, other) in self.terms.iter().enumerate() {
                if i == j {
                    continue;
                }
                if other.coeff.certifies_nonzero()
                    && compare_exps(self.mode, &other.exps, &m.exps) == Ordering::Greater
                {
                    continue 'outer;
                }
            }
            out.push(m.clone());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|m| {
                    let mut o = serde_json::Map::new();
                    o.insert("coeff_class".into(), class_tag(&m.coeff).into());
                    if let CoeffClass::Exact(q) | CoeffClass::NonzeroTimesD(q) = &m.coeff {
                        o.insert("coeff_value".into(), rat_to_f64(q).into());
                    }
                    o.insert(
                        "exps".into(),
                        serde_json::Value::Array(m.exps.iter().map(|&e| e.into()).collect()),
                    );
                    serde_json::Value::Object(o)
                })
                .collect(),
        )
    }
}

fn class_tag(c: &CoeffClass) -> &'static str {
    match c {
        CoeffClass::Exact(_) => "exact",
        CoeffClass::NonzeroTimesD(_) => "nonzero-constant*D",
        CoeffClass::O1Bounded => "O(1)-bounded",
        CoeffClass::Zero => "zero",
    }
}

fn merge_coeffs(a: &CoeffClass, b: &CoeffClass) -> CoeffClass {
    use CoeffClass::*;
    match (a, b) {
        (Zero, x) | (x, Zero) => x.clone(),
        (Exact(p), Exact(q)) => Exact(p + q),
        (NonzeroTimesD(p), NonzeroTimesD(q)) => {
            let s = p + q;
            if num_traits::Zero::is_zero(&s) {
                Zero
            } else {
                NonzeroTimesD(s)
            }
        }
        // mixing unlike classes keeps only boundedness
        _ => O1Bounded,
    }
}

/// Plain-text dominance table (one row per monomial).
pub fn dominance_table(sum: &AsymSum) -> String {
    let mut s = String::from("n_tau   n4      n2      n3      n1      coeff\n");
    let dominant = sum.dominant_terms();
    for m in &sum.terms {
        let mark = if dominant.contains(m) {
            " <= dominant"
        } else {
            ""
        };
        s.push_str(&format!(
            "{:<7} {:<7} {:<7} {:<7} {:<7} {}{}\n",
            m.exps[0],
            m.exps[1],
            m.exps[2],
            m.exps[3],
            m.exps[4],
            m.coeff.label(),
            mark
        ));
    }
    s
}
