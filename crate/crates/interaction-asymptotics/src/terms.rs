//! Interaction term taxonomy: derivative-order tables, the closed-form
//! template exponents, and the polarization routing that turns one
//! `(shape, S-ops, orders, permutation)` cell into exact monomials.
//!
//! Slot conventions.  A term couples the oscillatory probe with four
//! waves placed into slots by a permutation `sigma` (slot j holds wave
//! `sigma(j)`).  In the plain shape the probe pairs with slot 4 under
//! `S2`, slot 3 multiplies outside, and slots 1,2 form the inner `S1`
//! pair; in the tilde shape slots (4,3) and (2,1) form two pairs.  The
//! derivative orders `k_j` are attached to slots, matching the order
//! tables.

use crate::error::AsymError;
use crate::ext::{Ext, ExtCtx};
use crate::frame::{FrameKind, Mode, NullFrame};
use crate::monomial::{AsymSum, CoeffClass, Monomial};
use crate::ring::{rat, rat_int, Rat, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SOp {
    Q0,
    I,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// probe inside the outer pairing
    T,
    /// probe against a product of two pair-composites
    Tilde,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermSpec {
    /// `sigma[j-1]` = wave (1..=4) in slot j
    pub sigma: [usize; 4],
    pub s1: SOp,
    pub s2: SOp,
    /// slot-attached derivative orders
    pub k: [i64; 4],
    pub shape: Shape,
    pub mode: Mode,
}

impl TermSpec {
    pub fn descriptor(&self) -> String {
        format!(
            "{}[sigma=({},{},{},{}), S=({:?},{:?}), k=({},{},{},{})]",
            match self.shape {
                Shape::T => "T",
                Shape::Tilde => "T~",
            },
            self.sigma[0],
            self.sigma[1],
            self.sigma[2],
            self.sigma[3],
            self.s1,
            self.s2,
            self.k[0],
            self.k[1],
            self.k[2],
            self.k[3]
        )
    }

    /// The literal order tables per `(S1, S2)` and shape.
    pub fn admissible(&self) -> bool {
        if self.mode == Mode::Scalar {
            return self.k == [0; 4] && self.s1 == SOp::Q0 && self.s2 == SOp::Q0;
        }
        let k = &self.k;
        if k.iter().any(|&x| x < 0) {
            return false;
        }
        let sum: i64 = k.iter().sum();
        match (self.s1, self.s2, self.shape) {
            (SOp::Q0, SOp::Q0, Shape::T) => sum <= 6 && k[2] + k[3] <= 4 && k[3] <= 2,
            (SOp::Q0, SOp::Q0, Shape::Tilde) => sum <= 6 && k[0] + k[1] <= 4 && k[2] + k[3] <= 4,
            (SOp::I, SOp::Q0, Shape::T) => sum <= 4 && k[3] <= 2,
            (SOp::I, SOp::Q0, Shape::Tilde) => sum <= 4 && k[0] + k[1] <= 2,
            (SOp::Q0, SOp::I, _) => sum <= 4 && k[2] + k[3] <= 2,
            (SOp::I, SOp::I, _) => sum <= 2,
        }
    }

    /// The unified summary table: `K_j = 1` when `S_j` is the parametrix.
    /// The pair-sum bound `k3 + k4 <= 2 K_2 + 2` is read as applying to
    /// both shapes, `k4 <= 2` to the plain shape only, and
    /// `k1 + k2 <= 2 K_1 + 2` to the tilde shape only.
    pub fn admissible_unified(&self) -> bool {
        if self.mode == Mode::Scalar {
            return self.admissible();
        }
        let k = &self.k;
        if k.iter().any(|&x| x < 0) {
            return false;
        }
        let k1c = if self.s1 == SOp::Q0 { 2 } else { 0 };
        let k2c = if self.s2 == SOp::Q0 { 2 } else { 0 };
        let sum: i64 = k.iter().sum();
        if sum > k1c + k2c + 2 {
            return false;
        }
        if k[2] + k[3] > k2c + 2 {
            return false;
        }
        match self.shape {
            Shape::T => k[3] <= 2,
            Shape::Tilde => k[0] + k[1] <= k1c + 2,
        }
    }
}

/// Cross-check of the per-case tables against the unified summary over
/// every order vector up to the maximum.  Returns the disagreeing specs
/// (expected empty under the adopted reading).
pub fn cross_check_tables() -> Vec<TermSpec> {
    let mut bad = Vec::new();
    for &s1 in &[SOp::Q0, SOp::I] {
        for &s2 in &[SOp::Q0, SOp::I] {
            for &shape in &[Shape::T, Shape::Tilde] {
                for k1 in 0..=6_i64 {
                    for k2 in 0..=6_i64 {
                        for k3 in 0..=6_i64 {
                            for k4 in 0..=6_i64 {
                                let spec = TermSpec {
                                    sigma: [1, 2, 3, 4],
                                    s1,
                                    s2,
                                    k: [k1, k2, k3, k4],
                                    shape,
                                    mode: Mode::Einstein,
                                };
                                if spec.admissible() != spec.admissible_unified() {
                                    bad.push(spec);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    bad
}

/// All admissible order vectors for a given `(S1, S2, shape)`.
pub fn admissible_orders(mode: Mode, s1: SOp, s2: SOp, shape: Shape) -> Vec<[i64; 4]> {
    if mode == Mode::Scalar {
        return vec![[0; 4]];
    }
    let mut out = Vec::new();
    for k1 in 0..=6_i64 {
        for k2 in 0..=6_i64 {
            for k3 in 0..=6_i64 {
                for k4 in 0..=6_i64 {
                    let spec = TermSpec {
                        sigma: [1, 2, 3, 4],
                        s1,
                        s2,
                        k: [k1, k2, k3, k4],
                        shape,
                        mode,
                    };
                    if spec.admissible() {
                        out.push([k1, k2, k3, k4]);
                    }
                }
            }
        }
    }
    out
}

pub fn all_permutations() -> Vec<[usize; 4]> {
    crate::ext::PERMS4
        .iter()
        .map(|(p, _)| [p[0] + 1, p[1] + 1, p[2] + 1, p[3] + 1])
        .collect()
}

/// tau decay base per `(S1, S2)`, as displayed by the closed forms:
/// the decay order is `base + 4a - |k|`.
fn tau_base(mode: Mode, s1: SOp, s2: SOp) -> i64 {
    if mode == Mode::Scalar {
        return 8; // decay order 4a + 8 for both shapes
    }
    match (s1, s2) {
        (SOp::Q0, SOp::Q0) => 12,
        (SOp::I, SOp::Q0) | (SOp::Q0, SOp::I) => 10,
        (SOp::I, SOp::I) => 8,
    }
}

/// One multiplicative contribution to a cell monomial: exact wave-indexed
/// exponents, an exact rational leading coefficient, and whether the
/// coefficient is certified (false degrades the class to bounded).
#[derive(Debug, Clone)]
struct Factor {
    exps: [i64; 4],
    coeff: Rat,
    certified: bool,
    zero: bool,
}

impl Factor {
    fn exact(exps: [i64; 4], coeff: Rat) -> Self {
        let zero = num_traits::Zero::is_zero(&coeff);
        Factor {
            exps,
            coeff,
            certified: true,
            zero,
        }
    }
    fn bounded() -> Self {
        Factor {
            exps: [0; 4],
            coeff: Rat::one(),
            certified: false,
            zero: false,
        }
    }
}

/// Template part of a cell: per-wave exponents from the factorized 1-D
/// integrals plus the Gram prefactors of the parametrix applications.
fn template_factors(spec: &TermSpec, frame: &NullFrame, a: i64) -> Vec<Factor> {
    let q1 = if spec.s1 == SOp::Q0 { 1 } else { 0 };
    let q2 = if spec.s2 == SOp::Q0 { 1 } else { 0 };
    // slot exponents of the integrand
    let m = match spec.shape {
        Shape::T => [
            a - spec.k[0] + q1,
            a - spec.k[1] + q1,
            a - spec.k[2],
            a - spec.k[3] + q2,
        ],
        Shape::Tilde => [
            a - spec.k[0] + q1,
            a - spec.k[1] + q1,
            a - spec.k[2] + q2,
            a - spec.k[3] + q2,
        ],
    };
    let mut factors = Vec::new();
    // each 1-D integral contributes rho_w^{-2(m+1)} for the wave in the slot
    for slot in 0..4 {
        let w = spec.sigma[slot];
        let mut e = [0i64; 4];
        e[w - 1] = -2 * (m[slot] + 1);
        factors.push(Factor::exact(e, Rat::one()));
    }
    // Gram prefactors
    let inv_gram_leading = |j: usize, k: usize| -> Factor {
        let exps = frame.omega_leading_exps(j, k);
        let neg: [i64; 4] = std::array::from_fn(|i| -exps[i]);
        // omega ~ -rho_max^2/2, so 1/omega carries coefficient -2
        Factor::exact(neg, rat_int(-2))
    };
    match spec.shape {
        Shape::T => {
            if spec.s2 == SOp::Q0 {
                factors.push(inv_gram_leading(spec.sigma[3], 5));
            }
            if spec.s1 == SOp::Q0 {
                factors.push(inv_gram_leading(spec.sigma[0], spec.sigma[1]));
            }
        }
        Shape::Tilde => {
            if spec.s2 == SOp::Q0 {
                factors.push(inv_gram_leading(spec.sigma[3], spec.sigma[2]));
            }
            if spec.s1 == SOp::Q0 {
                factors.push(inv_gram_leading(spec.sigma[0], spec.sigma[1]));
            }
        }
    }
    factors
}

fn assemble(_mode: Mode, n_tau: i64, factors: &[Factor], d_class: DClass) -> Monomial {
    let mut exps = [0i64; 4]; // wave-indexed
    let mut coeff = Rat::one();
    let mut certified = true;
    let mut zero = false;
    for f in factors {
        for w in 0..4 {
            exps[w] += f.exps[w];
        }
        coeff *= &f.coeff;
        certified &= f.certified;
        zero |= f.zero;
    }
    let class = if zero {
        CoeffClass::Zero
    } else {
        match (certified, d_class) {
            (true, DClass::DistinguishedD) => CoeffClass::NonzeroTimesD(coeff),
            (true, DClass::PlainNonzero) => CoeffClass::Exact(coeff),
            _ => CoeffClass::O1Bounded,
        }
    };
    Monomial::new(class, n_tau, exps[3], exps[1], exps[2], exps[0])
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum DClass {
    /// coefficient multiplies the pairing `B(v5, v1)`
    DistinguishedD,
    /// exactly known without the pairing
    PlainNonzero,
    /// merely bounded
    Bounded,
}

/// One polarization routing of a plain-shape full-parametrix cell: the
/// three bilinear forms each contract one wave's polarization against
/// the covectors of the waves receiving its derivatives, and the free
/// wave pairs with the probe polarization.
#[derive(Debug, Clone)]
pub struct Routing {
    /// (tensor slot, targets as slots; None = generic contraction)
    pub contractions: Vec<(usize, [Option<usize>; 2])>,
    /// slot whose wave carries the free indices (pairs with the probe)
    pub d_slot: usize,
}

/// One bilinear-form step: the first side is a plain wave (or composite)
/// with its spine slot and wave set; likewise the second side.
#[derive(Clone, Copy)]
struct Side {
    spine: usize,
    waves_mask: u8,
}

/// One admissible move of a bilinear form.  A full second-derivative
/// placement is structurally rigid: the principal part of the field
/// equations is the only second-order term, its derivative covectors
/// contract the partner's polarization, and the output indices stay with
/// the differentiated side.  Sub-second-order pieces have generic
/// coefficients: any spine, bounded contraction.
#[derive(Clone)]
struct StepMove {
    /// derivative placements (slot, count), total <= 2
    targets: Vec<(usize, i64)>,
    /// tensor contracted against the placed derivatives (slot), None for
    /// the generic low-order pieces
    tensor: Option<usize>,
    spine_after: usize,
}

fn step_moves(first: Side, second: Side) -> Vec<StepMove> {
    let mut out = Vec::new();
    let waves = |m: u8| (0..4usize).filter(move |&s| m & (1 << s) != 0);
    // forced second-order placements on either side
    for t in waves(second.waves_mask) {
        out.push(StepMove {
            targets: vec![(t, 2)],
            tensor: Some(first.spine),
            spine_after: second.spine,
        });
    }
    for t in waves(first.waves_mask) {
        out.push(StepMove {
            targets: vec![(t, 2)],
            tensor: Some(second.spine),
            spine_after: first.spine,
        });
    }
    // low-order pieces: at most one derivative per side, generic
    let mut singles_first: Vec<Option<usize>> = vec![None];
    singles_first.extend(waves(first.waves_mask).map(Some));
    let mut singles_second: Vec<Option<usize>> = vec![None];
    singles_second.extend(waves(second.waves_mask).map(Some));
    for f in &singles_first {
        for s in &singles_second {
            for spine_after in [first.spine, second.spine] {
                let mut targets = Vec::new();
                if let Some(t) = f {
                    targets.push((*t, 1));
                }
                if let Some(t) = s {
                    targets.push((*t, 1));
                }
                out.push(StepMove {
                    targets,
                    tensor: None,
                    spine_after,
                });
            }
        }
    }
    out
}

/// Enumerate the derivative/contraction routings of a plain-shape
/// `(Q0, Q0)` cell consistent with its slot orders.
pub fn enumerate_routings_t_qq(k: &[i64; 4]) -> Vec<Routing> {
    let mut out = Vec::new();
    let pair_step = |spine: usize, mask: u8| Side {
        spine,
        waves_mask: mask,
    };
    // step 3: inner pair, args (slot2 | slot1)
    for m3 in step_moves(pair_step(1, 0b0010), pair_step(0, 0b0001)) {
        // step 2: middle wave against the inner composite
        let comp3 = Side {
            spine: m3.spine_after,
            waves_mask: 0b0011,
        };
        for m2 in step_moves(pair_step(2, 0b0100), comp3) {
            let comp2 = Side {
                spine: m2.spine_after,
                waves_mask: 0b0111,
            };
            // step 1: outer wave against the full composite
            for m1 in step_moves(pair_step(3, 0b1000), comp2) {
                let mut consumed = [0i64; 4];
                for mv in [&m3, &m2, &m1] {
                    for &(slot, c) in &mv.targets {
                        consumed[slot] += c;
                    }
                }
                if consumed != *k {
                    continue;
                }
                let to_contraction = |mv: &StepMove| -> (usize, [Option<usize>; 2]) {
                    match mv.tensor {
                        Some(tensor) => {
                            let t = mv.targets[0].0;
                            (tensor, [Some(t), Some(t)])
                        }
                        None => (mv.spine_after, [None, None]),
                    }
                };
                out.push(Routing {
                    contractions: vec![
                        to_contraction(&m3),
                        to_contraction(&m2),
                        to_contraction(&m1),
                    ],
                    d_slot: m1.spine_after,
                });
            }
        }
    }
    // de-duplicate routings that differ only in unobservable low-order
    // spine bookkeeping
    out.sort_by_key(|r| {
        (
            r.d_slot,
            r.contractions
                .iter()
                .map(|(t, tg)| (*t, tg[0], tg[1]))
                .collect::<Vec<_>>(),
        )
    });
    out.dedup_by(|a, b| {
        a.d_slot == b.d_slot
            && a.contractions
                .iter()
                .zip(&b.contractions)
                .all(|(x, y)| x == y)
    });
    out
}

/// Exact polarization data used while routing: canonical outer-square
/// tensors for waves 2..4, optional explicit tensors for waves 1 and 5.
pub struct PolContext<'a> {
    pub frame: &'a NullFrame,
    /// explicit `v1` (symmetric, rational entries); `None` = generic
    pub v1: Option<[[Rat; 4]; 4]>,
    /// explicit `v5`
    pub v5: Option<[[Rat; 4]; 4]>,
}

impl<'a> PolContext<'a> {
    fn generic(frame: &'a NullFrame) -> Self {
        PolContext {
            frame,
            v1: None,
            v5: None,
        }
    }

    /// Leading factor of the contraction `(v_X . b^{Y1} b^{Y2})` with the
    /// canonical polarizations, as exact exponents + coefficient, or a
    /// bounded factor when a generic slot is involved.
    fn contraction_factor(
        &self,
        wave_x: usize,
        targets: &[Option<usize>; 2],
        sigma: &[usize; 4],
    ) -> Factor {
        let t: Vec<Option<usize>> = targets.iter().map(|o| o.map(|slot| sigma[slot])).collect();
        match wave_x {
            2..=4 => {
                // (b_X (x) b_X) contracted = product of Gram pairings
                let mut exps = [0i64; 4];
                let mut coeff = Rat::one();
                let mut certified = true;
                for target in &t {
                    match target {
                        Some(y) => {
                            if *y == wave_x {
                                // own covector: exactly zero by nullity
                                return Factor {
                                    exps: [0; 4],
                                    coeff: Rat::zero(),
                                    certified: true,
                                    zero: true,
                                };
                            }
                            let e = self.frame.omega_leading_exps(wave_x, *y);
                            for i in 0..4 {
                                exps[i] += e[i];
                            }
                            coeff *= rat(-1, 2);
                        }
                        None => certified = false,
                    }
                }
                Factor {
                    exps,
                    coeff,
                    certified,
                    zero: false,
                }
            }
            1 => {
                // explicit v1 if available: exact symbolic contraction
                if let (Some(v1), Some(y1), Some(y2)) = (&self.v1, t[0], t[1]) {
                    exact_tensor_contraction(self.frame, v1, y1, y2)
                } else {
                    Factor::bounded()
                }
            }
            _ => Factor::bounded(),
        }
    }

    /// Class of the probe pairing for the given free wave.
    fn d_class(&self, d_wave: usize) -> (DClass, Option<Rat>) {
        if d_wave == 1 {
            (DClass::DistinguishedD, None)
        } else {
            (DClass::Bounded, None)
        }
    }
}

/// `sum s_n s_m v_{nm} b^{Y1}_n b^{Y2}_m` with symbolic frame covectors:
/// leading exponents and coefficient under the frame's hierarchy.
fn exact_tensor_contraction(frame: &NullFrame, v: &[[Rat; 4]; 4], y1: usize, y2: usize) -> Factor {
    match &frame.kind {
        FrameKind::Hierarchy => {
            let data = frame.symbolic.as_ref().unwrap();
            let val = contraction_value(&data.ctx, v, &data.b[y1 - 1], &data.b[y2 - 1]);
            match frame.leading_of(&val) {
                Some((exps, coeff)) => Factor::exact(exps_to_wave(exps), coeff),
                None => Factor {
                    exps: [0; 4],
                    coeff: Rat::zero(),
                    certified: true,
                    zero: true,
                },
            }
        }
        FrameKind::Numeric { .. } => {
            let data = frame.numeric.as_ref().unwrap();
            let val = contraction_value(&data.ctx, v, &data.b[y1 - 1], &data.b[y2 - 1]);
            if val.is_zero() {
                Factor {
                    exps: [0; 4],
                    coeff: Rat::zero(),
                    certified: true,
                    zero: true,
                }
            } else {
                // numeric frames carry no scale separation: exponent-free
                Factor::exact([0; 4], Rat::one())
            }
        }
    }
}

fn exps_to_wave(e: [i64; 4]) -> [i64; 4] {
    e // already wave-indexed: [rho1, rho2, rho3, rho4]
}

fn contraction_value<R: Ring>(
    ctx: &ExtCtx<R>,
    v: &[[Rat; 4]; 4],
    b1: &[Ext<R>; 4],
    b2: &[Ext<R>; 4],
) -> Ext<R> {
    const S: [i64; 4] = [-1, 1, 1, 1];
    let mut acc = Ext::zero();
    for n in 0..4 {
        for m in 0..4 {
            if num_traits::Zero::is_zero(&v[n][m]) {
                continue;
            }
            let sgn = rat_int(S[n] * S[m]);
            let scale = R::from_rat(&(&v[n][m] * &sgn));
            let term = ctx.mul_scalar(&ctx.mul(&b1[n], &b2[m]), &scale);
            acc = ctx.add(&acc, &term);
        }
    }
    acc
}

/// The template monomial of a cell: displayed closed-form exponents with
/// the polarization factor left as a bounded coefficient.
pub fn template_monomial(
    spec: &TermSpec,
    frame: &NullFrame,
    a: i64,
) -> Result<Monomial, AsymError> {
    if !spec.admissible() {
        return Err(AsymError::ConstraintViolation(spec.descriptor()));
    }
    let n_tau = tau_base(spec.mode, spec.s1, spec.s2) + 4 * a - spec.k.iter().sum::<i64>();
    let factors = template_factors(spec, frame, a);
    Ok(assemble(spec.mode, n_tau, &factors, DClass::Bounded))
}

/// All monomials contributed by one cell: template times each
/// polarization routing (plain-shape full-parametrix cells), or the
/// bounded envelope (all other cells, where the templates already decide
/// dominance and the polarization can only suppress further).
pub fn cell_monomials(
    spec: &TermSpec,
    pol: &PolContext,
    a: i64,
) -> Result<Vec<(Option<Routing>, Monomial)>, AsymError> {
    cell_monomials_with(spec, pol, a, None)
}

/// As `cell_monomials`, reusing precomputed routings for the cell's
/// order vector (they do not depend on the permutation).
pub fn cell_monomials_with(
    spec: &TermSpec,
    pol: &PolContext,
    a: i64,
    routings: Option<&[Routing]>,
) -> Result<Vec<(Option<Routing>, Monomial)>, AsymError> {
    if !spec.admissible() {
        return Err(AsymError::ConstraintViolation(spec.descriptor()));
    }
    let frame = pol.frame;
    let n_tau = tau_base(spec.mode, spec.s1, spec.s2) + 4 * a - spec.k.iter().sum::<i64>();
    let template = template_factors(spec, frame, a);

    if spec.mode == Mode::Scalar {
        // no derivative structure: the coefficient is alpha^3 times the
        // product of the principal symbols, handled by the caller
        let m = assemble(spec.mode, n_tau, &template, DClass::PlainNonzero);
        return Ok(vec![(None, m)]);
    }

    if !(spec.shape == Shape::T && spec.s1 == SOp::Q0 && spec.s2 == SOp::Q0) {
        let m = assemble(spec.mode, n_tau, &template, DClass::Bounded);
        return Ok(vec![(None, m)]);
    }

    let owned;
    let routing_list: &[Routing] = match routings {
        Some(r) => r,
        None => {
            owned = enumerate_routings_t_qq(&spec.k);
            &owned
        }
    };
    let mut out = Vec::new();
    for routing in routing_list.iter().cloned() {
        let mut factors = template.clone();
        let mut dead = false;
        for (tensor_slot, targets) in &routing.contractions {
            let f = pol.contraction_factor(spec.sigma[*tensor_slot], targets, &spec.sigma);
            if f.zero {
                dead = true;
                break;
            }
            factors.push(f);
        }
        if dead {
            continue;
        }
        let d_wave = spec.sigma[routing.d_slot];
        let (dc, _) = pol.d_class(d_wave);
        out.push((Some(routing), assemble(spec.mode, n_tau, &factors, dc)));
    }
    if out.is_empty() {
        // no realizable routing: keep the bounded envelope so nothing is
        // silently dropped
        out.push((None, assemble(spec.mode, n_tau, &template, DClass::Bounded)));
    }
    Ok(out)
}

/// The leading asymptotics of one term cell with the canonical
/// polarizations (outer squares on waves 2..4, generic elsewhere).
pub fn term_asymptotics(spec: &TermSpec, frame: &NullFrame, a: i64) -> Result<AsymSum, AsymError> {
    let pol = PolContext::generic(frame);
    let cells = cell_monomials(spec, &pol, a)?;
    Ok(AsymSum::new(
        spec.mode,
        cells.into_iter().map(|(_, m)| m).collect(),
    ))
}

/// Relative exponent vector against the common baseline: einstein terms
/// share `rho_j^{-2(a+1)}` per wave, scalar terms `rho_j^{-2a}`.
pub fn relative_rho_exps(mode: Mode, m: &Monomial, a: i64) -> [i64; 4] {
    let base = match mode {
        Mode::Einstein => -2 * (a + 1),
        Mode::Scalar => -2 * a,
    };
    let r = m.rho_exps();
    std::array::from_fn(|i| r[i] - base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::build_frame_hierarchy;

    fn hier() -> NullFrame {
        build_frame_hierarchy(Mode::Einstein)
    }

    #[test]
    fn tables_cross_check_agrees() {
        let bad = cross_check_tables();
        assert!(
            bad.is_empty(),
            "per-case tables disagree with the unified summary: {:?}",
            bad.iter().map(|s| s.descriptor()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn template_exponents_of_the_general_plain_cell() {
        // denominators 2(a-k4+3), 2(a-k3+1), 2(a-k2+2), 2(a-k1+3) on
        // rho4, rho3, rho2, rho1; tau decay 12 + 4a - |k|
        let f = hier();
        let a = 7;
        let k = [2, 1, 3, 0];
        let spec = TermSpec {
            sigma: [1, 2, 3, 4],
            s1: SOp::Q0,
            s2: SOp::Q0,
            k,
            shape: Shape::T,
            mode: Mode::Einstein,
        };
        let m = template_monomial(&spec, &f, a).unwrap();
        assert_eq!(m.exps[0], 12 + 4 * a - 6);
        let r = m.rho_exps(); // [n1, n2, n3, n4]
        assert_eq!(r[3], -2 * (a - k[3] + 3));
        assert_eq!(r[2], -2 * (a - k[2] + 1));
        assert_eq!(r[1], -2 * (a - k[1] + 2));
        assert_eq!(r[0], -2 * (a - k[0] + 3));
    }

    #[test]
    fn beta1_routing_is_unique_and_distinguished() {
        let f = hier();
        let a = 8;
        let spec = TermSpec {
            sigma: [1, 2, 3, 4],
            s1: SOp::Q0,
            s2: SOp::Q0,
            k: [6, 0, 0, 0],
            shape: Shape::T,
            mode: Mode::Einstein,
        };
        let pol = PolContext::generic(&f);
        let cells = cell_monomials(&spec, &pol, a).unwrap();
        let routed: Vec<_> = cells.iter().filter(|(r, _)| r.is_some()).collect();
        assert_eq!(
            routed.len(),
            1,
            "the 6-derivative cell has a forced routing"
        );
        let m = &routed[0].1;
        assert!(matches!(m.coeff, CoeffClass::NonzeroTimesD(_)));
        // relative exponents (rho4, rho2, rho3, rho1) = (-4, -2, 0, 20)
        let rel = relative_rho_exps(Mode::Einstein, m, a);
        assert_eq!([rel[3], rel[1], rel[2], rel[0]], [-4, -2, 0, 20]);
        assert_eq!(m.exps[0], 6 + 4 * a);
    }

    #[test]
    fn permuted_cell_with_forced_suppression() {
        // the slot-1/slot-3 swapped cell with orders (2,0,4,0): its only
        // realizable routing contracts the slot-2 polarization against
        // the slot-1 wave and the remaining two against the slot-3 wave,
        // adding rho3^4 rho1^8 to the template and losing the dominance
        // comparison at the rho3 stage
        let f = hier();
        let a = 8;
        let spec = TermSpec {
            sigma: [3, 2, 1, 4],
            s1: SOp::Q0,
            s2: SOp::Q0,
            k: [2, 0, 4, 0],
            shape: Shape::T,
            mode: Mode::Einstein,
        };
        let pol = PolContext::generic(&f);
        let cells = cell_monomials(&spec, &pol, a).unwrap();
        let routed: Vec<_> = cells.iter().filter(|(r, _)| r.is_some()).collect();
        assert_eq!(routed.len(), 1, "forced routing expected");
        let m = &routed[0].1;
        assert!(matches!(m.coeff, CoeffClass::NonzeroTimesD(_)));
        assert_eq!(m.exps[0], 6 + 4 * a);
        let r = m.rho_exps(); // [n1, n2, n3, n4]
        assert_eq!(r[3], -2 * a - 6);
        assert_eq!(r[1], -2 * a - 4);
        assert_eq!(r[2], -2 * a + 2, "rho3 suppression from the swap");
        assert_eq!(r[0], -2 * a + 14);
    }

    #[test]
    fn scalar_template_relative_exponents() {
        let f = build_frame_hierarchy(Mode::Scalar);
        let a = 5;
        let spec = TermSpec {
            sigma: [1, 2, 3, 4],
            s1: SOp::Q0,
            s2: SOp::Q0,
            k: [0; 4],
            shape: Shape::T,
            mode: Mode::Scalar,
        };
        let m = template_monomial(&spec, &f, a).unwrap();
        let rel = relative_rho_exps(Mode::Scalar, &m, a);
        // (rho4, rho2, rho3, rho1) = (-6, -4, -2, -6)
        assert_eq!([rel[3], rel[1], rel[2], rel[0]], [-6, -4, -2, -6]);
        assert_eq!(m.exps[0], 4 * a + 8);

        let tilde = TermSpec {
            shape: Shape::Tilde,
            ..spec
        };
        let mt = template_monomial(&tilde, &f, a).unwrap();
        let relt = relative_rho_exps(Mode::Scalar, &mt, a);
        assert_eq!([relt[3], relt[1], relt[2], relt[0]], [-4, -4, -6, -6]);
    }

    #[test]
    fn constraint_violation_is_an_error() {
        let f = hier();
        let spec = TermSpec {
            sigma: [1, 2, 3, 4],
            s1: SOp::Q0,
            s2: SOp::Q0,
            k: [0, 0, 6, 0], // k3 + k4 > 4
            shape: Shape::T,
            mode: Mode::Einstein,
        };
        assert!(term_asymptotics(&spec, &f, 8).is_err());
    }
}
