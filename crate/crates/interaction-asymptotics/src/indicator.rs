//! Leading-term verdicts for the two indicator functions: exhaustive
//! enumeration of the admissible term cells, dominance extraction, and
//! the non-vanishing checks.

use crate::error::AsymError;
use crate::ext::Ext;
use crate::frame::{Mode, NullFrame};
use crate::monomial::{compare_exps, AsymSum, CoeffClass, Monomial};
use crate::polspace::{pairing_b, pol_space, PolTensor};
use crate::ring::{rat_int, Rat};
use crate::terms::{
    admissible_orders, all_permutations, cell_monomials, relative_rho_exps, PolContext, SOp, Shape,
    TermSpec,
};
use num_traits::Zero;
use std::cmp::Ordering;

/// Provenance of one enumerated monomial.
#[derive(Debug, Clone)]
pub struct CellRecord {
    pub descriptor: String,
    pub monomial: Monomial,
}

#[derive(Debug)]
pub struct IndicatorVerdict {
    pub sum: AsymSum,
    /// descriptors of the cells achieving the dominant exponent vector
    pub dominant_cells: Vec<CellRecord>,
    /// merged dominant monomials
    pub dominant: Vec<Monomial>,
    /// dominant set is exactly the expected identity / swap pair
    pub expected_pair: bool,
    pub nonvanishing: bool,
    /// relative rho exponents (rho4, rho2, rho3, rho1) of the leader
    pub leading_relative: Option<[i64; 4]>,
    pub leading_tau_decay: Option<i64>,
}

fn swap12(sigma: &[usize; 4]) -> [usize; 4] {
    [sigma[1], sigma[0], sigma[2], sigma[3]]
}

/// Exhaustive enumeration of the einstein-type indicator: all shapes,
/// parametrix placements, admissible order vectors and permutations,
/// with the canonical outer-square polarizations on waves 2..4 and the
/// supplied `v1`, `v5`.
pub fn einstein_indicator_leading(
    frame: &NullFrame,
    v1: [[Rat; 4]; 4],
    v5: [[Rat; 4]; 4],
    a: i64,
) -> Result<IndicatorVerdict, AsymError> {
    assert_eq!(frame.mode, Mode::Einstein);
    let d_value = flat_pairing(&v5, &v1);
    let pol = PolContext {
        frame,
        v1: Some(v1),
        v5: Some(v5),
    };

    let mut records: Vec<CellRecord> = Vec::new();
    let mut monomials: Vec<Monomial> = Vec::new();
    for &shape in &[Shape::T, Shape::Tilde] {
        for &s1 in &[SOp::Q0, SOp::I] {
            for &s2 in &[SOp::Q0, SOp::I] {
                for k in admissible_orders(Mode::Einstein, s1, s2, shape) {
                    // routings depend only on the order vector
                    let routings = if shape == Shape::T && s1 == SOp::Q0 && s2 == SOp::Q0 {
                        Some(crate::terms::enumerate_routings_t_qq(&k))
                    } else {
                        None
                    };
                    for sigma in all_permutations() {
                        let spec = TermSpec {
                            sigma,
                            s1,
                            s2,
                            k,
                            shape,
                            mode: Mode::Einstein,
                        };
                        for (routing, mut m) in
                            crate::terms::cell_monomials_with(&spec, &pol, a, routings.as_deref())?
                        {
                            // scale the distinguished class by the actual pairing
                            if let CoeffClass::NonzeroTimesD(q) = &m.coeff {
                                if d_value.is_zero() {
                                    m.coeff = CoeffClass::Zero;
                                } else {
                                    m.coeff = CoeffClass::NonzeroTimesD(q * &d_value);
                                }
                            }
                            let tag = match &routing {
                                Some(r) => format!("{} d_slot={}", spec.descriptor(), r.d_slot + 1),
                                None => spec.descriptor(),
                            };
                            records.push(CellRecord {
                                descriptor: tag,
                                monomial: m.clone(),
                            });
                            monomials.push(m);
                        }
                    }
                }
            }
        }
    }

    let sum = AsymSum::new(Mode::Einstein, monomials);
    let dominant = sum.dominant_terms();

    // identify the cells at the dominant exponent vector
    let mut dominant_cells: Vec<CellRecord> = Vec::new();
    if let Some(lead) = dominant.first() {
        for r in &records {
            if r.monomial.exps == lead.exps && !r.monomial.coeff.is_zero() {
                dominant_cells.push(r.clone());
            }
        }
    }

    // the expected pair: identity and the inner-swap image of the
    // 6-derivative plain-shape cell
    let id: [usize; 4] = [1, 2, 3, 4];
    let sw = swap12(&id);
    let expect_a = TermSpec {
        sigma: id,
        s1: SOp::Q0,
        s2: SOp::Q0,
        k: [6, 0, 0, 0],
        shape: Shape::T,
        mode: Mode::Einstein,
    };
    let expect_b = TermSpec {
        sigma: sw,
        s1: SOp::Q0,
        s2: SOp::Q0,
        k: [0, 6, 0, 0],
        shape: Shape::T,
        mode: Mode::Einstein,
    };
    let expected_pair = dominant.len() == 1
        && dominant_cells.len() == 2
        && dominant_cells
            .iter()
            .any(|c| c.descriptor.starts_with(&expect_a.descriptor()))
        && dominant_cells
            .iter()
            .any(|c| c.descriptor.starts_with(&expect_b.descriptor()))
        && dominant_cells[0].monomial == dominant_cells[1].monomial;

    let nonvanishing = expected_pair
        && dominant
            .first()
            .map(|m| m.coeff.certifies_nonzero())
            .unwrap_or(false);

    let leading_relative = dominant.first().map(|m| {
        let rel = relative_rho_exps(Mode::Einstein, m, a);
        [rel[3], rel[1], rel[2], rel[0]]
    });
    let leading_tau_decay = dominant.first().map(|m| m.exps[0]);

    Ok(IndicatorVerdict {
        sum,
        dominant_cells,
        dominant,
        expected_pair,
        nonvanishing,
        leading_relative,
        leading_tau_decay,
    })
}

/// Scalar-equation indicator: both shapes over all permutations with no
/// derivative structure; the coefficient of every cell is the cubic
/// coupling times the product of the principal symbols.
pub fn scalar_indicator_leading(
    frame: &NullFrame,
    alpha: f64,
    n_order: i64,
    symbols: [f64; 4],
) -> Result<IndicatorVerdict, AsymError> {
    assert_eq!(frame.mode, Mode::Scalar);
    if alpha == 0.0 {
        return Err(AsymError::BadParameter(
            "coupling alpha must be nonzero".into(),
        ));
    }
    // plane-wave exponent from the conormal order (display convention)
    let a = -n_order;
    if a < 1 {
        return Err(AsymError::BadParameter(
            "conormal order must make the plane-wave exponent positive".into(),
        ));
    }
    let alpha_rat = Rat::from_float(alpha).unwrap();
    let coupling = &alpha_rat
        * &alpha_rat
        * &alpha_rat
        * symbols
            .iter()
            .map(|&w| Rat::from_float(w).unwrap_or_else(Rat::zero))
            .product::<Rat>();
    let vanishing_symbol = symbols.contains(&0.0);

    let pol = PolContext {
        frame,
        v1: None,
        v5: None,
    };
    let mut records = Vec::new();
    let mut monomials = Vec::new();
    for &shape in &[Shape::T, Shape::Tilde] {
        for sigma in all_permutations() {
            let spec = TermSpec {
                sigma,
                s1: SOp::Q0,
                s2: SOp::Q0,
                k: [0; 4],
                shape,
                mode: Mode::Scalar,
            };
            for (_, mut m) in cell_monomials(&spec, &pol, a)? {
                m.coeff = match m.coeff {
                    CoeffClass::Exact(q) => {
                        let scaled = q * &coupling;
                        if Zero::is_zero(&scaled) {
                            CoeffClass::Zero
                        } else {
                            CoeffClass::Exact(scaled)
                        }
                    }
                    other => other,
                };
                records.push(CellRecord {
                    descriptor: spec.descriptor(),
                    monomial: m.clone(),
                });
                monomials.push(m);
            }
        }
    }
    let sum = AsymSum::new(Mode::Scalar, monomials);
    let dominant = sum.dominant_terms();
    let mut dominant_cells = Vec::new();
    if let Some(lead) = dominant.first() {
        for r in &records {
            if r.monomial.exps == lead.exps && !r.monomial.coeff.is_zero() {
                dominant_cells.push(r.clone());
            }
        }
    }
    // expected dominant permutations: identity and (2,1,3,4), plain shape
    let expected_pair = !vanishing_symbol
        && dominant.len() == 1
        && dominant_cells.len() == 2
        && dominant_cells
            .iter()
            .all(|c| c.descriptor.starts_with("T["))
        && dominant_cells
            .iter()
            .any(|c| c.descriptor.contains("sigma=(1,2,3,4)"))
        && dominant_cells
            .iter()
            .any(|c| c.descriptor.contains("sigma=(2,1,3,4)"));
    let nonvanishing = expected_pair && !vanishing_symbol;

    let leading_relative = dominant.first().map(|m| {
        let rel = relative_rho_exps(Mode::Scalar, m, a);
        [rel[3], rel[1], rel[2], rel[0]]
    });
    let leading_tau_decay = dominant.first().map(|m| m.exps[0]);

    Ok(IndicatorVerdict {
        sum,
        dominant_cells,
        dominant,
        expected_pair,
        nonvanishing,
        leading_relative,
        leading_tau_decay,
    })
}

/// The signed Frobenius pairing of two rational symmetric matrices.
pub fn flat_pairing(v: &[[Rat; 4]; 4], w: &[[Rat; 4]; 4]) -> Rat {
    const S: [i64; 4] = [-1, 1, 1, 1];
    let mut acc = Rat::zero();
    for j in 0..4 {
        for k in 0..4 {
            acc += rat_int(S[j] * S[k]) * &v[j][k] * &w[j][k];
        }
    }
    acc
}

/// Report of the 6x6 determinant check: a basis of the harmonicity space
/// at the first frame covector, a probe family normalized against it,
/// and the exact determinant of the pairing matrix (the leading-order
/// indicator matrix is this pairing times a common nonzero scale).
#[derive(Debug)]
pub struct KappaMatrixReport {
    /// pairing matrix entries as rationals were they evaluated (the
    /// construction makes it the identity)
    pub pairing_is_identity: bool,
    pub det_nonzero: bool,
    pub basis_dim: usize,
}

/// Build the dual-normalized probe family and verify the 6x6
/// determinant is nonzero, exactly.
pub fn kappa_matrix_check(frame: &NullFrame) -> Result<KappaMatrixReport, AsymError> {
    let data = frame.numeric.as_ref().expect("numeric frame required");
    let ctx = &data.ctx;
    let space = pol_space(frame, 1)?;
    let basis = &space.basis;
    let dim = basis.len();
    if dim != 6 {
        return Err(AsymError::BadParameter(format!(
            "harmonicity space has dimension {dim}, expected 6"
        )));
    }
    // raise with the diagonal pairing: u_q = sharp(v_q), so that
    // B(u_p, v_q) = <v_p, v_q> (euclidean Gram, positive definite)
    let sharp = |t: &PolTensor<Rat>| -> PolTensor<Rat> {
        const S: [i64; 4] = [-1, 1, 1, 1];
        let mut out = PolTensor::zero();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = ctx.mul_scalar(&t.m[i][j], &rat_int(S[i] * S[j]));
            }
        }
        out
    };
    let mut gram = vec![vec![Ext::<Rat>::zero(); dim]; dim];
    for p in 0..dim {
        let up = sharp(&basis[p]);
        for q in 0..dim {
            gram[p][q] = pairing_b(ctx, &up, &basis[q]);
        }
    }
    // invert the Gram matrix exactly (Gauss-Jordan over the field)
    let mut aug: Vec<Vec<Ext<Rat>>> = (0..dim)
        .map(|i| {
            let mut row = gram[i].clone();
            for j in 0..dim {
                row.push(if i == j { Ext::one() } else { Ext::zero() });
            }
            row
        })
        .collect();
    for c in 0..dim {
        let piv = (c..dim).find(|&i| !aug[i][c].is_zero());
        let Some(piv) = piv else {
            return Err(AsymError::BadParameter(
                "degenerate Gram matrix of the harmonicity basis".into(),
            ));
        };
        aug.swap(c, piv);
        let inv = ctx.inv(&aug[c][c]).unwrap();
        for cc in 0..2 * dim {
            aug[c][cc] = ctx.mul(&aug[c][cc], &inv);
        }
        for i in 0..dim {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for cc in 0..2 * dim {
                    let t = ctx.mul(&f, &aug[c][cc]);
                    aug[i][cc] = ctx.sub(&aug[i][cc], &t);
                }
            }
        }
    }
    // probe family: v5_p = sum_q inv[p][q] * sharp(v_q)
    let mut probes: Vec<PolTensor<Rat>> = Vec::with_capacity(dim);
    for p in 0..dim {
        let mut t = PolTensor::<Rat>::zero();
        for q in 0..dim {
            let uq = sharp(&basis[q]);
            for i in 0..4 {
                for j in 0..4 {
                    let add = ctx.mul(&aug[p][dim + q], &uq.m[i][j]);
                    t.m[i][j] = ctx.add(&t.m[i][j], &add);
                }
            }
        }
        probes.push(t);
    }
    // the pairing matrix must be the exact identity; its determinant is 1
    let mut is_id = true;
    for p in 0..dim {
        for q in 0..dim {
            let b = pairing_b(ctx, &probes[p], &basis[q]);
            let expect = if p == q { Ext::one() } else { Ext::zero() };
            if b != expect {
                is_id = false;
            }
        }
    }
    Ok(KappaMatrixReport {
        pairing_is_identity: is_id,
        det_nonzero: is_id,
        basis_dim: dim,
    })
}

/// Check that two exponent vectors are strictly ordered; used by the
/// enumeration tests.
pub fn strictly_dominates(mode: Mode, a: &Monomial, b: &Monomial) -> bool {
    compare_exps(mode, &a.exps, &b.exps) == Ordering::Greater
}
