//! Numeric oracle for the factorized oscillatory integrals.
//!
//! In the adapted coordinates the leading term of a plain-shape cell is a
//! product of four half-line integrals `int_0^inf y^m e^{i tau p y}
//! chi(y) dy`.  Each is evaluated by adaptive complex quadrature under a
//! wide Gaussian window and compared against the endpoint closed form
//! `m! (-i tau p)^{-(m+1)}`; the window-induced relative error scales
//! like `(m+1)(m+2) / (W^2 (tau p)^2)`.

use crate::error::AsymError;
use crate::frame::NullFrame;
use crate::ring::rat_to_f64;
use num_complex::Complex64;

/// Adaptive Simpson quadrature for complex integrands.
fn simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Complex64 {
    let c = 0.5 * (a + b);
    (f(a) + f(c) * 4.0 + f(b)) * ((b - a) / 6.0)
}

fn adaptive<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    whole: Complex64,
    depth: u32,
) -> Result<Complex64, AsymError> {
    let c = 0.5 * (a + b);
    let left = simpson(f, a, c);
    let right = simpson(f, c, b);
    let err = (left + right - whole).norm();
    if err <= 15.0 * tol || (b - a) < 1e-13 {
        if err > 15.0 * tol {
            return Err(AsymError::QuadratureTolerance {
                achieved: err,
                requested: tol,
            });
        }
        return Ok(left + right + (left + right - whole) / 15.0);
    }
    if depth == 0 {
        return Err(AsymError::QuadratureTolerance {
            achieved: err,
            requested: tol,
        });
    }
    Ok(adaptive(f, a, c, tol / 2.0, left, depth - 1)?
        + adaptive(f, c, b, tol / 2.0, right, depth - 1)?)
}

/// `int_0^infty y^m e^{i tau p y} e^{-y^2/W^2} dy` by panel-wise adaptive
/// quadrature (panels no wider than a fraction of the oscillation
/// period).
pub fn oscillatory_kernel_1d(
    m: u32,
    tau_p: f64,
    window: f64,
    tol: f64,
) -> Result<Complex64, AsymError> {
    if tau_p == 0.0 {
        return Err(AsymError::ZeroFrequency(0));
    }
    let f = move |y: f64| -> Complex64 {
        let phase = Complex64::new(0.0, tau_p * y).exp();
        let damp = (-y * y / (window * window)).exp();
        Complex64::new(y.powi(m as i32) * damp, 0.0) * phase
    };
    let upper = 6.0 * window;
    let period = 2.0 * std::f64::consts::PI / tau_p.abs();
    let panel = (period / 4.0).min(upper / 64.0);
    let n_panels = (upper / panel).ceil() as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut a = 0.0;
    for i in 0..n_panels {
        let b = (upper * (i + 1) as f64 / n_panels as f64).min(upper);
        let whole = simpson(&f, a, b);
        acc += adaptive(&f, a, b, tol / n_panels as f64, whole, 40)?;
        a = b;
    }
    Ok(acc)
}

/// Endpoint closed form of the un-windowed integral.
pub fn kernel_closed_form(m: u32, tau_p: f64) -> Complex64 {
    let mut fact = 1.0;
    for i in 2..=m as u64 {
        fact *= i as f64;
    }
    // (-i tau p)^{-(m+1)}
    let base = Complex64::new(0.0, -tau_p);
    Complex64::new(fact, 0.0) * base.powi(-(m as i32 + 1))
}

pub struct OscillatoryReport {
    pub numeric: Complex64,
    pub closed_form: Complex64,
    pub ratio: Complex64,
    pub rel_error: f64,
}

/// Compare quadrature and closed form for one half-line kernel at
/// `tau * |p|` given directly.
pub fn kernel_report(m: u32, tau_p: f64, window: f64) -> Result<OscillatoryReport, AsymError> {
    let numeric = oscillatory_kernel_1d(m, tau_p, window, 1e-12)?;
    let closed_form = kernel_closed_form(m, tau_p);
    let ratio = numeric / closed_form;
    Ok(OscillatoryReport {
        numeric,
        closed_form,
        ratio,
        rel_error: (ratio - Complex64::new(1.0, 0.0)).norm(),
    })
}

/// The full factorized product for a numeric frame: exponents
/// `m_j = a_j - k_j + shift` are supplied per wave, frequencies are
/// `p_j = -rho_j^2/2` from the exact Gram entries.
pub fn numeric_t_integral(
    frame: &NullFrame,
    m_by_wave: [u32; 4],
    tau: f64,
) -> Result<OscillatoryReport, AsymError> {
    let data = frame
        .numeric
        .as_ref()
        .expect("the quadrature oracle needs a numeric frame");
    let mut p = [0.0; 4];
    for j in 0..4 {
        let w = &data.gram[j][4];
        assert!(w.is_scalar());
        p[j] = rat_to_f64(w.rational_part());
        if p[j] == 0.0 {
            return Err(AsymError::ZeroFrequency(j + 1));
        }
    }
    let tp_min = p
        .iter()
        .map(|x| (tau * x).abs())
        .fold(f64::INFINITY, f64::min);
    let window = 10.0 / tp_min.sqrt();
    let mut numeric = Complex64::new(1.0, 0.0);
    let mut closed = Complex64::new(1.0, 0.0);
    for j in 0..4 {
        numeric *= oscillatory_kernel_1d(m_by_wave[j], tau * p[j], window, 1e-12)?;
        closed *= kernel_closed_form(m_by_wave[j], tau * p[j]);
    }
    let ratio = numeric / closed;
    Ok(OscillatoryReport {
        numeric,
        closed_form: closed,
        ratio,
        rel_error: (ratio - Complex64::new(1.0, 0.0)).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_kernel_matches_stationary_phase() {
        // int_0^inf y^2 e^{i tau p y} chi dy vs 2 (-i tau p)^-3 at
        // tau |p| = 100: within 2%
        let tau_p: f64 = 100.0;
        let window = 10.0 / tau_p.sqrt();
        let rep = kernel_report(2, tau_p, window).unwrap();
        assert!(rep.rel_error < 0.02, "rel error {}", rep.rel_error);
    }

    #[test]
    fn kernels_up_to_cubic_within_two_percent() {
        for m in 0..=4u32 {
            let tau_p: f64 = 120.0;
            let window = 10.0 / tau_p.sqrt();
            let rep = kernel_report(m, tau_p, window).unwrap();
            assert!(rep.rel_error < 0.02, "m = {m}: rel error {}", rep.rel_error);
        }
    }

    #[test]
    fn zero_frequency_is_an_error() {
        assert!(matches!(
            oscillatory_kernel_1d(2, 0.0, 1.0, 1e-10),
            Err(AsymError::ZeroFrequency(_))
        ));
    }
}
