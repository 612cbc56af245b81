//! Pulse and probe sources.
//!
//! A plane pulse is launched by ramping a traveling ridge wave from zero:
//! with `u = theta(t) psi(s) W(transverse)`, `s = bhat.x - t`, the source
//! `f = theta'' psi W - 2 theta' psi' W` is compactly supported in the
//! ramp window and produces exactly the traveling ridge (up to window
//! diffraction that stays causally separated from the detector region).
//!
//! The ridge profile is the smoothed kink: a compact C1 bump convolved
//! with `s_+^a`, tapered to compact support behind the leading edge.

use num_complex::Complex64;

/// quartic bump of unit mass on `[-1, 1]`
fn bump(v: f64) -> f64 {
    if v.abs() >= 1.0 {
        0.0
    } else {
        15.0 / 16.0 * (1.0 - v * v).powi(2)
    }
}

/// antiderivatives of the bump moments
fn p_int(v: f64) -> f64 {
    v - 2.0 * v.powi(3) / 3.0 + v.powi(5) / 5.0
}
fn q_int(v: f64) -> f64 {
    v * v / 2.0 - v.powi(4) / 2.0 + v.powi(6) / 6.0
}
fn s_int(v: f64) -> f64 {
    v.powi(3) / 3.0 - 2.0 * v.powi(5) / 5.0 + v.powi(7) / 7.0
}

/// `(s_+^a) * bump_w`, exact piecewise polynomial
pub fn smoothed_plus_pow(s: f64, a: u32, w: f64) -> f64 {
    if s <= -w {
        return 0.0;
    }
    let sig = (s / w).min(1.0);
    let c = 15.0 / 16.0;
    let dp = p_int(sig) - p_int(-1.0);
    let dq = q_int(sig) - q_int(-1.0);
    match a {
        1 => c * (s * dp - w * dq),
        2 => {
            let ds = s_int(sig) - s_int(-1.0);
            c * (s * s * dp - 2.0 * s * w * dq + w * w * ds)
        }
        _ => panic!("profile exponent must be 1 or 2"),
    }
}

/// derivative of the smoothed kink
pub fn smoothed_plus_pow_deriv(s: f64, a: u32, w: f64) -> f64 {
    if s <= -w {
        return 0.0;
    }
    let sig = (s / w).min(1.0);
    let c = 15.0 / 16.0;
    match a {
        1 => c * (p_int(sig) - p_int(-1.0)),
        2 => 2.0 * smoothed_plus_pow(s, 1, w),
        _ => panic!("profile exponent must be 1 or 2"),
    }
}

/// smooth step 0 -> 1 over [0, 1] (C^2, quintic)
fn smoothstep(v: f64) -> f64 {
    let v = v.clamp(0.0, 1.0);
    v * v * v * (10.0 - 15.0 * v + 6.0 * v * v)
}
fn smoothstep_d1(v: f64) -> f64 {
    if !(0.0..=1.0).contains(&v) {
        return 0.0;
    }
    30.0 * v * v * (1.0 - v).powi(2)
}
fn smoothstep_d2(v: f64) -> f64 {
    if !(0.0..=1.0).contains(&v) {
        return 0.0;
    }
    60.0 * v * (1.0 - v) * (1.0 - 2.0 * v)
}

/// A traveling plane pulse.
#[derive(Debug, Clone)]
pub struct PlanePulse {
    /// unit spatial direction of travel
    pub dir: [f64; 2],
    /// leading-edge offset: the kink sits on `dir.x - t = edge0`
    pub edge0: f64,
    /// profile exponent (1 or 2)
    pub a: u32,
    /// kink smoothing width
    pub w: f64,
    /// pulse length behind the edge
    pub length: f64,
    pub amplitude: f64,
    /// time ramp interval `[0, t_ramp]`
    pub t_ramp: f64,
    /// transverse window half-width (2-D only)
    pub transverse_halfwidth: f64,
    /// transverse window center (2-D only)
    pub transverse_center: f64,
}

impl PlanePulse {
    /// ridge profile with a smooth taper to zero at the trailing edge
    pub fn profile(&self, s: f64) -> f64 {
        let lead = smoothed_plus_pow(-s, self.a, self.w);
        // taper: full strength until length/2 behind the edge, then fades
        let taper = 1.0 - smoothstep((-s - 0.5 * self.length) / (0.45 * self.length));
        self.amplitude * lead * taper
    }

    pub fn profile_deriv(&self, s: f64) -> f64 {
        let lead = smoothed_plus_pow(-s, self.a, self.w);
        let dlead = -smoothed_plus_pow_deriv(-s, self.a, self.w);
        let taper = 1.0 - smoothstep((-s - 0.5 * self.length) / (0.45 * self.length));
        let dtaper =
            smoothstep_d1((-s - 0.5 * self.length) / (0.45 * self.length)) / (0.45 * self.length);
        self.amplitude * (dlead * taper + lead * dtaper)
    }

    fn transverse(&self, x: f64, y: f64) -> f64 {
        // coordinate along the wavefront
        let tv = -self.dir[1] * x + self.dir[0] * y - self.transverse_center;
        let half = self.transverse_halfwidth;
        if half <= 0.0 {
            return 1.0;
        }
        // plateau with smooth shoulders over the outer 30%
        let u = (tv.abs() / half).clamp(0.0, 2.0);
        1.0 - smoothstep((u - 0.7) / 0.3)
    }

    /// phase `s = dir.x - t - edge0`
    pub fn phase(&self, t: f64, x: f64, y: f64) -> f64 {
        self.dir[0] * x + self.dir[1] * y - t - self.edge0
    }

    /// the launching source `theta'' psi W - 2 theta' psi' W`
    pub fn source(&self, t: f64, x: f64, y: f64) -> f64 {
        if t >= self.t_ramp {
            return 0.0;
        }
        let v = t / self.t_ramp;
        let s = self.phase(t, x, y);
        let w = self.transverse(x, y);
        let th1 = smoothstep_d1(v) / self.t_ramp;
        let th2 = smoothstep_d2(v) / (self.t_ramp * self.t_ramp);
        (th2 * self.profile(s) - 2.0 * th1 * self.profile_deriv(s)) * w
    }

    /// the ideal ramped traveling wave (reference solution away from the
    /// transverse window edges)
    pub fn ideal(&self, t: f64, x: f64, y: f64) -> f64 {
        let v = (t / self.t_ramp).min(1.0);
        smoothstep(v) * self.profile(self.phase(t, x, y)) * self.transverse(x, y)
    }
}

/// The oscillatory probe `tau^{-1} e^{i tau p(x)} h(x)` with complex
/// quadratic phase: real part linear along the chosen null covector,
/// imaginary part a positive quadratic centered at the base point.
#[derive(Debug, Clone)]
pub struct PointProbe {
    pub base: [f64; 3], // (t, x, y)
    /// null covector (xi_t, xi_x, xi_y) with xi_t = -1 normalization
    pub xi: [f64; 3],
    /// imaginary Hessian scale
    pub sigma: f64,
    /// envelope half-width
    pub radius: f64,
}

impl PointProbe {
    pub fn eval(&self, tau: f64, t: f64, x: f64, y: f64) -> Complex64 {
        let d = [t - self.base[0], x - self.base[1], y - self.base[2]];
        let r2 = d.iter().map(|v| v * v).sum::<f64>();
        if r2 > self.radius * self.radius {
            return Complex64::new(0.0, 0.0);
        }
        let env = bump((r2).sqrt() / self.radius);
        let re_p = self.xi[0] * d[0] + self.xi[1] * d[1] + self.xi[2] * d[2];
        let im_p = 0.5 * self.sigma * r2;
        let phase = Complex64::new(0.0, tau * re_p) + Complex64::new(-tau * im_p, 0.0);
        phase.exp() * env / tau
    }
}
