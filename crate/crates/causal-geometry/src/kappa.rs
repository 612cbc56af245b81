//! The kappa constants controlling the stepwise reconstruction.
//!
//! `kappa1` bounds the parameter range on which flowed null geodesics
//! stay observable (a fifth of the minimal cut value over the compact
//! frame set `B`), `kappa2` is the observation-time margin gained when
//! passing a cut point, and `theta1` is the perturbation radius under
//! which the margin argument survives (from the sampled continuity
//! modulus of `f^-`).

use crate::cut::{cut_value, unit_sphere_dirs, CutValue};
use crate::error::GeomError;
use crate::event::{Event, TangentVec};
use crate::geodesic::geodesic;
use crate::metric::Metric;
use crate::observer::{obs_time, Observer, Side};

#[derive(Debug, Clone, Copy)]
pub struct KappaSample {
    /// observer parameter of the base point
    pub s_param: f64,
    /// index into the direction fan
    pub dir_index: usize,
    /// cut value of the (unit-time normalized) null ray
    pub rho: f64,
    /// whether `rho` was capped at the domain horizon
    pub capped: bool,
}

#[derive(Debug, Clone)]
pub struct KappaReport {
    pub theta1: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub rho_min: f64,
    /// true when some (or all) rays had no cut point inside the domain
    /// and the horizon cap entered the estimate
    pub capped: bool,
    pub evidence: Vec<KappaSample>,
    /// sampled continuity modulus of `f^-`: pairs `(offset, max |df^-|)`
    pub modulus: Vec<(f64, f64)>,
    /// the margin `eps1` behind `kappa2 = eps1 / 4` (when measurable)
    pub eps1: Option<f64>,
}

pub struct KappaConfig {
    pub n_base: usize,
    pub n_dirs: usize,
    /// fallback cap for rho when a ray has no cut point in the domain
    pub horizon_cap: f64,
}

impl Default for KappaConfig {
    fn default() -> Self {
        KappaConfig {
            n_base: 9,
            n_dirs: 16,
            horizon_cap: 4.0,
        }
    }
}

/// Estimate `(theta1, kappa1, kappa2)` for the central observer by
/// sampling the compact set `B = { (x, zeta) : x on mu([s_lo, s_hi]),
/// zeta null future }`.
pub fn kappa_estimates(
    metric: &Metric,
    mu_hat: &Observer,
    s_lo: f64,
    s_hi: f64,
    cfg: &KappaConfig,
) -> Result<KappaReport, GeomError> {
    let dim = metric.spatial_dim();
    let dirs = unit_sphere_dirs(dim, cfg.n_dirs);
    let mut evidence = Vec::new();
    let mut rho_min = f64::INFINITY;
    let mut any_capped = false;

    for ib in 0..cfg.n_base {
        let s = s_lo + (s_hi - s_lo) * ib as f64 / (cfg.n_base - 1).max(1) as f64;
        let x = mu_hat.eval(metric, s);
        for (id, v) in dirs.iter().enumerate() {
            let xi = TangentVec::new(x, [1.0, v[0], v[1], v[2]]);
            let (rho, capped) = match cut_value(metric, x, xi)? {
                CutValue::Cut(r) => (r, false),
                CutValue::NoCutInDomain { lower_bound } => (lower_bound.min(cfg.horizon_cap), true),
            };
            any_capped |= capped;
            rho_min = rho_min.min(rho);
            evidence.push(KappaSample {
                s_param: s,
                dir_index: id,
                rho,
                capped,
            });
        }
    }
    // strictly below a fifth of the sampled minimum
    let kappa1 = 0.2 * rho_min * (1.0 - 1e-6);

    // margin eps1 from the Lemma construction: flow by t0 = kappa1, take
    // the cut point of the flowed ray, and measure the f^- gain.
    let t0 = kappa1;
    let mut eps1: Option<f64> = None;
    let p_plus2 = mu_hat.eval(metric, mu_hat.markers.s_plus2());
    for ib in 0..cfg.n_base {
        let s = s_lo + (s_hi - s_lo) * ib as f64 / (cfg.n_base - 1).max(1) as f64;
        let x = mu_hat.eval(metric, s);
        for v in &dirs {
            let xi = TangentVec::new(x, [1.0, v[0], v[1], v[2]]);
            let horizon = 4.0 * cfg.horizon_cap;
            let geo = geodesic(metric, x, xi, horizon)?;
            let x1 = geo.point_at(metric, t0);
            let xi1 = TangentVec::new(x1, xi.comps);
            let rho1 = match cut_value(metric, x1, xi1)? {
                CutValue::Cut(r) => r,
                CutValue::NoCutInDomain { .. } => continue,
            };
            let p2 = geo.point_at(metric, t0 + rho1);
            if !metric.causal_leq(&p2, &p_plus2) {
                continue;
            }
            let f_p2 = match obs_time(metric, mu_hat, &p2, Side::Minus) {
                Ok(f) => f,
                Err(GeomError::OutOfDiamond) => continue,
                Err(e) => return Err(e),
            };
            let gain = f_p2 - s;
            if gain > 0.0 {
                eps1 = Some(eps1.map_or(gain, |e: f64| e.min(gain)));
            }
        }
    }
    let kappa2 = match eps1 {
        Some(e) => e / 4.0,
        // no cut point ever re-enters the observation diamond (flat case):
        // any step below the marker spacing works; record it as capped.
        None => {
            any_capped = true;
            0.25 * (s_hi - s_lo)
        }
    };

    // sampled continuity modulus of f^- near the worldline
    let mut modulus = Vec::new();
    let offsets = [0.4, 0.2, 0.1, 0.05, 0.025, 0.0125];
    for &h in &offsets {
        let mut worst: f64 = 0.0;
        for ib in 0..cfg.n_base {
            let s = s_lo + (s_hi - s_lo) * ib as f64 / (cfg.n_base - 1).max(1) as f64;
            let x = mu_hat.eval(metric, s);
            for k in 1..=dim {
                for sgn in [-1.0, 1.0] {
                    let mut c = x.coords;
                    c[k] += sgn * h;
                    let y = metric.canonicalize(Event::new(c));
                    let fx = match obs_time(metric, mu_hat, &x, Side::Minus) {
                        Ok(f) => f,
                        Err(_) => continue,
                    };
                    let fy = match obs_time(metric, mu_hat, &y, Side::Minus) {
                        Ok(f) => f,
                        Err(_) => continue,
                    };
                    worst = worst.max((fx - fy).abs());
                }
            }
        }
        modulus.push((h, worst));
    }
    let half_margin = eps1.map_or(f64::INFINITY, |e| e / 2.0);
    let theta1 = modulus
        .iter()
        .filter(|(_, m)| *m < half_margin)
        .map(|(h, _)| *h)
        .fold(offsets[offsets.len() - 1], f64::max);

    Ok(KappaReport {
        theta1,
        kappa1,
        kappa2,
        rho_min,
        capped: any_capped,
        evidence,
        modulus,
        eps1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Box4;
    use crate::observer::Markers;

    #[test]
    fn cylinder_kappa1_below_a_tenth() {
        // min rho over B is l/2 = 1/2, so kappa1 < 0.1
        let m = Metric::cylinder(1.0, 4.0);
        let mu = Observer::static_at(&m, [0.0; 3], Markers::default());
        let rep = kappa_estimates(&m, &mu, -0.5, 0.5, &KappaConfig::default()).unwrap();
        assert!(
            (rep.rho_min - 0.5).abs() < 1e-3,
            "rho_min = {}",
            rep.rho_min
        );
        assert!(rep.kappa1 < 0.1);
        assert!(rep.kappa1 > 0.09);
        assert!(rep.kappa2 > 0.0);
    }

    #[test]
    fn minkowski_is_capped() {
        let m = Metric::minkowski(1, Box4::symmetric(4.0, 4.0)).unwrap();
        let mu = Observer::static_at(&m, [0.0; 3], Markers::default());
        let rep = kappa_estimates(&m, &mu, -0.5, 0.5, &KappaConfig::default()).unwrap();
        assert!(rep.capped, "no cut points on Minkowski: must flag the cap");
    }

    #[test]
    fn torus_min_rho_from_shortest_circumference() {
        let m = Metric::torus(&[1.0, 2.0], 4.0);
        let mu = Observer::static_at(&m, [0.0; 3], Markers::default());
        let cfg = KappaConfig {
            n_base: 5,
            n_dirs: 32,
            horizon_cap: 4.0,
        };
        let rep = kappa_estimates(&m, &mu, -0.5, 0.5, &cfg).unwrap();
        assert!(
            (rep.rho_min - 0.5).abs() < 2e-2,
            "rho_min = {} expected ~ l_min/2",
            rep.rho_min
        );
    }
}
