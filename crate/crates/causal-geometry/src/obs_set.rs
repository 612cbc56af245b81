//! Earliest light observation sets.
//!
//! `earliest_light_obs` records, for every observer of a region, the
//! earliest parameter at which the observer worldline meets the future
//! light cone of `q` truncated at the cut value (Def. of the earliest
//! observation sets).  On the implemented families the boundary of
//! `J^+(q)` consists of pre-cut cone points, so the earliest contact is
//! found exactly by monotone bisection on the time separation; the
//! explicit null-fan tracer below cross-checks the cut truncation and
//! feeds the diagnostic plots.

use crate::cut::{cut_value, unit_sphere_dirs, CutValue};
use crate::error::GeomError;
use crate::event::{Event, TangentVec};
use crate::metric::{Metric, SpatialFactor};
use crate::observer::{ObservationRegion, Observer};

/// Arrival of light from `q` on one observer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Arrival {
    Observed {
        s: f64,
    },
    /// Explicit sentinel; never encoded as a magic number.
    NotObserved,
}

impl Arrival {
    pub fn s(&self) -> Option<f64> {
        match self {
            Arrival::Observed { s } => Some(*s),
            Arrival::NotObserved => None,
        }
    }
}

/// The earliest light observation set of `q` sampled over a finite
/// observer family.
#[derive(Debug, Clone)]
pub struct ObsSetSample {
    pub q: Event,
    pub entries: Vec<(usize, Arrival)>,
}

impl ObsSetSample {
    /// Sup-distance between two samples viewed as functions of the
    /// observer index.  One-sided "not observed" counts as infinitely
    /// distant, two-sided as zero contribution.
    pub fn sup_distance(&self, other: &ObsSetSample) -> f64 {
        assert_eq!(self.entries.len(), other.entries.len());
        let mut d: f64 = 0.0;
        for ((_, a), (_, b)) in self.entries.iter().zip(&other.entries) {
            match (a, b) {
                (Arrival::Observed { s: sa }, Arrival::Observed { s: sb }) => {
                    d = d.max((sa - sb).abs())
                }
                (Arrival::NotObserved, Arrival::NotObserved) => {}
                _ => return f64::INFINITY,
            }
        }
        d
    }

    /// CSV rows `q_coords..., observer_index, earliest_s | NA`.
    pub fn to_csv_rows(&self, spatial_dim: usize) -> String {
        let mut out = String::new();
        for (idx, arr) in &self.entries {
            for k in 0..=spatial_dim {
                out.push_str(&format!("{:.12},", self.q.coords[k]));
            }
            match arr {
                Arrival::Observed { s } => out.push_str(&format!("{idx},{s:.12}\n")),
                Arrival::NotObserved => out.push_str(&format!("{idx},NA\n")),
            }
        }
        out
    }
}

/// Earliest contact of the observer with the cone of `q`, or the sentinel.
pub fn direct_arrival(metric: &Metric, q: &Event, mu: &Observer) -> Result<Arrival, GeomError> {
    let end = mu.eval(metric, 1.0);
    if !metric.causal_leq(q, &end) {
        return Ok(Arrival::NotObserved);
    }
    if metric.chron_ll(q, &mu.eval(metric, -1.0)) {
        // the cone crossed this worldline strictly before the window
        return Ok(Arrival::NotObserved);
    }
    if metric.causal_leq(q, &mu.eval(metric, -1.0)) {
        // contact exactly at the window start
        return Ok(Arrival::Observed { s: -1.0 });
    }
    let inside = |s: f64| metric.causal_leq(q, &mu.eval(metric, s));
    let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if inside(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Arrival::Observed { s: 0.5 * (lo + hi) })
}

/// Earliest light observation set of `q` over the region's observers.
pub fn earliest_light_obs(
    metric: &Metric,
    q: &Event,
    region: &ObservationRegion,
) -> Result<ObsSetSample, GeomError> {
    let mut entries = Vec::with_capacity(region.observers.len());
    for (i, mu) in region.observers.iter().enumerate() {
        entries.push((i, direct_arrival(metric, q, mu)?));
    }
    Ok(ObsSetSample { q: *q, entries })
}

/// An explicit truncated null fan from `q`: unit-time directions, each
/// with its cut value.  Exact ray tracing on the flat families.
#[derive(Debug, Clone)]
pub struct ConeFan {
    pub q: Event,
    /// normalized direction components (dt/ds = 1)
    pub dirs: Vec<[f64; 4]>,
    /// cut parameter per direction (after which the ray stops counting)
    pub cut: Vec<f64>,
}

impl ConeFan {
    pub fn new(metric: &Metric, q: Event, n_dirs: usize) -> Result<Self, GeomError> {
        assert!(
            metric.is_flat_family(),
            "the fan tracer requires a flat family; curved families use the direct method"
        );
        let dim = metric.spatial_dim();
        let dirs_s = unit_sphere_dirs(dim, n_dirs);
        let mut dirs = Vec::with_capacity(dirs_s.len());
        let mut cut = Vec::with_capacity(dirs_s.len());
        for v in dirs_s {
            let comps = [1.0, v[0], v[1], v[2]];
            let xi = TangentVec::new(q, comps);
            let c = cut_value(metric, q, xi)?;
            dirs.push(comps);
            cut.push(match c {
                CutValue::Cut(s) => s,
                CutValue::NoCutInDomain { lower_bound } => lower_bound,
            });
        }
        Ok(ConeFan { q, dirs, cut })
    }

    /// Earliest fan arrival on each observer within the tube radius, with
    /// adaptive refinement between adjacent rays when the recorded
    /// parameter jumps.  Returns per-observer arrivals plus a jump flag.
    pub fn arrivals(
        &self,
        metric: &Metric,
        region: &ObservationRegion,
        tube_radius: f64,
        jump_tol: f64,
    ) -> Result<(Vec<Arrival>, Vec<bool>), GeomError> {
        let n_obs = region.observers.len();
        let mut best: Vec<Option<f64>> = vec![None; n_obs];
        let mut per_ray: Vec<Vec<Option<f64>>> = Vec::with_capacity(self.dirs.len());
        for (k, dir) in self.dirs.iter().enumerate() {
            let mut row = vec![None; n_obs];
            for (i, mu) in region.observers.iter().enumerate() {
                if let Some(s) =
                    ray_observer_contact(metric, &self.q, dir, self.cut[k], mu, tube_radius)
                {
                    row[i] = Some(s);
                    best[i] = Some(best[i].map_or(s, |b: f64| b.min(s)));
                }
            }
            per_ray.push(row);
        }
        // r = 0 case: q itself may sit on an observer worldline
        for (i, mu) in region.observers.iter().enumerate() {
            if let Some(s) = point_on_observer(metric, &self.q, mu, tube_radius) {
                best[i] = Some(best[i].map_or(s, |b: f64| b.min(s)));
            }
        }
        // jump detection between adjacent rays that both see the observer
        let mut flags = vec![false; n_obs];
        let nray = self.dirs.len();
        if nray > 2 {
            for i in 0..n_obs {
                for k in 0..nray {
                    let k2 = (k + 1) % nray;
                    if let (Some(a), Some(b)) = (per_ray[k][i], per_ray[k2][i]) {
                        if (a - b).abs() > jump_tol {
                            flags[i] = true;
                        }
                    }
                }
            }
        }
        let arrivals = best
            .into_iter()
            .map(|b| match b {
                Some(s) => Arrival::Observed { s },
                None => Arrival::NotObserved,
            })
            .collect();
        Ok((arrivals, flags))
    }
}

/// Winding image offsets for circle factors (|k| <= 2 suffices for the
/// configured boxes; arrivals further out are outside every window).
fn winding_offsets(metric: &Metric) -> Vec<[f64; 3]> {
    let mut offs = vec![[0.0; 3]];
    if let Metric::StaticProduct { factors, .. } = metric {
        for (i, f) in factors.iter().enumerate() {
            if let SpatialFactor::Circle(l) = f {
                let mut next = Vec::new();
                for o in &offs {
                    for k in [-2i32, -1, 0, 1, 2] {
                        let mut o2 = *o;
                        o2[i] += k as f64 * l;
                        next.push(o2);
                    }
                }
                offs = next;
            }
        }
    }
    offs
}

/// Closest-approach contact between the truncated ray `q + r*dir`
/// (`0 <= r <= r_max`) and the observer worldline, over winding images.
/// Returns the earliest observer parameter of a contact within
/// `tube_radius`.
fn ray_observer_contact(
    metric: &Metric,
    q: &Event,
    dir: &[f64; 4],
    r_max: f64,
    mu: &Observer,
    tube_radius: f64,
) -> Option<f64> {
    let s_ref = mu.markers.s_minus2();
    let z = mu.z.coords;
    let eta = mu.eta.comps;
    let mut best: Option<f64> = None;
    for off in winding_offsets(metric) {
        // minimize |q + r dir - (z + (s - s_ref) eta) + off|^2 over (r, s)
        let mut w = [0.0; 4];
        for k in 0..4 {
            w[k] = q.coords[k] - z[k];
        }
        for k in 0..3 {
            w[1 + k] += off[k];
        }
        let dd: f64 = dir.iter().map(|c| c * c).sum();
        let ee: f64 = eta.iter().map(|c| c * c).sum();
        let de: f64 = (0..4).map(|k| dir[k] * eta[k]).sum();
        let wd: f64 = (0..4).map(|k| w[k] * dir[k]).sum();
        let we: f64 = (0..4).map(|k| w[k] * eta[k]).sum();
        // grad = 0: [dd -de; -de ee] [r; u] = [-wd; we]
        let det = dd * ee - de * de;
        if det.abs() < 1e-14 {
            continue;
        }
        let mut r = (-wd * ee + de * we) / det;
        let mut u = (we * dd - wd * de) / det;
        // clamp and re-minimize on the active edges
        let u_lo = -1.0 - s_ref;
        let u_hi = 1.0 - s_ref;
        r = r.clamp(0.0, r_max);
        u = u.clamp(u_lo, u_hi);
        for _ in 0..4 {
            // coordinate descent on the clamped rectangle
            u = (-(0..4).map(|k| (w[k] + r * dir[k]) * -eta[k]).sum::<f64>() / ee)
                .clamp(u_lo, u_hi);
            r = (-(0..4).map(|k| (w[k] - u * eta[k]) * dir[k]).sum::<f64>() / dd).clamp(0.0, r_max);
        }
        let mut dist2 = 0.0;
        for k in 0..4 {
            let diff = w[k] + r * dir[k] - u * eta[k];
            dist2 += diff * diff;
        }
        if dist2.sqrt() <= tube_radius {
            let s = u + s_ref;
            best = Some(best.map_or(s, |b: f64| b.min(s)));
        }
    }
    best
}

fn point_on_observer(metric: &Metric, q: &Event, mu: &Observer, tube_radius: f64) -> Option<f64> {
    let s_ref = mu.markers.s_minus2();
    let eta = mu.eta.comps;
    let ee: f64 = eta.iter().map(|c| c * c).sum();
    let mut best: Option<f64> = None;
    for off in winding_offsets(metric) {
        let mut w = [0.0; 4];
        for k in 0..4 {
            w[k] = q.coords[k] - mu.z.coords[k];
        }
        for k in 0..3 {
            w[1 + k] += off[k];
        }
        let u = ((0..4).map(|k| w[k] * eta[k]).sum::<f64>() / ee).clamp(-1.0 - s_ref, 1.0 - s_ref);
        let mut d2 = 0.0;
        for k in 0..4 {
            let diff = w[k] - u * eta[k];
            d2 += diff * diff;
        }
        if d2.sqrt() <= tube_radius {
            let s = u + s_ref;
            best = Some(best.map_or(s, |b: f64| b.min(s)));
        }
    }
    best
}
