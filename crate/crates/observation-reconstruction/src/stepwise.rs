//! Backward stepwise collection of earliest light observation sets over
//! the causal diamond, and the injectivity / embedding diagnostics.

use crate::error::ReconError;
use crate::lab::Lab;
use crate::rng::SplitMix;
use crate::tuples::{admissible_tuple, synth_se, tuple_from_target, Provenance};
use causal_geometry::obs_set::{earliest_light_obs, Arrival, ObsSetSample};
use causal_geometry::observer::{obs_time, Side};
use causal_geometry::Event;

#[derive(Debug, Clone)]
pub struct CollectedSample {
    pub q: Event,
    pub sample: ObsSetSample,
    pub provenance: Provenance,
    /// which backward step produced it (0 = seed)
    pub step: usize,
}

#[derive(Debug)]
pub struct DataSet {
    pub samples: Vec<CollectedSample>,
    pub coverage_gaps: Vec<(Event, f64)>,
    pub s_grid: Vec<f64>,
}

impl DataSet {
    /// CSV rows `q_coords..., observer_index, earliest_s | NA`
    pub fn to_csv(&self, spatial_dim: usize) -> String {
        let mut out = String::new();
        for s in &self.samples {
            out.push_str(&s.sample.to_csv_rows(spatial_dim));
        }
        out
    }

    pub fn manifest(&self, lab: &Lab) -> serde_json::Value {
        serde_json::json!({
            "observers": lab.region.observers.len(),
            "kappa1": lab.kappa.kappa1,
            "kappa2": lab.kappa.kappa2,
            "theta1": lab.theta1,
            "t0": lab.t0,
            "s_grid": self.s_grid,
            "samples": self.samples.len(),
            "coverage_gaps": self.coverage_gaps.len(),
            "tolerances": { "trace_cauchy": 1e-4, "intersection": 1e-6 },
        })
    }
}

/// Backward induction over observer levels: seed with the near-tube
/// region, then per level generate each target point from a perturbed
/// null ray off the worldline, certify the generating tuple, and record
/// the synthesized observation set.  Sample emission goes through the
/// tuple pipeline; the direct observation set of the same point is the
/// oracle the acceptance suite compares against.
pub fn stepwise_collect(
    lab: &Lab,
    targets_per_step: usize,
    seed: u64,
) -> Result<DataSet, ReconError> {
    let metric = &lab.metric;
    let dim = metric.spatial_dim();
    let s_minus = lab.s_minus();
    let s_plus = lab.s_plus();
    // s-grid descending with gaps below kappa2
    let kappa2 = lab.kappa.kappa2;
    let n_steps = (((s_plus - s_minus) / (0.8 * kappa2)).ceil() as usize).max(1);
    let mut s_grid = Vec::with_capacity(n_steps + 1);
    for i in 0..=n_steps {
        s_grid.push(s_plus - (s_plus - s_minus) * i as f64 / n_steps as f64);
    }

    let mut samples = Vec::new();
    let mut gaps = Vec::new();

    // seed: points near the observer tube reached within 2 t0
    let mut rng = SplitMix::stream(seed, 0);
    for _ in 0..targets_per_step {
        let s = s_minus + (s_plus - s_minus) * rng.next_f64();
        let r = 2.0 * lab.t0 * rng.next_f64();
        let mut dir = [0.0; 3];
        for d in dir.iter_mut().take(dim) {
            *d = rng.next_sym();
        }
        let base = lab.x_hat(s);
        let xi = lab.null_dir(base, dir);
        let q = lab.ray_point(&base, &xi, r);
        if !metric.chron_ll(&lab.p_minus(), &q) || !metric.chron_ll(&q, &lab.p_plus()) {
            continue;
        }
        let sample = earliest_light_obs(metric, &q, &lab.region)?;
        samples.push(CollectedSample {
            q,
            sample,
            provenance: Provenance::GeometrySynthesized,
            step: 0,
        });
    }

    // backward steps: layer between consecutive levels
    for step in 1..s_grid.len() {
        let s1 = s_grid[step - 1];
        let s2 = s_grid[step];
        let mut rng = SplitMix::stream(seed, step as u64);
        let mut placed = 0usize;
        let mut attempts = 0usize;
        while placed < targets_per_step && attempts < 20 * targets_per_step {
            attempts += 1;
            // target: a point in the diamond with observation level in
            // (s2, s1]: generated from a ray off a worldline point of the
            // current layer
            let s_base = s2 + (s1 - s2) * rng.next_f64();
            let mut dir = [0.0; 3];
            for d in dir.iter_mut().take(dim) {
                *d = rng.next_sym();
            }
            let base = lab.x_hat(s_base);
            // keep the ray off the axis: offset the base spatially
            let off_scale = 0.05 * lab.theta_scan;
            let mut c = base.coords;
            for k in 0..dim {
                c[1 + k] += off_scale * rng.next_sym();
            }
            let y = metric.canonicalize(Event::new(c));
            let zeta = lab.null_dir(y, dir);
            // intersection parameter within the pre-cut window
            let rho = lab.rho_after_flow(&y, &zeta).map_err(ReconError::from)?;
            let r_lo = lab.t0 * 1.5;
            let r_hi = (lab.t0 + rho).min(lab.t0 + 2.0);
            if r_hi <= r_lo {
                continue;
            }
            let r = r_lo + (r_hi - r_lo) * rng.next_f64();
            let q = lab.ray_point(&y, &zeta, r);
            if !metric.chron_ll(&lab.p_minus(), &q) || !metric.chron_ll(&q, &lab.p_plus()) {
                continue;
            }
            // the observation level of q must sit in this layer
            let level = obs_time(metric, &lab.mu, &q, Side::Minus)?;
            if !(level > s2 && level <= s1) {
                continue;
            }
            // closure refinement: shrink the tuple spread until the
            // center trace is Cauchy within the configured tolerance
            let mut prev_trace: Option<f64> = None;
            let mut emitted = false;
            for halving in 0..6 {
                let spread = lab.theta_scan / 8.0 / (1 << halving) as f64;
                let mut tuple = tuple_from_target(lab, &q, dir, r - lab.t0, spread, &mut rng);
                tuple.x[0] = y;
                tuple.xi[0] = zeta;
                let adm = admissible_tuple(lab, &tuple, lab.theta_scan);
                if !adm.ok {
                    continue;
                }
                let rec = synth_se(lab, &tuple)?;
                let (Some(qq), Some(sample)) = (rec.q, rec.sample) else {
                    continue;
                };
                let trace = sample.entries[lab.region.center].1.s().unwrap_or(s_plus);
                if let Some(p) = prev_trace {
                    if (p - trace).abs() < 1e-4 {
                        samples.push(CollectedSample {
                            q: qq,
                            sample,
                            provenance: rec.provenance,
                            step,
                        });
                        emitted = true;
                        placed += 1;
                        break;
                    }
                }
                prev_trace = Some(trace);
            }
            if !emitted && prev_trace.is_some() {
                gaps.push((q, f64::NAN));
            }
        }
        if placed < targets_per_step {
            // report the worst gap of the layer instead of failing silently
            gaps.push((lab.x_hat(s2), (targets_per_step - placed) as f64));
        }
    }

    Ok(DataSet {
        samples,
        coverage_gaps: gaps,
        s_grid,
    })
}

#[derive(Debug)]
pub struct InjectivityReport {
    pub n: usize,
    pub min_offdiag: f64,
    pub injective: bool,
    /// correlation of observation-set distance with event distance
    pub trend: f64,
}

/// Pairwise sup-distances of the observation sets viewed as functions of
/// the observer index (one-sided sentinel counts as infinitely far), the
/// injectivity verdict, and a monotone-trend statistic against the
/// product-metric distance of the underlying points.
pub fn injectivity_and_embed(
    metric: &causal_geometry::Metric,
    samples: &[(Event, ObsSetSample)],
) -> Result<InjectivityReport, ReconError> {
    if samples.len() < 2 {
        return Err(ReconError::TooFewSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    let n = samples.len();
    let mut min_offdiag = f64::INFINITY;
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let df = sup_distance_na(&samples[i].1, &samples[j].1);
            let dq = ((samples[i].0.t() - samples[j].0.t()).powi(2)
                + metric.spatial_dist(&samples[i].0, &samples[j].0).powi(2))
            .sqrt();
            min_offdiag = min_offdiag.min(df);
            if df.is_finite() {
                pairs.push((dq, df));
            }
        }
    }
    // Pearson correlation as the trend statistic
    let trend = if pairs.len() >= 2 {
        let nn = pairs.len() as f64;
        let mx = pairs.iter().map(|p| p.0).sum::<f64>() / nn;
        let my = pairs.iter().map(|p| p.1).sum::<f64>() / nn;
        let (mut num, mut dx, mut dy) = (0.0, 0.0, 0.0);
        for &(x, y) in &pairs {
            num += (x - mx) * (y - my);
            dx += (x - mx).powi(2);
            dy += (y - my).powi(2);
        }
        num / (dx.sqrt() * dy.sqrt()).max(1e-300)
    } else {
        0.0
    };
    Ok(InjectivityReport {
        n,
        min_offdiag,
        injective: min_offdiag > 0.0,
        trend,
    })
}

/// sup-distance with the sentinel conventions: one-sided "not observed"
/// counts as infinite, two-sided contributes nothing
fn sup_distance_na(a: &ObsSetSample, b: &ObsSetSample) -> f64 {
    let mut d: f64 = 0.0;
    for ((_, x), (_, y)) in a.entries.iter().zip(&b.entries) {
        match (x, y) {
            (Arrival::Observed { s: sa }, Arrival::Observed { s: sb }) => {
                d = d.max((sa - sb).abs())
            }
            (Arrival::NotObserved, Arrival::NotObserved) => {}
            _ => return f64::INFINITY,
        }
    }
    d
}
