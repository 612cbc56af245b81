//! The reconstruction laboratory: a flat-family metric, a central
//! observer with its sampled observation region, and the kappa constants
//! driving the stepwise construction.

use causal_geometry::cut::{cut_value, CutValue};
use causal_geometry::kappa::{kappa_estimates, KappaConfig, KappaReport};
use causal_geometry::metric::Metric;
use causal_geometry::observer::{Markers, ObservationRegion, Observer};
use causal_geometry::{Event, GeomError, TangentVec};

pub struct Lab {
    pub metric: Metric,
    pub mu: Observer,
    pub region: ObservationRegion,
    pub kappa: KappaReport,
    /// flow length of the tuple construction (4 kappa1)
    pub t0: f64,
    /// recorded continuity-modulus radius (diagnostic)
    pub theta1: f64,
    /// operational neighborhood radius for scans and tuple admissibility;
    /// the recorded modulus radius can be impractically small on flat
    /// families, while the construction only needs a fixed radius with
    /// the admissibility checks enforced explicitly
    pub theta_scan: f64,
    /// radius of the source support region around the observer
    pub source_radius: f64,
}

impl Lab {
    pub fn new(
        metric: Metric,
        markers: Markers,
        h_hat: f64,
        n_observers: usize,
    ) -> Result<Self, GeomError> {
        assert!(
            metric.is_flat_family() && metric.spatial_dim() >= 2,
            "the tuple machinery needs a flat family with at least two spatial dimensions"
        );
        let mu = Observer::static_at(&metric, [0.0; 3], markers);
        let region = ObservationRegion::sample(
            &metric,
            mu.eval(&metric, markers.s_minus2()),
            markers,
            h_hat,
            n_observers,
        )?;
        // the horizon cap bounds the flow length on families without cut
        // points; keep it commensurate with the marker spacing so tuple
        // base points stay near the worldline
        let kappa_cfg = KappaConfig {
            horizon_cap: 0.25,
            ..KappaConfig::default()
        };
        let kappa = kappa_estimates(
            &metric,
            &mu,
            markers.s_minus(),
            markers.s_plus(),
            &kappa_cfg,
        )?;
        let t0 = 4.0 * kappa.kappa1;
        let theta1 = kappa.theta1;
        Ok(Lab {
            metric,
            mu,
            region,
            kappa,
            t0,
            theta1,
            theta_scan: 0.42,
            source_radius: 1.0,
        })
    }

    pub fn s_minus(&self) -> f64 {
        self.mu.markers.s_minus()
    }

    pub fn s_plus(&self) -> f64 {
        self.mu.markers.s_plus()
    }

    pub fn p_plus(&self) -> Event {
        self.mu.eval(&self.metric, self.s_plus())
    }

    pub fn p_minus(&self) -> Event {
        self.mu.eval(&self.metric, self.s_minus())
    }

    pub fn x_hat(&self, s: f64) -> Event {
        self.mu.eval(&self.metric, s)
    }

    /// unit-time null vector at `base` with the given spatial direction
    pub fn null_dir(&self, base: Event, spatial: [f64; 3]) -> TangentVec {
        let dim = self.metric.spatial_dim();
        let norm: f64 = spatial[..dim].iter().map(|c| c * c).sum::<f64>().sqrt();
        let mut comps = [1.0, 0.0, 0.0, 0.0];
        for k in 0..dim {
            comps[1 + k] = spatial[k] / norm;
        }
        TangentVec::new(base, comps)
    }

    /// point of the exact ray from `x` with unit-time null velocity `xi`
    pub fn ray_point(&self, x: &Event, xi: &TangentVec, r: f64) -> Event {
        let mut c = x.coords;
        for k in 0..4 {
            c[k] += r * xi.comps[k];
        }
        self.metric.canonicalize(Event::new(c))
    }

    /// cut value of the ray flowed by `t0`: the scale on which tuple
    /// intersections remain analyzable
    pub fn rho_after_flow(&self, x: &Event, xi: &TangentVec) -> Result<f64, GeomError> {
        let x1 = self.ray_point(x, xi, self.t0);
        let xi1 = TangentVec::new(x1, xi.comps);
        Ok(match cut_value(&self.metric, x1, xi1)? {
            CutValue::Cut(r) => r,
            CutValue::NoCutInDomain { lower_bound } => lower_bound,
        })
    }

    /// squared product-metric distance between two (event, velocity) pairs,
    /// minimized over winding images of the event separation
    pub fn phase_distance(&self, a: (&Event, &TangentVec), b: (&Event, &TangentVec)) -> f64 {
        let dv: f64 = (0..4).map(|k| (a.1.comps[k] - b.1.comps[k]).powi(2)).sum();
        let dt = (a.0.t() - b.0.t()).powi(2);
        let dsp = self.metric.spatial_dist(a.0, b.0).powi(2);
        (dv + dt + dsp).sqrt()
    }

    /// distance of an event to the central observer worldline (exact for
    /// the static worldline: the closest parameter is the clamped time)
    pub fn dist_to_mu(&self, e: &Event) -> f64 {
        let s = e.t().clamp(-1.0, 1.0);
        let z = self.mu.eval(&self.metric, s);
        ((e.t() - z.t()).powi(2) + self.metric.spatial_dist(e, &z).powi(2)).sqrt()
    }
}
