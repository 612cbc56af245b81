//! Scenario files: strict JSON with an explicit version field; unknown
//! keys are rejected by name so parameter drift fails loudly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("validation error: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub kind: ExperimentKind,
    #[serde(default)]
    pub metric: MetricSpec,
    #[serde(default)]
    pub observers: ObserverSpec,
    #[serde(default)]
    pub params: Params,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_seed() -> u64 {
    0xC0FFEE
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub enum ExperimentKind {
    #[serde(rename = "geometry-suite")]
    GeometrySuite,
    #[serde(rename = "indicator-einstein")]
    IndicatorEinstein,
    #[serde(rename = "indicator-scalar")]
    IndicatorScalar,
    #[serde(rename = "wave-expansion")]
    WaveExpansion,
    #[serde(rename = "interaction")]
    Interaction,
    #[serde(rename = "reconstruction")]
    Reconstruction,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, tag = "family")]
pub enum MetricSpec {
    #[serde(rename = "minkowski")]
    Minkowski { spatial_dim: usize },
    #[serde(rename = "cylinder")]
    Cylinder { circumference: f64 },
    #[serde(rename = "cylinder-2p1")]
    Cylinder2p1 { circumference: f64 },
    #[serde(rename = "torus")]
    Torus { circumferences: Vec<f64> },
    #[serde(rename = "conformal-1p1")]
    Conformal1p1 {
        /// polynomial terms (t-power, x-power, coefficient)
        factor: Vec<(u32, u32, f64)>,
    },
}

impl Default for MetricSpec {
    fn default() -> Self {
        MetricSpec::Minkowski { spatial_dim: 2 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ObserverSpec {
    pub h_hat: f64,
    pub count: usize,
}

impl Default for ObserverSpec {
    fn default() -> Self {
        ObserverSpec {
            h_hat: 0.12,
            count: 64,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// scale parameters for numeric frames (rho_1..rho_4)
    #[serde(default)]
    pub rho: Option<[f64; 4]>,
    /// use the symbolic scale hierarchy instead of numeric parameters
    #[serde(default)]
    pub hierarchy: bool,
    /// plane-wave profile exponent of the indicator enumeration
    #[serde(default = "default_a")]
    pub a: i64,
    /// conormal order of the scalar indicator
    #[serde(default = "default_n")]
    pub n: i64,
    /// scalar coupling at the intersection point
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// principal symbol values
    #[serde(default = "default_symbols")]
    pub symbols: [f64; 4],
    /// grid spacing of the wave experiments
    #[serde(default = "default_h")]
    pub grid_h: f64,
    /// nonlinear coupling
    #[serde(default = "default_coupling")]
    pub coupling: f64,
    /// amplitude list for the remainder fit
    #[serde(default)]
    pub eps_list: Vec<f64>,
    /// frequency ladder for probes / oscillatory oracles
    #[serde(default)]
    pub tau_list: Vec<f64>,
    /// spatial dimension of the interaction experiment (1 or 2)
    #[serde(default = "default_interaction_dim")]
    pub interaction_dim: usize,
    /// run the parallel-pulse control instead of the crossing experiment
    #[serde(default)]
    pub parallel_control: bool,
    /// scan samples for the reconstruction experiment
    #[serde(default = "default_scan_samples")]
    pub scan_samples: usize,
    /// stepwise targets per backward step
    #[serde(default = "default_targets")]
    pub targets_per_step: usize,
    /// diamond samples for the injectivity check
    #[serde(default = "default_injectivity")]
    pub injectivity_samples: usize,
}

fn default_a() -> i64 {
    8
}
fn default_n() -> i64 {
    -6
}
fn default_alpha() -> f64 {
    1.0
}
fn default_symbols() -> [f64; 4] {
    [1.0; 4]
}
fn default_h() -> f64 {
    1.0 / 160.0
}
fn default_coupling() -> f64 {
    25.0
}
fn default_interaction_dim() -> usize {
    1
}
fn default_scan_samples() -> usize {
    12
}
fn default_targets() -> usize {
    5
}
fn default_injectivity() -> usize {
    40
}

impl Default for Params {
    fn default() -> Self {
        serde_json::from_str("{}").unwrap()
    }
}

impl Scenario {
    pub fn from_path(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let sc: Scenario = serde_json::from_str(&text)?;
        sc.validate()?;
        Ok(sc)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.version != 1 {
            return Err(ConfigError::Validation(format!(
                "unsupported version {}",
                self.version
            )));
        }
        if let Some(rho) = &self.params.rho {
            if rho.iter().any(|&r| !(0.0..1.0).contains(&r) || r == 0.0) {
                return Err(ConfigError::Validation(
                    "rho parameters must lie in (0, 1)".into(),
                ));
            }
        }
        if self.observers.count == 0 {
            return Err(ConfigError::Validation(
                "observer count must be positive".into(),
            ));
        }
        if self.params.grid_h <= 0.0 {
            return Err(ConfigError::Validation("grid_h must be positive".into()));
        }
        if !(1..=2).contains(&self.params.interaction_dim) {
            return Err(ConfigError::Validation(
                "interaction_dim must be 1 or 2".into(),
            ));
        }
        Ok(())
    }
}
