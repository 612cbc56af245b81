use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReconError {
    #[error(transparent)]
    Geometry(#[from] causal_geometry::GeomError),

    #[error("tuple rejected: {0:?}")]
    Inadmissible(Vec<String>),

    #[error("geodesic meets the central observer worldline (distance {0})")]
    MeetsObserver(f64),

    #[error("scan budget exhausted; best spread {spread}")]
    ScanBudget { spread: f64 },

    #[error("coverage gap at target {target:?}; nearest achieved tuple at distance {distance}")]
    CoverageGap { target: [f64; 4], distance: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}
