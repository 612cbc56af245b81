use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WaveError {
    #[error("CFL violation: dt sqrt(d)/h = {ratio} exceeds {max}")]
    CflViolation { ratio: f64, max: f64 },

    #[error("domain of influence of the source exits the box at t = {t}")]
    SupportEscape { t: f64 },

    #[error("solution blew up at t = {t}: |u| = {magnitude}")]
    BlowUp { t: f64, magnitude: f64 },

    #[error("pulses do not intersect: miss distance {miss}")]
    NoIntersection { miss: f64 },

    #[error("{what} needs at least {needed} samples, got {got}")]
    TooFewSamples {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("remainder fit is floor-dominated: remainder {remainder} vs floor estimate {floor}")]
    FloorDominated { remainder: f64, floor: f64 },

    #[error("unsupported source kind for the closed-form inverse")]
    UnsupportedSource,

    #[error("invalid configuration: {0}")]
    BadConfig(String),
}
