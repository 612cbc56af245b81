use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    /// A geodesic left the configured working box before the requested parameter.
    #[error("geodesic left the working domain at parameter {exit_param} (requested {requested})")]
    DomainExit { exit_param: f64, requested: f64 },

    /// Numeric maximization / bisection did not reach the requested tolerance.
    #[error("tolerance not met in {what}: achieved {achieved}, requested {requested}")]
    ToleranceNotMet {
        what: &'static str,
        achieved: f64,
        requested: f64,
    },

    /// An event is outside the causal diamond required by the operation.
    #[error("event not inside the required causal diamond")]
    OutOfDiamond,

    /// A vector had the wrong causal class for the operation.
    #[error("expected a {expected} vector")]
    WrongCausalClass { expected: &'static str },

    /// The fan resolution was insufficient to pin down an arrival parameter.
    #[error("fan resolution insufficient: arrival jumps by {jump} between adjacent rays")]
    FanResolution { jump: f64 },

    #[error("invalid metric parameter: {0}")]
    BadMetric(String),
}
