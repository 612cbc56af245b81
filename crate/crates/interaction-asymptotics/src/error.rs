use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymError {
    #[error("invalid parameter: {0}")]
    BadParameter(String),

    /// Two frame covectors with vanishing Gram pairing cannot feed the
    /// formal parametrix.
    #[error("singular pair: g(b^({0}), b^({1})) = 0")]
    SingularPair(usize, usize),

    #[error("expression is not a product of exactly two active factors")]
    NotAPair,

    #[error("derivative orders violate the admissibility table for {0}")]
    ConstraintViolation(String),

    #[error("covector is not null")]
    NotNull,

    #[error("quadrature tolerance not met: achieved {achieved}, requested {requested}")]
    QuadratureTolerance { achieved: f64, requested: f64 },

    #[error("oscillatory frequency vanishes for factor {0} (singular pair)")]
    ZeroFrequency(usize),
}
