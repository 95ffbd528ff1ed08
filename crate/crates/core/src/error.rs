use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point outside the Hopf chart: {0}")]
    Domain(String),

    #[error("invalid mode index: {0}")]
    InvalidIndex(String),

    #[error("derivative of order {needed} requested from a jet of order {available}")]
    MissingDerivatives { needed: usize, available: usize },

    #[error("form degree {0} is out of range for this operation")]
    Degree(usize),

    #[error("unsupported scalar-product pair ({0}, {1})")]
    UnsupportedPair(String, String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("grid exact up to L = {grid}, but L = {requested} requested")]
    GridUnderResolved { grid: u32, requested: u32 },

    #[error("finite-difference stencil leaves the chart at alpha = {0}")]
    StencilOutOfDomain(f64),

    #[error("evaluation failed at (alpha, theta, phi) = ({alpha}, {theta}, {phi}): {source}")]
    Evaluation {
        alpha: f64,
        theta: f64,
        phi: f64,
        source: Box<Error>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
