use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch: expected {expected} values, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("coordinates are not strictly increasing at index {index}")]
    NotIncreasing { index: usize },

    #[error("reconstruction point {c_star} outside admissible window [{lo}, {hi}]")]
    LocationConstraint { c_star: f64, lo: f64, hi: f64 },

    #[error("non-finite value at interface {interface}")]
    NonFiniteFlux { interface: usize },

    #[error("non-finite state after {steps} steps")]
    NonFiniteState { steps: usize },

    #[error("characteristic solve did not converge at x = {x}, t = {t}")]
    NoConvergence { x: f64, t: f64 },

    #[error("underflow in the scalar backend at level {level}")]
    Underflow { level: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Shape { .. } => "shape",
            Error::NotIncreasing { .. } => "not_increasing",
            Error::LocationConstraint { .. } => "location_constraint",
            Error::NonFiniteFlux { .. } => "non_finite_flux",
            Error::NonFiniteState { .. } => "non_finite_state",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Underflow { .. } => "underflow",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
