use thiserror::Error;

use crate::complex::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("expected a polytope of dimension {expected}, got dimension {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("invalid point configuration: {0}")]
    InvalidConfiguration(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("piecewise linear function is not convex across cones {0} and {1}")]
    NonConvex(usize, usize),

    #[error("unknown dataset `{0}`")]
    UnknownDataset(String),

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("io error: {0}")]
    Io(String),

    #[error("degeneration complex `{}` failed validation: {}", .0.name, .0.messages.join("; "))]
    InvalidComplex(Box<ValidationReport>),

    #[error("guard exceeded: {0}")]
    Guard(String),

    #[error("invalid monodromy data: {0}")]
    InvalidMonodromy(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
