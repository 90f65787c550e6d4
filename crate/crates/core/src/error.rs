//! Crate error type.

use std::fmt;

use crate::integrators::Scheme;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A channel parameter (decay rate or duration) was negative.
    InvalidChannelParam { name: &'static str, value: f64 },
    /// A matrix passed to a unitary conjugation was not unitary.
    NonUnitary { defect: f64 },
    /// Two trajectories were compared on different time grids.
    GridMismatch(String),
    /// The requested scheme has no adjoint recursion.
    UnsupportedScheme(Scheme),
    /// Invalid problem configuration.
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidChannelParam { name, value } => {
                write!(
                    f,
                    "channel parameter {name} must be non-negative, got {value}"
                )
            }
            Error::NonUnitary { defect } => {
                write!(f, "matrix is not unitary (‖U†U − I‖_F = {defect:.3e})")
            }
            Error::GridMismatch(msg) => write!(f, "time-grid mismatch: {msg}"),
            Error::UnsupportedScheme(s) => {
                write!(f, "scheme {s} has no adjoint recursion")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
