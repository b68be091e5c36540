use thiserror::Error;

use crate::flow::Trajectory;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter a{index} = {value} is outside (0, 1/2]")]
    ParamOutOfRange { index: usize, value: f64 },

    #[error("invalid family parameters for row {row}: {reason}")]
    InvalidFamily { row: u8, reason: String },

    #[error("metric component x{index} = {value} is not a positive finite number")]
    InvalidMetric { index: usize, value: f64 },

    #[error("{what}: argument {value} outside domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("degenerate cubic: leading coefficient is zero")]
    DegenerateCubic,

    #[error("reduced system is singular at (x, y) = ({x}, {y})")]
    Singularity { x: f64, y: f64 },

    /// Carries the trajectory up to the last valid state.
    #[error("trajectory blew up after t = {}", .0.last().t)]
    BlowUp(Box<Trajectory>),

    /// Carries the trajectory up to the last finite state.
    #[error("non-finite value produced after t = {}", .0.last().t)]
    NumericFailure(Box<Trajectory>),

    #[error("could not sample a generic point in the positive region after {attempts} attempts")]
    Sampling { attempts: usize },

    #[error("invalid integration controls: {0}")]
    InvalidControls(String),
}

impl Error {
    /// True for failures that come from the numerics rather than from bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Singularity { .. } | Error::BlowUp(_) | Error::NumericFailure(_) | Error::Sampling { .. }
        )
    }
}

impl Error {
    /// The trajectory computed before an integration failure.
    pub fn partial_trajectory(&self) -> Option<&Trajectory> {
        match self {
            Error::BlowUp(tr) | Error::NumericFailure(tr) => Some(tr),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
