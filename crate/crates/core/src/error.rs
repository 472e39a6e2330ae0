use thiserror::Error;

use crate::indices::MultiIndex;

/// Errors raised by the evaluation routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A nonempty index whose last entry is 1; the series diverges.
    #[error("divergent series: index {0} has last exponent 1 (ascending convention needs last entry >= 2)")]
    Divergent(MultiIndex),

    /// Arguments outside the supported domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Level-to-level differences of the quadrature did not shrink.
    #[error("quadrature did not converge at level {level}: difference {last_diff:e} after {prev_diff:e}")]
    QuadratureNonConvergence {
        level: u32,
        prev_diff: f64,
        last_diff: f64,
    },

    #[error("invalid precision configuration: {0}")]
    Config(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("parameter `{name}` = {value} outside declared range {min}..={max} for `{id}`")]
    ParamOutOfRange {
        id: String,
        name: String,
        value: u32,
        min: u32,
        max: u32,
    },

    #[error("invalid parameters for `{id}`: {reason}")]
    InvalidParams { id: String, reason: String },

    #[error("cannot parse index `{input}`: {reason}")]
    IndexParse { input: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
