use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Extra binary digits carried beyond the requested decimal precision.
pub const GUARD_BITS: u32 = 32;

pub const MIN_DIGITS: u32 = 15;
pub const MIN_CUTOFF: u64 = 100;
pub const MIN_QUAD_LEVEL: u32 = 3;

/// Working precision and truncation settings shared by every evaluator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Significant decimal digits of the working arithmetic.
    pub digits: u32,
    /// Series truncation index N.
    pub cutoff: u64,
    /// Apply the asymptotic tail correction to truncated series.
    pub extrapolate: bool,
    /// Refinement level of the double-exponential quadrature.
    pub quad_level: u32,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            digits: 30,
            cutoff: 100_000,
            extrapolate: true,
            quad_level: 10,
        }
    }
}

impl PrecisionConfig {
    pub fn new(digits: u32, cutoff: u64, extrapolate: bool, quad_level: u32) -> Result<Self> {
        let cfg = PrecisionConfig {
            digits,
            cutoff,
            extrapolate,
            quad_level,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.digits < MIN_DIGITS {
            return Err(Error::Config(format!(
                "digits must be >= {MIN_DIGITS}, got {}",
                self.digits
            )));
        }
        if self.cutoff < MIN_CUTOFF {
            return Err(Error::Config(format!(
                "cutoff must be >= {MIN_CUTOFF}, got {}",
                self.cutoff
            )));
        }
        if self.quad_level < MIN_QUAD_LEVEL {
            return Err(Error::Config(format!(
                "quad_level must be >= {MIN_QUAD_LEVEL}, got {}",
                self.quad_level
            )));
        }
        Ok(())
    }

    pub fn with_digits(mut self, digits: u32) -> Self {
        self.digits = digits;
        self
    }

    pub fn with_cutoff(mut self, cutoff: u64) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn with_extrapolate(mut self, extrapolate: bool) -> Self {
        self.extrapolate = extrapolate;
        self
    }

    pub fn with_quad_level(mut self, quad_level: u32) -> Self {
        self.quad_level = quad_level;
        self
    }

    /// Binary precision of working floats, guard bits included.
    pub fn bits(&self) -> u32 {
        (f64::from(self.digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }

    /// Nominal relative accuracy promised to callers, `10^-digits`.
    pub fn nominal_eps(&self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }
}
