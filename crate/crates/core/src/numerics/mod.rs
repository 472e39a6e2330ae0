//! Extended-precision substrate: exact rationals, Bernoulli numbers,
//! binomials, pi and zeta at integers.

mod combinatorics;
pub mod pi;
mod precision;
mod rational;
mod value;
mod zeta;

pub use combinatorics::{bernoulli, binomial, factorial};
pub use precision::{PrecisionConfig, GUARD_BITS, MIN_CUTOFF, MIN_DIGITS, MIN_QUAD_LEVEL};
pub use rational::RationalNumber;
pub use value::{decimal_string, sum_values, ValueWithError};
pub use zeta::riemann_zeta;
