//! Multiple zeta values, zeta-star values and the Euler sums
//! `G_{n+2}(p, q) = sum_K zeta_{K-1}({1}^p) K^-(n+2) zeta*_K({1}^q)`,
//! together with a catalog of identities relating them.

pub mod engine;
pub mod error;
pub mod euler;
pub mod finite;
pub mod identities;
pub mod indices;
pub mod numerics;
pub mod quadrature;

pub use engine::{Evaluator, SeriesEvaluation};
pub use error::{Error, Result};
pub use finite::SumKind;
pub use indices::MultiIndex;
pub use numerics::{PrecisionConfig, ValueWithError};
