//! Truncated series: exact rational (in `t` or in `u = q^{1/2}`) and
//! high-precision complex with logarithmic parts.
//!
//! Truncation orders propagate as the minimum of the operands everywhere.

mod halfq;
mod logseries;
mod rational;

pub use halfq::{BivariateQZSeries, RationalHalfQSeries};
pub use logseries::{LogSeries, MAX_LOG_POWER};
pub use rational::RatSeries;

pub(crate) use logseries::horner;
