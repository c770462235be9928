//! Exact arithmetic over Z[q, q^-1]: Laurent polynomials, ratios of them,
//! q-Pochhammer symbols, multi-index q-factorial symbols and truncated power
//! series in an auxiliary variable `u`.
//!
//! Everything is generic over the integer coefficient ring ([`Coeff`]); the
//! crate root fixes `BigInt` through type aliases.

mod coeff;
mod laurent;
mod pochhammer;
mod rational;
mod series;

pub use coeff::Coeff;
pub use laurent::Laurent;
pub use pochhammer::{q_factorial, q_pochhammer, q_symbol, q_symbol_product, QMonomial};
pub use rational::{QProduct, Rational};
pub use series::{euler_factor_series, PowerSeries};
