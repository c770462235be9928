//! Exact computation and verification of the quantized 3D reflection
//! intertwiner K and the 3D R over Laurent polynomials in q.

pub mod cache;
pub mod error;
pub mod exactq;
pub mod golden;
pub mod multipoly;
pub mod qfamily;
pub mod report;
pub mod tensorops;
pub mod threedk;
pub mod threedr;

use num_bigint::BigInt;

pub use error::{Error, Result};
pub use report::{Failure, VerificationReport};

pub type LaurentQ = exactq::Laurent<BigInt>;
pub type RationalQ = exactq::Rational<BigInt>;
pub type PowerSeriesU = exactq::PowerSeries<BigInt>;
pub type MultiPolyQ<const N: usize> = multipoly::MultiPoly<BigInt, N>;
/// Polynomials in `x, y, z, w`.
pub type QPoly = MultiPolyQ<4>;
/// Polynomials in `x, y, z`.
pub type PPoly = MultiPolyQ<3>;
