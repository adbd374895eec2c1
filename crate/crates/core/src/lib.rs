//! Exact Rademacher-type series for the Fourier coefficients `A(l/p; n)` of
//! Dyson's rank generating function, together with the multiplier systems,
//! Kloosterman sums and combinatorial oracles they are checked against.

pub mod arith;
pub mod error;
pub mod eta;
pub mod geometry;
pub mod kloosterman;
pub mod mup;
pub mod partition;
pub mod selftest;
pub mod series;

pub use arith::{BigComplex, BigFloat, PhaseRational, PrecisionConfig, RationalNumber, SummationMode};
pub use error::{Error, Result};
