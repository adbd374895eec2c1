//! Scalar Kloosterman sums attached to a multiplier system.

use rug::{Complex, Rational};

use super::matrix::UnimodularMatrix;
use super::multiplier::Multiplier;
use crate::arith::modular::units;
use crate::arith::{PhaseSum, PrecisionConfig};
use crate::error::{Error, Result};

/// Exact phase multiset of `S(m, n, c, nu)`.
pub fn scalar_kloosterman_phases(m: i64, n: i64, c: i64, nu: &dyn Multiplier, alpha: &Rational) -> Result<PhaseSum> {
    if c < 1 {
        return Err(Error::BadInput(format!("Kloosterman modulus {c} < 1")));
    }
    let m_shift = Rational::from(m) - alpha;
    let n_shift = Rational::from(n) - alpha;
    let mut sum = PhaseSum::new();
    for d in units(c) {
        let g = UnimodularMatrix::from_bottom_row(c, d)?;
        let linear = (Rational::from(&m_shift * g.a) + Rational::from(&n_shift * d)) / c;
        let phase = &nu.phase(&g)?.conj() + &linear;
        sum.push(phase, 1);
    }
    Ok(sum)
}

/// `S(m, n, c, nu) = sum_{d mod c}^* conj(nu(gamma)) e((m~ a + n~ d)/c)` with
/// `x~ = x - alpha`.
pub fn scalar_kloosterman(m: i64, n: i64, c: i64, nu: &dyn Multiplier, alpha: &Rational, cfg: &PrecisionConfig) -> Result<Complex> {
    Ok(scalar_kloosterman_phases(m, n, c, nu, alpha)?.evaluate(cfg))
}
