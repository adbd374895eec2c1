//! Exact-oracle values `A(l/b; n) = sum_m N(m, n) cos(2 pi l m / b)`.

use rug::{Complex, Float, Integer};

use super::rank::{rank_mod_counts, RankTable};
use crate::arith::{phase_to_complex, PhaseRational, PrecisionConfig};
use crate::error::{Error, Result};

/// `A(l/b; n)` together with the integer data it is built from.
#[derive(Clone, Debug)]
pub struct OracleValue {
    pub ell: i64,
    pub b: i64,
    pub n: usize,
    pub value: Float,
    /// `N(r, b; n)` for `r = 0..b`; the value is `sum_r counts[r] cos(2 pi l r / b)`.
    pub residue_counts: Vec<i128>,
}

fn residue_counts(b: i64, n: usize, table: &RankTable) -> Result<Vec<i128>> {
    (0..b).map(|r| rank_mod_counts(r, b, n, table)).collect()
}

pub fn coefficient_oracle(ell: i64, b: i64, n: usize, table: &RankTable, cfg: &PrecisionConfig) -> Result<OracleValue> {
    if b < 2 || ell < 1 || ell >= b {
        return Err(Error::BadInput(format!("need 1 <= l < b, got l = {ell}, b = {b}")));
    }
    if n < 1 {
        return Err(Error::BadInput("n must be positive".into()));
    }
    let counts = residue_counts(b, n, table)?;
    let mut value = Float::new(cfg.working_bits);
    for (r, &count) in counts.iter().enumerate() {
        let z = phase_to_complex(&PhaseRational::from_ratio(ell * r as i64, b), cfg);
        value += Float::with_val(cfg.working_bits, z.real() * Integer::from(count));
    }
    Ok(OracleValue { ell, b, n, value, residue_counts: counts })
}

/// Checks `b N(a, b; n) = p(n) + sum_{j=1}^{b-1} zeta_b^{-aj} A(j/b; n)` with
/// the right side evaluated in floating point under a rounding bound that
/// stays below 1/2. Returns the observed deviation.
pub fn verify_rank_inversion(a: i64, b: i64, n: usize, table: &RankTable, cfg: &PrecisionConfig) -> Result<Float> {
    let bits = cfg.working_bits;
    let total = Integer::from(table.total(n)?);
    let mut rhs = Complex::with_val(bits, (&total, 0));
    let mut magnitude = Float::with_val(bits, &total);
    for j in 1..b {
        let aj = coefficient_oracle(j, b, n, table, cfg)?;
        let twist = phase_to_complex(&PhaseRational::from_ratio(-a * j, b), cfg);
        magnitude += Float::with_val(bits, aj.value.abs_ref());
        rhs += twist * &aj.value;
    }
    let lhs = Integer::from(rank_mod_counts(a, b, n, table)?) * b;
    let deviation = Float::with_val(bits, (rhs - Complex::with_val(bits, (&lhs, 0))).abs().real());
    // Each term carries O(b) roundings of relative size 2^{1-P}.
    let mut bound = magnitude * Float::with_val(bits, 2 * b * b);
    bound >>= bits - 8;
    if bound >= 0.5 {
        return Err(Error::BadInput(format!("precision {bits} too low for an exact check at n = {n}")));
    }
    if deviation > bound {
        return Err(Error::BadInput(format!("rank inversion failed for a = {a}, b = {b}, n = {n}")));
    }
    Ok(deviation)
}
