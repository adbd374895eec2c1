//! Dyson's identities recovered from the exact formula.

use rug::{Complex, Float, Integer};
use serde::Serialize;

use super::exact::{default_c_max, MainFormula};
use crate::arith::{phase_to_complex, PhaseRational, PrecisionConfig};
use crate::error::{Error, Result};
use crate::partition::{partition_numbers, DysonIdentity};

/// Tolerance for the reconstructed identities.
pub const SERIES_TOLERANCE: f64 = 1e-2;

#[derive(Clone, Debug, Serialize)]
pub struct AnalyticDysonCheck {
    pub n: i64,
    /// `N(a, p; n)` for `a = 0..p` reconstructed from the series.
    pub counts: Vec<f64>,
    /// Largest violation of the identity's relations.
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyticDysonReport {
    pub identity: DysonIdentity,
    pub n_max: i64,
    pub tolerance: f64,
    pub checks: Vec<AnalyticDysonCheck>,
    pub pass: bool,
}

/// `p N(a, p; n) = p(n) + sum_j zeta_p^{-aj} A(j/p; n)` with every `A(j/p; n)`
/// from the exact formula at the default truncation for `n_max`.
pub fn dyson_via_kloosterman(p: i64, k: i64, n_max: i64, cfg: &PrecisionConfig) -> Result<AnalyticDysonReport> {
    let identity: DysonIdentity = format!("{p}-{k}").parse()?;
    if n_max < k {
        return Err(Error::BadInput(format!("n_max = {n_max} is below the first argument {k}")));
    }
    let c_max = default_c_max(p, n_max);
    let formula = MainFormula::new(p, c_max, c_max / p)?;
    let partitions = partition_numbers(n_max as usize);
    let relations = identity.relations();
    let mut checks = Vec::new();
    for n in (k..=n_max).step_by(p as usize).filter(|&n| n >= 1) {
        let mut a_values = vec![cfg.real(0); p as usize];
        for j in 1..=(p - 1) / 2 {
            let v = Float::with_val(cfg.working_bits, formula.evaluate(j, n, cfg)?.value.real());
            a_values[(p - j) as usize] = v.clone();
            a_values[j as usize] = v;
        }
        let total = Float::with_val(cfg.working_bits, &partitions[n as usize]);
        let counts: Vec<Float> = (0..p)
            .map(|a| {
                let mut acc = Complex::with_val(cfg.working_bits, (&total, 0));
                for j in 1..p {
                    acc += phase_to_complex(&PhaseRational::from_ratio(-a * j, p), cfg) * &a_values[j as usize];
                }
                Float::with_val(cfg.working_bits, acc.real()) / p
            })
            .collect();
        let residual = relations
            .iter()
            .map(|rel| {
                let s =
                    rel.iter().fold(cfg.real(0), |acc, &(a, coeff)| acc + Float::with_val(cfg.working_bits, &counts[a as usize] * coeff));
                s.abs().to_f64()
            })
            .fold(0.0, f64::max);
        checks.push(AnalyticDysonCheck {
            n,
            counts: counts.iter().map(Float::to_f64).collect(),
            residual,
            pass: residual < SERIES_TOLERANCE,
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(AnalyticDysonReport { identity, n_max, tolerance: SERIES_TOLERANCE, checks, pass })
}

/// Rounds reconstructed counts; `None` when any is not within the tolerance
/// of an integer.
pub fn rounded_counts(check: &AnalyticDysonCheck) -> Option<Vec<Integer>> {
    check.counts.iter().map(|&c| ((c - c.round()).abs() < SERIES_TOLERANCE).then(|| Integer::from(c.round() as i64))).collect()
}
