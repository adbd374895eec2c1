//! The exact series for `A(1/2; n)` and `A(1/3; n)`.
//!
//! Both are built from the sums `A_c(n)` evaluated through their factored
//! quadratic-root form in double precision, which keeps truncations of
//! `10^6` terms within seconds. Prefactors and accumulation use the working
//! precision.

use std::time::Instant;

use rayon::prelude::*;
use rug::{Complex, Float};

use super::bessel::i_half_f64;
use super::report::{trace_bounds, SeriesReport, TracePoint};
use crate::arith::{FactorSieve, PhaseRational, PrecisionConfig};
use crate::error::{Error, Result};
use crate::eta::SalieModulus;
use crate::partition::{coefficient_oracle, rank_table, RANK_TABLE_LIMIT};

/// Precision of the individual terms.
pub const TERM_BITS: u32 = 53;

fn check(n: i64, c_max: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::BadInput(format!("n = {n} must be positive")));
    }
    if c_max < 1 {
        return Err(Error::BadInput(format!("c_max = {c_max} must be positive")));
    }
    Ok(())
}

fn oracle(ell: i64, b: i64, n: i64, cfg: &PrecisionConfig) -> Result<Option<Float>> {
    let n = n as usize;
    if n > RANK_TABLE_LIMIT {
        return Ok(None);
    }
    let table = rank_table(n)?;
    Ok(Some(coefficient_oracle(ell, b, n, &table, cfg)?.value))
}

/// The running sums of one series at many `n` at once.
///
/// Moduli are visited block by block between consecutive trace bounds; each
/// block is summed in double precision per `n` and then added into the
/// working-precision totals.
fn accumulate_batch<F>(ns: &[i64], moduli: &[i64], step: i64, c_max: i64, term: F, cfg: &PrecisionConfig) -> Vec<(Float, Vec<(i64, Float)>)>
where
    F: Fn(i64, &[i64], &mut [f64]) + Sync,
{
    let bounds = trace_bounds(step, c_max);
    let mut totals: Vec<Float> = ns.iter().map(|_| cfg.real(0)).collect();
    let mut traces: Vec<Vec<(i64, Float)>> = ns.iter().map(|_| Vec::with_capacity(bounds.len())).collect();
    let mut start = 0;
    for &bound in &bounds {
        let end = start + moduli[start..].partition_point(|&c| c <= bound);
        let block = moduli[start..end]
            .par_iter()
            .fold(
                || (vec![0.0f64; ns.len()], vec![0.0f64; ns.len()], vec![0.0f64; ns.len()]),
                |(mut sum, mut carry, mut scratch), &c| {
                    term(c, ns, &mut scratch);
                    for i in 0..ns.len() {
                        // Neumaier summation
                        let t = sum[i] + scratch[i];
                        carry[i] += if sum[i].abs() >= scratch[i].abs() { (sum[i] - t) + scratch[i] } else { (scratch[i] - t) + sum[i] };
                        sum[i] = t;
                    }
                    (sum, carry, scratch)
                },
            )
            .map(|(sum, carry, _)| sum.into_iter().zip(carry).collect::<Vec<_>>())
            .reduce(|| vec![(0.0, 0.0); ns.len()], |a, b| a.into_iter().zip(b).map(|(x, y)| (x.0 + y.0, x.1 + y.1)).collect());
        for (i, (s, c)) in block.into_iter().enumerate() {
            totals[i] += s;
            totals[i] += c;
            traces[i].push((bound, totals[i].clone()));
        }
        start = end;
    }
    totals.into_iter().zip(traces).collect()
}

fn scaled_trace(trace: Vec<(i64, Float)>, factor: &Complex) -> Vec<TracePoint> {
    trace.into_iter().map(|(bound, v)| TracePoint { bound, value: Complex::with_val(factor.prec().0, factor * &v) }).collect()
}

/// `A(1/2; n) = pi (24n-1)^{-1/4} sum_c (-1)^{floor((c+1)/2)} A_{2c}(n - c(1+(-1)^c)/4) / c
/// I_{1/2}(pi sqrt(24n-1) / 12c)`.
pub fn andrews_dragonette(n: i64, c_max: i64, cfg: &PrecisionConfig) -> Result<SeriesReport> {
    Ok(andrews_dragonette_batch(&[n], c_max, cfg)?.remove(0))
}

/// [`andrews_dragonette`] for several `n`, sharing the work per modulus.
pub fn andrews_dragonette_batch(ns: &[i64], c_max: i64, cfg: &PrecisionConfig) -> Result<Vec<SeriesReport>> {
    for &n in ns {
        check(n, c_max)?;
    }
    let started = Instant::now();
    let sieve = FactorSieve::new(2 * c_max as u64);
    let roots: Vec<f64> = ns.iter().map(|&n| ((24 * n - 1) as f64).sqrt()).collect();
    let moduli: Vec<i64> = (1..=c_max).collect();
    let term = |c: i64, ns: &[i64], out: &mut [f64]| {
        let salie = SalieModulus::new(2 * c as u64, &sieve.factorize(2 * c as u64));
        let shift = if c % 2 == 0 { c / 2 } else { 0 };
        let sign = if ((c + 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        for (i, &n) in ns.iter().enumerate() {
            let a = salie.a_value(n - shift);
            out[i] = if a == 0.0 { 0.0 } else { sign * a / c as f64 * i_half_f64(std::f64::consts::PI * roots[i] / (12.0 * c as f64)) };
        }
    };
    let sums = accumulate_batch(ns, &moduli, 1, c_max, term, cfg);
    ns.iter()
        .zip(sums)
        .map(|(&n, (total, trace))| {
            let front = cfg.pi() / cfg.real(24 * n - 1).sqrt().sqrt();
            let factor = Complex::with_val(cfg.working_bits, (&front, 0));
            let value = Complex::with_val(cfg.working_bits, &factor * &total);
            Ok(SeriesReport::assemble(
                format!("A(1/2; {n})"),
                vec![("n".into(), n.to_string())],
                (c_max, None, None),
                scaled_trace(trace, &factor),
                value,
                true,
                oracle(1, 2, n, cfg)?,
                TERM_BITS,
                started,
            ))
        })
        .collect()
}

/// `R` with `S(0, n, c, (.|3) conj(nu_eta)) = e(-3/8) R / sqrt 3` for `3 | c`,
/// namely `R = A_c(n + c/3) - A_c(n + 2c/3)`.
pub fn twisted_eta_kloosterman_real(n: i64, c: u64, factors_of_c: &[(u64, u32)]) -> f64 {
    twisted_real(&SalieModulus::new(c, factors_of_c), n)
}

fn twisted_real(salie: &SalieModulus, n: i64) -> f64 {
    let third = (salie.c() / 3) as i64;
    salie.a_value(n + third) - salie.a_value(n + 2 * third)
}

/// `A(1/3; n) = 2 pi e(-1/8) (24n-1)^{-1/4} sum_{3|c} S(0, n, c, (.|3) conj(nu_eta)) / c
/// I_{1/2}(pi sqrt(24n-1) / 6c)`.
pub fn mod3_series(n: i64, c_max: i64, cfg: &PrecisionConfig) -> Result<SeriesReport> {
    Ok(mod3_series_batch(&[n], c_max, cfg)?.remove(0))
}

/// [`mod3_series`] for several `n`, sharing the work per modulus.
pub fn mod3_series_batch(ns: &[i64], c_max: i64, cfg: &PrecisionConfig) -> Result<Vec<SeriesReport>> {
    for &n in ns {
        check(n, c_max)?;
    }
    let started = Instant::now();
    let sieve = FactorSieve::new(c_max as u64);
    let roots: Vec<f64> = ns.iter().map(|&n| ((24 * n - 1) as f64).sqrt()).collect();
    let moduli: Vec<i64> = (3..=c_max).step_by(3).collect();
    let term = |c: i64, ns: &[i64], out: &mut [f64]| {
        let salie = SalieModulus::new(c as u64, &sieve.factorize(c as u64));
        for (i, &n) in ns.iter().enumerate() {
            let r = twisted_real(&salie, n);
            out[i] = if r == 0.0 { 0.0 } else { r / c as f64 * i_half_f64(std::f64::consts::PI * roots[i] / (6.0 * c as f64)) };
        }
    };
    let sums = accumulate_batch(ns, &moduli, 3.min(c_max), c_max, term, cfg);
    let phase = PhaseRational::from_ratio(-1, 2).to_complex(cfg);
    ns.iter()
        .zip(sums)
        .map(|(&n, (total, trace))| {
            let modulus = cfg.pi() * 2u32 / (cfg.real(3).sqrt() * cfg.real(24 * n - 1).sqrt().sqrt());
            let factor = Complex::with_val(cfg.working_bits, &phase * &modulus);
            let value = Complex::with_val(cfg.working_bits, &factor * &total);
            Ok(SeriesReport::assemble(
                format!("A(1/3; {n})"),
                vec![("n".into(), n.to_string())],
                (c_max, None, None),
                scaled_trace(trace, &factor),
                value,
                false,
                oracle(1, 3, n, cfg)?,
                TERM_BITS,
                started,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;
    use crate::eta::{scalar_kloosterman, Conjugate, Eta, KroneckerTwist};
    use rug::Rational;

    #[test]
    fn twisted_sum_matches_definition() {
        let cfg = PrecisionConfig::default();
        let nu = KroneckerTwist { modulus: 3, inner: Conjugate(Eta) };
        let alpha = Rational::from((1, 24));
        let rot = PhaseRational::from_ratio(-3, 8).to_complex(&cfg);
        for c in (3..120).step_by(3) {
            for n in [1, 2, 7, 30] {
                let exact = scalar_kloosterman(0, n, c, &nu, &alpha, &cfg).unwrap();
                let r = twisted_eta_kloosterman_real(n, c as u64, &factorize(c as u64));
                let fast = Complex::with_val(256, &rot * r) / cfg.real(3).sqrt();
                let gap = Complex::with_val(256, &exact - &fast).abs().real().to_f64();
                assert!(gap < 1e-9, "c={c} n={n}: {gap}");
            }
        }
    }

    #[test]
    fn small_coefficients() {
        let cfg = PrecisionConfig::default();
        let r = andrews_dragonette(1, 2000, &cfg).unwrap();
        assert_eq!(r.nearest_integer.as_ref().map(|v| v.to_i64()), Some(Some(1)));
        let r = andrews_dragonette(3, 2000, &cfg).unwrap();
        assert_eq!(r.nearest_integer.as_ref().map(|v| v.to_i64()), Some(Some(3)));
        let r = mod3_series(1, 2000, &cfg).unwrap();
        assert!(r.gap_f64().unwrap() < 0.05);
        assert!(r.value.imag().clone().abs() < 1e-30);
    }

    #[test]
    fn batch_matches_single() {
        let cfg = PrecisionConfig::default();
        let batch = andrews_dragonette_batch(&[2, 9, 14], 400, &cfg).unwrap();
        for r in &batch {
            let n: i64 = r.params[0].1.parse().unwrap();
            let single = andrews_dragonette(n, 400, &cfg).unwrap();
            let gap = Complex::with_val(256, &r.value - &single.value).abs().real().to_f64();
            assert!(gap < 1e-12, "n={n}: {gap}");
        }
    }

    #[test]
    fn trace_ends_at_value() {
        let cfg = PrecisionConfig::default();
        let r = mod3_series(5, 300, &cfg).unwrap();
        let last = r.trace.last().unwrap();
        assert_eq!(last.bound, 300);
        assert_eq!(last.value, r.value);
    }
}
