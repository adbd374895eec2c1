//! Rademacher's convergent series for `p(n)`.

use std::time::Instant;

use rug::{Complex, Float};

use super::report::{trace_bounds, SeriesReport, TracePoint};
use crate::arith::PrecisionConfig;
use crate::error::{Error, Result};
use crate::eta::classical_a_c;
use crate::partition::partition_numbers;

/// `d/dn [sinh(K sqrt(l) / c) / sqrt(l)]` at `l = n - 1/24`, `K = pi sqrt(2/3)`:
/// `(K / 2c l) cosh(mu) - sinh(mu) / (2 l^{3/2})` with `mu = K sqrt(l) / c`.
fn derivative_weight(lambda: &Float, c: i64, cfg: &PrecisionConfig) -> Float {
    let k = cfg.pi() * (cfg.real(2) / 3u32).sqrt();
    let root = Float::with_val(cfg.working_bits, lambda.sqrt_ref());
    let mu = Float::with_val(cfg.working_bits, &k * &root) / c;
    let (sinh, cosh) = mu.sinh_cosh(cfg.real(0));
    let first = k / (Float::with_val(cfg.working_bits, lambda * c) * 2u32) * cosh;
    let second = sinh / (Float::with_val(cfg.working_bits, lambda * &root) * 2u32);
    first - second
}

/// `p(n) = (1 / pi sqrt 2) sum_{c <= c_max} A_c(n) sqrt(c) d/dn[...]`.
pub fn rademacher_p(n: i64, c_max: i64, cfg: &PrecisionConfig) -> Result<SeriesReport> {
    if n < 1 {
        return Err(Error::BadInput(format!("n = {n} must be positive")));
    }
    if c_max < 1 {
        return Err(Error::BadInput(format!("c_max = {c_max} must be positive")));
    }
    let started = Instant::now();
    let lambda = cfg.real(n) - cfg.real(1) / 24u32;
    let front = cfg.real(1) / (cfg.pi() * cfg.real(2).sqrt());
    let bounds = trace_bounds(1, c_max);
    let mut trace = Vec::with_capacity(bounds.len());
    let mut value = cfg.zero();
    let mut next = 0;
    for c in 1..=c_max {
        let a = classical_a_c(c, n, cfg)?;
        let w = derivative_weight(&lambda, c, cfg) * cfg.real(c).sqrt() * &front;
        value += a * w;
        if bounds[next] == c {
            trace.push(TracePoint { bound: c, value: value.clone() });
            next += 1;
        }
    }
    let oracle = usize::try_from(n).ok().filter(|&n| n <= 20_000).map(|n| {
        let p = partition_numbers(n).pop().expect("nonempty");
        Float::with_val(cfg.working_bits, p)
    });
    let value = Complex::with_val(cfg.working_bits, value);
    Ok(SeriesReport::assemble(
        format!("p({n})"),
        vec![("n".into(), n.to_string())],
        (c_max, None, None),
        trace,
        value,
        true,
        oracle,
        cfg.working_bits,
        started,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Integer;

    #[test]
    fn small_values_round() {
        let cfg = PrecisionConfig::default();
        let r = rademacher_p(4, 10, &cfg).unwrap();
        assert_eq!(r.nearest_integer, Some(Integer::from(5)));
        let r = rademacher_p(100, 20, &cfg).unwrap();
        assert_eq!(r.nearest_integer, Some(Integer::from(190_569_292)));
        assert!(r.margin < 0.4);
    }

    #[test]
    fn two_hundred_matches_recurrence() {
        let cfg = PrecisionConfig::default();
        let r = rademacher_p(200, 25, &cfg).unwrap();
        let p = partition_numbers(200).pop().unwrap();
        assert_eq!(r.nearest_integer, Some(p));
        assert!(r.gap_f64().unwrap() < 0.4);
    }

    #[test]
    fn short_truncation_is_far_from_the_oracle() {
        let cfg = PrecisionConfig::default();
        let r = rademacher_p(1000, 1, &cfg).unwrap();
        assert!(r.gap_f64().unwrap() > 1e3);
        assert_eq!(r.trace.len(), 1);
        let status = super::super::report::SeriesStatus::NoConvergence;
        assert_eq!(r.status == status, r.margin >= 0.4);
    }
}
