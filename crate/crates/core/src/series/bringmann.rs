//! The circle-method approximation to `A(l/u; n)` for odd `u`, truncated at
//! `c, a <= sqrt(n)`.

use std::time::Instant;

use rug::{Complex, Float};

use super::report::{SeriesReport, TracePoint};
use crate::arith::{gcd, PrecisionConfig};
use crate::error::{Error, Result};
use crate::geometry::delta_record;
use crate::kloosterman::{bringmann_b, bringmann_d};
use crate::partition::{coefficient_oracle, rank_table, RANK_TABLE_LIMIT};

/// `4 sqrt(3) i B_{l,u,c}(-n, 0) / (sqrt(24n-1) sqrt(c)) sinh(pi sqrt(24n-1) / 6c)`.
pub fn bringmann_infinity_term(ell: i64, u: i64, c: i64, n: i64, cfg: &PrecisionConfig) -> Result<Complex> {
    let b = bringmann_b(ell, u, c, -n, 0, cfg)?;
    let root = cfg.real(24 * n - 1).sqrt();
    let arg = cfg.pi() * &root / (6 * c);
    let w = cfg.real(3).sqrt() * 4u32 / (root * cfg.real(c).sqrt()) * arg.sinh();
    let ib = Complex::with_val(cfg.working_bits, (-b.imag(), b.real()));
    Ok(ib * w)
}

/// Largest `r` for which some `delta_{l,u,a,r}` can be positive.
fn r_bound(u: i64) -> i64 {
    u / 24 + 1
}

/// Sum of the terms with `u | c <= sqrt(n)` and `u ∤ a <= sqrt(n)`.
pub fn bringmann_truncated(ell: i64, u: i64, n: i64, cfg: &PrecisionConfig) -> Result<SeriesReport> {
    if u < 3 || u % 2 == 0 {
        return Err(Error::BadInput(format!("u = {u} must be odd and at least 3")));
    }
    if ell < 1 || ell >= u || gcd(ell, u) != 1 {
        return Err(Error::NonCoprime(ell, u));
    }
    if n < 1 {
        return Err(Error::BadInput(format!("n = {n} must be positive")));
    }
    let started = Instant::now();
    let bound = (n as f64).sqrt().floor() as i64;
    let root = cfg.real(24 * n - 1).sqrt();
    let mut value = cfg.zero();
    let mut trace = Vec::new();
    for c in (u..=bound).step_by(u as usize) {
        value += bringmann_infinity_term(ell, u, c, n, cfg)?;
    }
    trace.push(TracePoint { bound, value: value.clone() });
    let mut sin = cfg.pi() * ell;
    sin /= u;
    let front = cfg.real(3).sqrt() * 8u32 * sin.sin() / &root;
    let r_max = r_bound(u);
    for r in 0..=r_max {
        for a in (1..=bound).filter(|a| a % u != 0) {
            let rec = delta_record(ell, u, a, r)?;
            if !rec.in_condition {
                continue;
            }
            let m = rec.m_int.as_ref().and_then(|m| m.to_i64()).ok_or_else(|| Error::Overflow("m".into()))?;
            let d = bringmann_d(ell, u, a, -n, m, cfg)?;
            let delta = cfg.real(&rec.delta);
            let arg = cfg.pi() * Float::with_val(cfg.working_bits, delta * 2u32 * cfg.real(24 * n - 1)).sqrt() / (cfg.real(3).sqrt() * a);
            value += d * (arg.sinh() / cfg.real(a).sqrt() * &front);
        }
    }
    trace.push(TracePoint { bound, value: value.clone() });
    let oracle = if (n as usize) <= RANK_TABLE_LIMIT {
        let table = rank_table(n as usize)?;
        Some(coefficient_oracle(ell, u, n as usize, &table, cfg)?.value)
    } else {
        None
    };
    Ok(SeriesReport::assemble(
        format!("A({ell}/{u}; {n}) circle-method truncation"),
        vec![("l".into(), ell.to_string()), ("u".into(), u.to_string()), ("n".into(), n.to_string())],
        (bound, Some(bound), Some(r_max)),
        trace,
        value,
        false,
        oracle,
        cfg.working_bits,
        started,
    ))
}
