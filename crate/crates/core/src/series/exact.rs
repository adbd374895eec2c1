//! The exact formula for `A(l/p; n)` as a sum over the cusps at infinity
//! and at zero.

use std::time::Instant;

use rayon::prelude::*;
use rug::{Complex, Float, Rational};

use super::bessel::{bessel_half, BesselKind};
use super::report::{trace_bounds, SeriesReport, TracePoint};
use crate::arith::modular::require_prime;
use crate::arith::{PhaseRational, PrecisionConfig};
use crate::error::{Error, Result};
use crate::geometry::{delta_record, max_r};
use crate::kloosterman::{s_zero_inf, InfKernel};
use crate::partition::{coefficient_oracle, rank_table, RANK_TABLE_LIMIT};

/// `max(20p, ceil(10 sqrt(24n)))` rounded up to a multiple of `p`.
pub fn default_c_max(p: i64, n: i64) -> i64 {
    let base = (10.0 * ((24 * n.max(1)) as f64).sqrt()).ceil() as i64;
    num_integer::Integer::div_ceil(&base.max(20 * p), &p) * p
}

/// One `(a, r)` pair contributing to the zero-cusp sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCuspTerm {
    pub a: i64,
    pub r: i64,
    /// `[al]`.
    pub reduced: i64,
    pub delta: Rational,
}

/// Kernels for every `p | c <= c_max` and the zero-cusp index set, shared by
/// all `(l, n)`.
#[derive(Clone, Debug)]
pub struct MainFormula {
    pub p: i64,
    pub c_max: i64,
    pub a_max: i64,
    pub r_max: i64,
    kernels: Vec<InfKernel>,
}

impl MainFormula {
    pub fn new(p: i64, c_max: i64, a_max: i64) -> Result<Self> {
        require_prime(p)?;
        if c_max < p || a_max < 0 {
            return Err(Error::BadInput(format!("need c_max >= p and a_max >= 0, got {c_max}, {a_max}")));
        }
        let kernels = (1..=c_max / p).into_par_iter().map(|k| InfKernel::new(k * p, p)).collect::<Result<Vec<_>>>()?;
        Ok(Self { p, c_max, a_max, r_max: max_r(p)?, kernels })
    }

    /// The `(a, r)` with `p ∤ a <= a_max`, `r <= max_r(p)` and `delta_{l,p,a,r} > 0`.
    pub fn zero_cusp_terms(&self, ell: i64) -> Result<Vec<ZeroCuspTerm>> {
        let mut out = Vec::new();
        for r in 0..=self.r_max {
            for a in (1..=self.a_max).filter(|a| a % self.p != 0) {
                let rec = delta_record(ell, self.p, a, r)?;
                if rec.in_condition {
                    out.push(ZeroCuspTerm { a, r, reduced: rec.reduced, delta: rec.delta });
                }
            }
        }
        out.sort_by_key(|t| (t.a, t.r));
        Ok(out)
    }

    /// `2 pi e(-1/8) sin(pi l/p) (24n-1)^{-1/4} S_inf_inf / c I_{1/2}(4 pi sqrt(24n-1) / 24c)`.
    fn infinity_term(kernel: &InfKernel, ell: i64, n: i64, front: &Complex, cfg: &PrecisionConfig) -> Result<Complex> {
        let c = kernel.c;
        let s = kernel.evaluate(ell, 0, n, cfg)?.value;
        let z = cfg.pi() * cfg.real(24 * n - 1).sqrt() / (6 * c);
        let w = bessel_half(BesselKind::I, &z, cfg)? / c;
        Ok(s * w * front)
    }

    pub fn evaluate(&self, ell: i64, n: i64, cfg: &PrecisionConfig) -> Result<SeriesReport> {
        let started = Instant::now();
        let p = self.p;
        if ell < 1 || ell >= p {
            return Err(Error::BadInput(format!("l = {ell} outside 1..{p}")));
        }
        if n < 1 {
            return Err(Error::BadInput(format!("n = {n} must be positive")));
        }
        let sin = {
            let mut x = cfg.pi() * ell;
            x /= p;
            x.sin()
        };
        let quarter_root = cfg.real(24 * n - 1).sqrt().sqrt();
        let inf_front = PhaseRational::from_ratio(-1, 8).to_complex(cfg) * (cfg.pi() * 2u32 * &sin / &quarter_root);
        let inf_terms: Vec<(i64, Complex)> =
            self.kernels.par_iter().map(|k| Ok((k.c, Self::infinity_term(k, ell, n, &inf_front, cfg)?))).collect::<Result<_>>()?;

        let shifted = cfg.real(n) - cfg.real(1) / 24u32;
        let zero_front = cfg.pi() * 4u32 * &sin / Float::with_val(cfg.working_bits, shifted.sqrt_ref()).sqrt();
        let zero_index = self.zero_cusp_terms(ell)?;
        let zero_terms: Vec<(i64, Complex)> = zero_index
            .par_iter()
            .map(|t| {
                let s = s_zero_inf(ell, n, t.a, p, t.r, cfg)?.value;
                let delta = cfg.real(&t.delta);
                let z = cfg.pi() * 4u32 * Float::with_val(cfg.working_bits, &delta * &shifted).sqrt() / t.a;
                let w = bessel_half(BesselKind::I, &z, cfg)? * delta.sqrt().sqrt() / t.a;
                Ok((t.a * p, s * w * &zero_front))
            })
            .collect::<Result<_>>()?;

        let mut events: Vec<(i64, &Complex)> = inf_terms.iter().map(|(c, v)| (*c, v)).collect();
        events.extend(zero_terms.iter().map(|(b, v)| (*b, v)));
        events.sort_by_key(|e| e.0);
        let last = self.c_max.max(self.a_max * p);
        let bounds = trace_bounds(p, last);
        let mut trace = Vec::with_capacity(bounds.len());
        let mut value = cfg.zero();
        let mut i = 0;
        for &b in &bounds {
            while i < events.len() && events[i].0 <= b {
                value += events[i].1;
                i += 1;
            }
            trace.push(TracePoint { bound: b, value: value.clone() });
        }
        let oracle = if (n as usize) <= RANK_TABLE_LIMIT {
            let table = rank_table(n as usize)?;
            Some(coefficient_oracle(ell, p, n as usize, &table, cfg)?.value)
        } else {
            None
        };
        Ok(SeriesReport::assemble(
            format!("A({ell}/{p}; {n})"),
            vec![("l".into(), ell.to_string()), ("p".into(), p.to_string()), ("n".into(), n.to_string())],
            (self.c_max, Some(self.a_max), Some(self.r_max)),
            trace,
            value,
            false,
            oracle,
            cfg.working_bits,
            started,
        ))
    }
}

/// Evaluates both cusp sums of the exact formula truncated at `c <= c_max`,
/// `a <= a_max`.
pub fn main_formula(ell: i64, p: i64, n: i64, c_max: i64, a_max: i64, cfg: &PrecisionConfig) -> Result<SeriesReport> {
    MainFormula::new(p, c_max, a_max)?.evaluate(ell, n, cfg)
}

/// The `c`-th summand of the infinity-cusp sum, prefactor included.
pub fn main_infinity_term(ell: i64, p: i64, c: i64, n: i64, cfg: &PrecisionConfig) -> Result<Complex> {
    let kernel = InfKernel::new(c, p)?;
    let mut sin = cfg.pi() * ell;
    sin /= p;
    let sin = sin.sin();
    let quarter_root = cfg.real(24 * n - 1).sqrt().sqrt();
    let front = PhaseRational::from_ratio(-1, 8).to_complex(cfg) * (cfg.pi() * 2u32 * &sin / &quarter_root);
    MainFormula::infinity_term(&kernel, ell, n, &front, cfg)
}
