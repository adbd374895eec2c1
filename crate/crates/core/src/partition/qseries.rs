//! Truncated `q`-series with exponents in `offset + (1/u) Z`.

use std::collections::BTreeMap;

use rug::{Integer, Rational};

use super::numbers::partition_numbers;
use crate::arith::modular::require_prime;
use crate::error::{Error, Result};

/// `sum_k coefficients[k] q^{offset + k/u}`, exact below `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracQSeries {
    pub base_denominator: i64,
    pub offset: Rational,
    /// Exponents `>= order` are not represented.
    pub order: Rational,
    pub coefficients: BTreeMap<i64, Integer>,
}

impl FracQSeries {
    pub fn new(base_denominator: i64, offset: Rational, order: Rational) -> Self {
        Self { base_denominator, offset, order, coefficients: BTreeMap::new() }
    }

    pub fn exponent(&self, k: i64) -> Rational {
        &self.offset + Rational::from((k, self.base_denominator))
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> Vec<(Rational, Integer)> {
        self.coefficients.iter().filter(|(_, c)| **c != 0).map(|(&k, c)| (self.exponent(k), c.clone())).collect()
    }

    /// The same series cut down to exponents below `order`.
    pub fn truncate(&self, order: &Rational) -> Self {
        let mut out = Self::new(self.base_denominator, self.offset.clone(), order.clone().min(self.order.clone()));
        for (&k, c) in &self.coefficients {
            if *c != 0 && self.exponent(k) < out.order {
                out.coefficients.insert(k, c.clone());
            }
        }
        out
    }

    fn add_term(&mut self, k: i64, c: &Integer) {
        if self.exponent(k) < self.order {
            *self.coefficients.entry(k).or_default() += c;
        }
    }
}

/// Expansion of `M(l/p; z) = (q;q)_inf^{-1} sum_n (-1)^n q^{n+l/p} q^{3n(n+1)/2} / (1 - q^{n+l/p})`
/// below `order`, with the leading-term identity checked on the way out.
pub fn mock_m_leading_terms(ell: i64, p: i64, order: &Rational) -> Result<FracQSeries> {
    require_prime(p)?;
    if ell < 1 || ell >= p {
        return Err(Error::BadInput(format!("l = {ell} outside 1..{p}")));
    }
    if *order < (1, 2) {
        return Err(Error::TruncationTooShallow(order.to_string()));
    }
    // exponents measured in units of 1/p; keep k < bound
    let bound = Rational::from(order * p).ceil().numer().to_i64().ok_or_else(|| Error::BadInput("order too large".into()))?;
    let mut inner: BTreeMap<i64, Integer> = BTreeMap::new();
    let mut push = |k: i64, sign: i64| {
        if k < bound {
            *inner.entry(k).or_default() += sign;
        }
    };
    // n >= 0: (-1)^n q^{3n(n+1)/2} sum_{T>=1} q^{T(n + l/p)}
    for n in 0.. {
        let base = p * 3 * n * (n + 1) / 2;
        if base >= bound {
            break;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let step = n * p + ell;
        let mut k = base + step;
        while k < bound {
            push(k, sign);
            k += step;
        }
    }
    // n = -m < 0: (-1)^{m+1} q^{3m(m-1)/2} sum_{T>=0} q^{T(m - l/p)}
    for m in 1.. {
        let base = p * 3 * m * (m - 1) / 2;
        if base >= bound {
            break;
        }
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let step = m * p - ell;
        let mut k = base;
        while k < bound {
            push(k, sign);
            k += step;
        }
    }
    let parts = partition_numbers((bound / p) as usize + 1);
    let mut series = FracQSeries::new(p, Rational::new(), order.clone());
    for (&k, c) in &inner {
        for (j, pj) in parts.iter().enumerate() {
            let kk = k + p * j as i64;
            if kk >= bound {
                break;
            }
            series.add_term(kk, &Integer::from(c * pj));
        }
    }
    series.coefficients.retain(|_, c| *c != 0);
    let leading = series.truncate(&Rational::from((1, 2)));
    if leading != closed_form_leading_terms(ell, p) {
        return Err(Error::BadInput(format!("leading terms of M({ell}/{p}) disagree with the closed form")));
    }
    Ok(series)
}

/// `sum_{T=0}^{floor(p/2l)} q^{Tl/p}` for `l <= (p-1)/2`, mirrored under
/// `l -> p - l`, as a series truncated at `q^{1/2}`.
pub fn closed_form_leading_terms(ell: i64, p: i64) -> FracQSeries {
    let half = Rational::from((1, 2));
    let mut s = FracQSeries::new(p, Rational::new(), half);
    let step = if 2 * ell < p { ell } else { p - ell };
    for t in 0..=p / (2 * step) {
        s.coefficients.insert(t * step, Integer::from(1));
    }
    s
}
