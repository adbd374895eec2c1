//! `S_inf_inf^{(l)}(m, n, c, mu_p)`.

use rug::{Complex, Rational};

use super::{bucket_sums, sin_pi_ratio, KloostermanFamily, KloostermanValue};
use crate::arith::modular::{require_prime, units};
use crate::arith::{mod_inverse, PhaseRational, PhaseSum, PrecisionConfig};
use crate::error::{Error, Result};
use crate::eta::dedekind::twelve_c_small;
use crate::eta::UnimodularMatrix;
use crate::mup::mu_matrix;

#[derive(Clone, Copy, Debug)]
struct Row {
    d: i64,
    a: i64,
    /// `-3c - 12c s(d, c)` modulo `24c`.
    base: i64,
}

/// The `d`-dependent data of `S_inf_inf` for one modulus `c = kp`, shared by
/// every `(l, m, n)`. Each summand is `e(K / 24c) / sin(pi [al] / p)` with
///
/// `K = -3c - 12c s(d,c) + 24(ma + nd) - 36 k^2 a l^2 + 12c(lc + t)`,
///
/// `t = (al - [al]) / p`.
#[derive(Clone, Debug)]
pub struct InfKernel {
    pub c: i64,
    pub p: i64,
    rows: Vec<Row>,
}

impl InfKernel {
    pub fn new(c: i64, p: i64) -> Result<Self> {
        require_prime(p)?;
        if c < 1 || c % p != 0 {
            return Err(Error::BadModulus { modulus: c, level: p });
        }
        if c >= 1 << 36 {
            return Err(Error::Overflow(format!("kernel modulus {c}")));
        }
        let m24 = 24 * c;
        let rows = units(c)
            .into_iter()
            .map(|d| {
                let a = mod_inverse(d, c).expect("unit");
                let u = twelve_c_small(d as i128, c as i128);
                let base = (-3 * c as i128 - u).rem_euclid(m24 as i128) as i64;
                Row { d, a, base }
            })
            .collect();
        Ok(Self { c, p, rows })
    }

    pub fn term_count(&self) -> u64 {
        self.rows.len() as u64
    }

    /// `([al], K)` for every summand.
    fn keys(&self, ell: i64, m: i64, n: i64) -> impl Iterator<Item = (usize, u64)> + '_ {
        let (c, p) = (self.c as i128, self.p as i128);
        let m24 = 24 * c;
        let k = c / p;
        let (ell, m, n) = (ell as i128, m as i128, n as i128);
        let quad = (36 * k * k % m24) * (ell * ell % m24) % m24;
        self.rows.iter().map(move |row| {
            let (a, d) = (row.a as i128, row.d as i128);
            let al = a * ell;
            let big_l = al % p;
            let t = al / p;
            let mut key = row.base as i128 + 24 * ((m * a + n * d).rem_euclid(c));
            key -= quad * a % m24;
            key += 12 * c * ((ell * c + t) & 1);
            (big_l as usize, key.rem_euclid(m24) as u64)
        })
    }

    /// Per-bucket phase sums `sum_{[al] = L} e(K / 24c)` for `L = 0..p`.
    pub fn bucket_values(&self, ell: i64, m: i64, n: i64, cfg: &PrecisionConfig) -> Vec<Complex> {
        bucket_sums(self.keys(ell, m, n).collect(), self.p as usize, 24 * self.c as u64, cfg)
    }

    pub fn evaluate(&self, ell: i64, m: i64, n: i64, cfg: &PrecisionConfig) -> Result<KloostermanValue> {
        if ell < 1 || ell >= self.p {
            return Err(Error::BadInput(format!("l = {ell} outside 1..{}", self.p)));
        }
        let buckets = self.bucket_values(ell, m, n, cfg);
        let mut value = cfg.zero();
        for (l, bucket) in buckets.into_iter().enumerate().skip(1) {
            value += bucket / sin_pi_ratio(l as i64, self.p, cfg);
        }
        Ok(KloostermanValue { family: KloostermanFamily::SInfInf, value, modulus: self.c, ell, term_count: self.term_count() })
    }

    /// Double-precision evaluation for long partial-sum profiles.
    pub fn evaluate_f64(&self, ell: i64, m: i64, n: i64) -> (f64, f64) {
        let m24 = (24 * self.c) as f64;
        let mut buckets = vec![(0.0f64, 0.0f64); self.p as usize];
        for (l, key) in self.keys(ell, m, n) {
            let angle = std::f64::consts::TAU * key as f64 / m24;
            let (s, c) = angle.sin_cos();
            buckets[l].0 += c;
            buckets[l].1 += s;
        }
        let mut total = (0.0, 0.0);
        for (l, (re, im)) in buckets.into_iter().enumerate().skip(1) {
            let w = (std::f64::consts::PI * l as f64 / self.p as f64).sin();
            total.0 += re / w;
            total.1 += im / w;
        }
        total
    }
}

/// `S_inf_inf^{(l)}(m, n, c, mu_p)` through the simplified phase kernel.
pub fn s_inf_inf(ell: i64, m: i64, n: i64, c: i64, p: i64, cfg: &PrecisionConfig) -> Result<KloostermanValue> {
    InfKernel::new(c, p)?.evaluate(ell, m, n, cfg)
}

/// The same sum read off the `l`-th entry of
/// `sum_gamma e((m~ a + n~ d)/c) mu_p(gamma)^{-1} (1/sin(pi j/p))_j`.
pub fn s_inf_inf_reference(ell: i64, m: i64, n: i64, c: i64, p: i64, cfg: &PrecisionConfig) -> Result<KloostermanValue> {
    require_prime(p)?;
    if c < 1 || c % p != 0 {
        return Err(Error::BadModulus { modulus: c, level: p });
    }
    let shift = Rational::from((1, 24));
    let (m_shift, n_shift) = (Rational::from(m) - &shift, Rational::from(n) - &shift);
    let mut buckets: Vec<PhaseSum> = vec![PhaseSum::new(); p as usize];
    let mut terms = 0;
    for d in units(c) {
        let g = UnimodularMatrix::from_bottom_row(c, d)?;
        let inverse = mu_matrix(&g, p)?.inverse();
        // row l of the inverse picks up entry perm(l) = [al] of the weight vector
        let source = inverse.perm[(ell - 1) as usize] as i64 + 1;
        let linear = (Rational::from(&m_shift * g.a) + Rational::from(&n_shift * g.d)) / c;
        let phase: PhaseRational = inverse.phase_of(ell) + &linear;
        buckets[source as usize].push(phase, 1);
        terms += 1;
    }
    let mut value = cfg.zero();
    for (l, sum) in buckets.iter().enumerate().skip(1) {
        value += sum.evaluate(cfg) / sin_pi_ratio(l as i64, p, cfg);
    }
    Ok(KloostermanValue { family: KloostermanFamily::SInfInf, value, modulus: c, ell, term_count: terms })
}
