//! `S_0inf^{(l)}(X_r^{([al])}, n, a, mu_p; r)`.

use rug::{Integer, Rational};

use super::{KloostermanFamily, KloostermanValue};
use crate::arith::modular::{crt_pair, require_prime, residue, units};
use crate::arith::{mod_inverse, PhaseRational, PhaseSum, PrecisionConfig};
use crate::error::{Error, Result};
use crate::eta::{dedekind_sum, eta_multiplier, UnimodularMatrix};
use crate::geometry::{delta_record, DeltaRecord};
use crate::mup::mu_scalar;

/// For `b` a unit modulo `a`, the unique `c` in `[0, pa)` with `p | c` and
/// `ad - bc = 1` solvable, together with that `d`.
pub(crate) fn zero_cusp_row(a: i64, b: i64, p: i64) -> Result<(i64, i64)> {
    let target = residue(-mod_inverse(b, a)?, a);
    let c = crt_pair(target, a, 0, p)?;
    let num = 1 + b as i128 * c as i128;
    if num % a as i128 != 0 {
        return Err(Error::DomainError(format!("no completion for a = {a}, b = {b}, c = {c}")));
    }
    Ok((c, (num / a as i128) as i64))
}

fn prepare(ell: i64, a: i64, p: i64, r: i64) -> Result<DeltaRecord> {
    require_prime(p)?;
    if a < 1 || a % p == 0 {
        return Err(Error::BadModulus { modulus: a, level: p });
    }
    delta_record(ell, p, a, r)
}

fn empty(ell: i64, a: i64, cfg: &PrecisionConfig) -> KloostermanValue {
    KloostermanValue { family: KloostermanFamily::SZeroInf, value: cfg.zero(), modulus: a, ell, term_count: 0 }
}

/// Sum over the double cosets `gamma = [[a, b], [c, d]]` with `0 <= c < pa`:
/// `conj(mu(c, d, [al], p)) nu_eta(gamma) e((delta c + (n - 1/24) b) / a)`.
pub fn s_zero_inf(ell: i64, n: i64, a: i64, p: i64, r: i64, cfg: &PrecisionConfig) -> Result<KloostermanValue> {
    let rec = prepare(ell, a, p, r)?;
    if !rec.in_condition {
        return Ok(empty(ell, a, cfg));
    }
    let n_shift = Rational::from(n) - Rational::from((1, 24));
    let mut sum = PhaseSum::new();
    for b in units(a) {
        let (c, d) = zero_cusp_row(a, b, p)?;
        let g = UnimodularMatrix { a, b, c, d };
        let linear = (Rational::from(&rec.delta * c) + Rational::from(&n_shift * b)) / a;
        let phase = mu_scalar(c, d, rec.reduced, p)?.conj() * eta_multiplier(&g)?;
        sum.push(&phase + &linear, 1);
    }
    Ok(KloostermanValue { family: KloostermanFamily::SZeroInf, value: sum.evaluate(cfg), modulus: a, ell, term_count: sum.term_count() })
}

/// `(-1)^{al - [al]} sum_b e^{-pi i s(b, a)} e((-m c + n b) / a)` with
/// `m = m_{l,p,a,r}`.
pub fn s_zero_inf_simplified(ell: i64, n: i64, a: i64, p: i64, r: i64, cfg: &PrecisionConfig) -> Result<KloostermanValue> {
    let rec = prepare(ell, a, p, r)?;
    if !rec.in_condition {
        return Ok(empty(ell, a, cfg));
    }
    let m = rec.m_int.clone().expect("m is defined on the condition set");
    let sign = PhaseRational::sign(if (a * ell - rec.reduced) % 2 == 0 { 1 } else { -1 });
    let mut sum = PhaseSum::new();
    for b in units(a) {
        let (c, _) = zero_cusp_row(a, b, p)?;
        let s = dedekind_sum(b, a)? / 2u32;
        let linear = Rational::from((Integer::from(&m * -c) + Integer::from(n) * b, Integer::from(a)));
        sum.push(&sign * &PhaseRational::new(linear - s), 1);
    }
    Ok(KloostermanValue { family: KloostermanFamily::SZeroInf, value: sum.evaluate(cfg), modulus: a, ell, term_count: sum.term_count() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Complex;

    #[test]
    fn rows_are_unimodular() {
        for p in [5, 7, 13] {
            for a in 1..60 {
                if a % p == 0 {
                    continue;
                }
                for b in units(a) {
                    let (c, d) = zero_cusp_row(a, b, p).unwrap();
                    assert!(c >= 0 && c < p * a && c % p == 0);
                    assert_eq!(a as i128 * d as i128 - b as i128 * c as i128, 1);
                }
            }
        }
    }

    #[test]
    fn both_forms_agree() {
        let cfg = PrecisionConfig::default();
        for (p, r) in [(7, 0), (11, 0), (37, 0), (37, 1)] {
            for a in 1..80 {
                if a % p == 0 {
                    continue;
                }
                for ell in 1..p {
                    for n in [1, 3, 12] {
                        let x = s_zero_inf(ell, n, a, p, r, &cfg).unwrap();
                        let y = s_zero_inf_simplified(ell, n, a, p, r, &cfg).unwrap();
                        let gap = Complex::with_val(256, &x.value - &y.value).abs().real().to_f64();
                        assert!(gap < 1e-60, "p={p} r={r} a={a} l={ell} n={n}: {gap}");
                        assert_eq!(x.term_count, y.term_count);
                    }
                }
            }
        }
    }

    #[test]
    fn outside_condition_set_is_empty() {
        let cfg = PrecisionConfig::default();
        let v = s_zero_inf(2, 5, 1, 7, 0, &cfg).unwrap();
        assert_eq!(v.term_count, 0);
        assert_eq!(v.value, 0);
        let v = s_zero_inf(1, 5, 1, 7, 0, &cfg).unwrap();
        assert_eq!(v.term_count, 1);
        assert!(matches!(s_zero_inf(1, 5, 14, 7, 0, &cfg), Err(Error::BadModulus { .. })));
    }
}
