//! The sums `B_{l,u,c}` and `D_{l,u,a}` of the asymptotic formula, and the
//! identities matching them with `S_inf_inf` and `S_0inf`.

use rug::{Complex, Float, Rational};

use super::{s_inf_inf, s_zero_inf, sin_pi_ratio};
use crate::arith::modular::units;
use crate::arith::{gcd, mod_inverse_variants, PhaseRational, PhaseSum, PrecisionConfig};
use crate::error::{Error, Result};
use crate::eta::dedekind_sum;
use crate::geometry::delta_record;

fn require_odd(u: i64) -> Result<()> {
    if u < 3 || u % 2 == 0 {
        return Err(Error::BadInput(format!("u = {u} must be odd and at least 3")));
    }
    Ok(())
}

/// `B_{l,u,c}(n, m) = (-1)^{lc+1} sum_d [sin(pi l/u) / sin(pi l d'/u)] w_{d,c}
/// exp(-3 pi i c_(u) d' l^2 / u) e((m d' + n d)/c)`.
pub fn bringmann_b(ell: i64, u: i64, c: i64, n: i64, m: i64, cfg: &PrecisionConfig) -> Result<Complex> {
    require_odd(u)?;
    if c < 1 || c % u != 0 {
        return Err(Error::BadModulus { modulus: c, level: u });
    }
    if gcd(ell, u) != 1 {
        return Err(Error::NonCoprime(ell, u));
    }
    let cu = c / gcd(c, u);
    let mut buckets: Vec<PhaseSum> = vec![PhaseSum::new(); 2 * u as usize];
    for d in units(c) {
        let (_, dp) = mod_inverse_variants(d, c)?;
        let mut theta = dedekind_sum(d, c)? / 2u32;
        theta -= Rational::from((3 * cu as i128 * dp as i128 * (ell * ell) as i128, 2 * u as i128));
        theta += Rational::from(((m as i128 * dp as i128 + n as i128 * d as i128), c as i128));
        theta += Rational::from(((ell * c + 1).rem_euclid(2), 2));
        let j = (ell as i128 * dp as i128).rem_euclid(2 * u as i128) as usize;
        buckets[j].push(PhaseRational::new(theta), 1);
    }
    let top = sin_pi_ratio(ell, u, cfg);
    let mut value = cfg.zero();
    for (j, sum) in buckets.iter().enumerate() {
        if sum.term_count() > 0 {
            value += sum.evaluate(cfg) * Float::with_val(cfg.working_bits, &top / sin_pi_ratio(j as i64, u, cfg));
        }
    }
    Ok(value)
}

/// `D_{l,u,a}(n, m) = (-1)^{al + [a_(u) l]} sum_b w_{b,a} e((m b' + n b)/a)`.
pub fn bringmann_d(ell: i64, u: i64, a: i64, n: i64, m: i64, cfg: &PrecisionConfig) -> Result<Complex> {
    require_odd(u)?;
    if a < 1 || a % u == 0 {
        return Err(Error::BadModulus { modulus: a, level: u });
    }
    let g = gcd(u, a);
    let reduced = ((a / g) as i128 * ell as i128).rem_euclid((u / g) as i128) as i64;
    let sign = PhaseRational::sign(if (a * ell + reduced) % 2 == 0 { 1 } else { -1 });
    let mut sum = PhaseSum::new();
    for b in units(a) {
        let (_, bp) = mod_inverse_variants(b, a)?;
        let mut theta = dedekind_sum(b, a)? / 2u32;
        theta += Rational::from(((m as i128 * bp as i128 + n as i128 * b as i128), a as i128));
        sum.push(&sign * &PhaseRational::new(theta), 1);
    }
    Ok(sum.evaluate(cfg))
}

fn gap(x: &Complex, y: &Complex) -> Float {
    Float::with_val(x.prec().0, Complex::with_val(x.prec().0, x - y).abs().real())
}

/// `|conj(i B_{l,p,c}(-n, 0)) - e(-1/8) sin(pi l/p) S_inf_inf^{(l)}(0, n, c)|`.
pub fn bridge_infinity(ell: i64, p: i64, c: i64, n: i64, cfg: &PrecisionConfig) -> Result<Float> {
    let b = bringmann_b(ell, p, c, -n, 0, cfg)?;
    let lhs = Complex::with_val(cfg.working_bits, (-b.imag(), b.real())).conj();
    let s = s_inf_inf(ell, 0, n, c, p, cfg)?;
    let rhs = s.value * PhaseRational::from_ratio(-1, 8).to_complex(cfg) * sin_pi_ratio(ell, p, cfg);
    Ok(gap(&lhs, &rhs))
}

/// `|conj(D_{l,p,a}(-n, m_{l,p,a,r})) - S_0inf^{(l)}(ceil(-p delta), n, a; r)|`,
/// or `None` when `delta <= 0`.
pub fn bridge_zero(ell: i64, p: i64, a: i64, r: i64, n: i64, cfg: &PrecisionConfig) -> Result<Option<Float>> {
    let rec = delta_record(ell, p, a, r)?;
    if !rec.in_condition {
        return Ok(None);
    }
    let m = rec.m_int.as_ref().and_then(|m| m.to_i64()).ok_or_else(|| Error::Overflow("m".into()))?;
    let lhs = bringmann_d(ell, p, a, -n, m, cfg)?.conj();
    let rhs = s_zero_inf(ell, n, a, p, r, cfg)?;
    Ok(Some(gap(&lhs, &rhs.value)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bridge_infinity_small() {
        let cfg = PrecisionConfig::default();
        for p in [5, 7] {
            for k in 1..=6 {
                for ell in 1..p {
                    for n in 1..=3 {
                        let g = bridge_infinity(ell, p, k * p, n, &cfg).unwrap();
                        assert!(g < 1e-60, "p={p} c={} l={ell} n={n}: {}", k * p, g.to_f64());
                    }
                }
            }
        }
    }

    #[test]
    fn bridge_zero_small() {
        let cfg = PrecisionConfig::default();
        let mut tested = 0;
        for (p, r) in [(7, 0), (37, 0), (37, 1)] {
            for a in 1..50 {
                if a % p == 0 {
                    continue;
                }
                for ell in 1..p {
                    if let Some(g) = bridge_zero(ell, p, a, r, 2, &cfg).unwrap() {
                        assert!(g < 1e-60, "p={p} r={r} a={a} l={ell}: {}", g.to_f64());
                        tested += 1;
                    }
                }
            }
        }
        assert!(tested > 100);
    }

    #[test]
    fn d_at_modulus_one() {
        let cfg = PrecisionConfig::default();
        for ell in 1..9 {
            if gcd(ell, 9) != 1 {
                continue;
            }
            let v = bringmann_d(ell, 9, 1, 5, 3, &cfg).unwrap();
            let want = if (ell + ell % 9) % 2 == 0 { 1.0 } else { -1.0 };
            assert!((v.real().to_f64() - want).abs() < 1e-60);
        }
    }

    #[test]
    fn general_odd_u() {
        let cfg = PrecisionConfig::default();
        let v = bringmann_b(2, 9, 18, -5, 0, &cfg).unwrap();
        assert!(v.real().is_finite());
        assert!(bringmann_b(1, 9, 12, 1, 0, &cfg).is_err());
        let w = bringmann_d(4, 15, 6, -3, 1, &cfg).unwrap();
        assert!(w.imag().is_finite());
    }
}
