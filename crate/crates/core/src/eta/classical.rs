//! The Kloosterman-type sums `A_c(n)` of the partition function series.

use rug::{Complex, Float};

use crate::arith::modular::{chi12, residue_i128};
use crate::arith::quadratic::{sqrt_mod_prime_power, two_adic_root, PrimeSqrt};
use crate::arith::{PhaseRational, PhaseSum, PrecisionConfig};
use crate::error::{Error, Result};

/// `A_c(n) = (1/2) sqrt(c/12) sum_{x mod 24c, x^2 = 1 - 24n} chi12(x) e(x/12c)`.
pub fn classical_a_c(c: i64, n: i64, cfg: &PrecisionConfig) -> Result<Complex> {
    if c < 1 {
        return Err(Error::BadInput(format!("modulus {c} < 1")));
    }
    let modulus = 24 * c as i128;
    let target = residue_i128(1 - 24 * n as i128, modulus);
    let mut sum = PhaseSum::new();
    for x in 0..modulus {
        if x * x % modulus == target {
            let chi = chi12(x as i64);
            if chi != 0 {
                sum.push(PhaseRational::from_ratio(x as i64, 12 * c), chi as i64);
            }
        }
    }
    let mut scale = Float::with_val(cfg.working_bits, c);
    scale /= 12u32;
    scale = scale.sqrt() / 2u32;
    Ok(sum.evaluate(cfg) * scale)
}

/// One prime power `q^e || 24c` with the CRT weight of its component.
#[derive(Clone, Copy, Debug)]
struct LocalFactor {
    q: u64,
    e: u32,
    modulus: u64,
    /// `2 (24c / q^e)^{-1} mod q^e`.
    step: u64,
    sqrt: Option<PrimeSqrt>,
}

/// How one local factor's roots were found.
#[derive(Clone, Copy)]
enum LocalRoot {
    Unit(u64),
    /// `q | t`; fall back to the full root list.
    Degenerate,
}

/// The modulus `24c` split into prime powers, for evaluating `A_c(n)` at
/// many `n` in double precision.
///
/// Writing a root `x` of `x^2 = 1 - 24n (mod 24c)` through the Chinese
/// remainder theorem, `chi12(x) e(2x / 24c)` is a product of local factors,
/// so the root sum is a product of short sums over each `q^e || 24c`. The
/// factors at 2 and 3 carry `chi_{-4}` and `chi_{-3}` and are purely
/// imaginary; the others are real.
#[derive(Clone, Debug)]
pub struct SalieModulus {
    c: u64,
    locals: Vec<LocalFactor>,
}

impl SalieModulus {
    /// Panics if `24c` exceeds `2^32`.
    pub fn new(c: u64, factors_of_c: &[(u64, u32)]) -> Self {
        assert!(c <= (1 << 32) / 24, "modulus 24 * {c} too large");
        let mut parts: Vec<(u64, u32)> = factors_of_c.to_vec();
        for (q, extra) in [(2u64, 3u32), (3, 1)] {
            match parts.iter_mut().find(|(p, _)| *p == q) {
                Some((_, e)) => *e += extra,
                None => parts.push((q, extra)),
            }
        }
        // odd primes >= 5 first, so most vanishing cases stop before 2 and 3
        parts.sort_unstable_by_key(|&(q, _)| (q <= 3, q));
        let full = 24 * c as u128;
        let locals = parts
            .into_iter()
            .map(|(q, e)| {
                let modulus = q.pow(e);
                let cofactor = ((full / modulus as u128) % modulus as u128) as i64;
                let inv = crate::arith::mod_inverse(cofactor, modulus as i64).expect("coprime cofactor") as u64;
                let sqrt = (q > 2).then(|| PrimeSqrt::new(q));
                LocalFactor { q, e, modulus, step: (2 * inv as u128 % modulus as u128) as u64, sqrt }
            })
            .collect();
        Self { c, locals }
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// `A_c(n)`.
    pub fn a_value(&self, n: i64) -> f64 {
        let target = (1 - 24 * n).rem_euclid(24 * self.c as i64) as u64;
        let mut roots = [LocalRoot::Degenerate; 16];
        for (slot, f) in roots.iter_mut().zip(&self.locals) {
            let t = target % f.modulus;
            let root = match &f.sqrt {
                None => two_adic_root(t, f.e),
                Some(_) if t.is_multiple_of(f.q) => {
                    *slot = LocalRoot::Degenerate;
                    continue;
                }
                Some(sqrt) => sqrt.unit_root(t, f.e),
            };
            match root {
                Some(x) => *slot = LocalRoot::Unit(x),
                None => return 0.0,
            }
        }
        let mut product = -4.0;
        for (root, f) in roots.iter().zip(&self.locals) {
            let angle = |r: u64| std::f64::consts::TAU * (r * f.step % f.modulus) as f64 / f.modulus as f64;
            let factor = match (*root, f.q) {
                (LocalRoot::Unit(x), 2) => {
                    let chi = if x % 4 == 1 { 1.0 } else { -1.0 };
                    // x + 2^{e-1} has the same character and, the step being even, the same angle
                    let pair = if f.e >= 2 { 2.0 } else { 1.0 };
                    chi * pair * angle(x).sin()
                }
                (LocalRoot::Unit(x), 3) => {
                    let chi = if x % 3 == 1 { 1.0 } else { -1.0 };
                    chi * angle(x).sin()
                }
                (LocalRoot::Unit(x), _) => 2.0 * angle(x).cos(),
                (LocalRoot::Degenerate, q) => sqrt_mod_prime_power(target % f.modulus, q, f.e).into_iter().map(|r| angle(r).cos()).sum(),
            };
            if factor == 0.0 {
                return 0.0;
            }
            product *= factor;
        }
        0.5 * (self.c as f64 / 12.0).sqrt() * product
    }
}

/// `A_c(n)` in double precision from the factorization of `c`.
pub fn classical_a_c_factored(c: u64, n: i64, factors_of_c: &[(u64, u32)]) -> f64 {
    SalieModulus::new(c, factors_of_c).a_value(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_one() {
        let cfg = PrecisionConfig::default();
        for n in [-3, 0, 1, 17, 1000] {
            let a = classical_a_c(1, n, &cfg).unwrap();
            assert!((a.real().to_f64() - 1.0).abs() < 1e-60);
        }
    }

    #[test]
    fn real_valued() {
        let cfg = PrecisionConfig::default();
        for c in 1..=100 {
            for n in [1, 2, 37] {
                let a = classical_a_c(c, n, &cfg).unwrap();
                assert!(a.imag().clone().abs() < 1e-60, "c = {c}");
            }
        }
    }

    #[test]
    fn agrees_with_dedekind_sum_form() {
        // A_c(n) = sum_{h mod c}^* e^{pi i s(h, c)} e(-nh/c)
        use crate::eta::dedekind::dedekind_sum_direct;
        use rug::Rational;
        let cfg = PrecisionConfig::default();
        for c in 1..30 {
            for n in [1, 2, 5, 11] {
                let mut sum = PhaseSum::new();
                for h in crate::arith::modular::units(c) {
                    let s = dedekind_sum_direct(h, c).unwrap() / 2u32;
                    sum.push(PhaseRational::new(s - Rational::from((n * h, c))), 1);
                }
                let diff = sum.evaluate(&cfg) - classical_a_c(c, n, &cfg).unwrap();
                assert!(diff.abs().real().to_f64() < 1e-60, "c = {c}, n = {n}");
            }
        }
    }

    #[test]
    fn factored_form_matches_root_sum() {
        let cfg = PrecisionConfig::default();
        for c in 1..150u64 {
            let f = crate::arith::factorize(c);
            for n in [-7, 0, 1, 2, 5, 13, 100, 1001] {
                let exact = classical_a_c(c as i64, n, &cfg).unwrap().real().to_f64();
                let fast = classical_a_c_factored(c, n, &f);
                assert!((exact - fast).abs() < 1e-9, "c={c} n={n}: {exact} vs {fast}");
            }
        }
    }
}
