//! Dedekind sums `s(d, c) = sum_{r mod c} ((r/c)) ((dr/c))`.

use rug::{Integer, Rational};

use crate::arith::gcd;
use crate::arith::modular::residue;
use crate::error::{Error, Result};

/// `((x)) = x - floor(x) - 1/2`, and 0 at integers.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.denom() == &1u32 {
        return Rational::new();
    }
    let (fract, _) = x.clone().fract_floor(Integer::new());
    fract - Rational::from((1, 2))
}

fn check(d: i64, c: i64) -> Result<()> {
    if c < 1 {
        return Err(Error::BadInput(format!("Dedekind sum modulus {c} < 1")));
    }
    if gcd(d, c) != 1 {
        return Err(Error::NonCoprime(d, c));
    }
    Ok(())
}

/// Reference value by summing the definition over all residues.
pub fn dedekind_sum_direct(d: i64, c: i64) -> Result<Rational> {
    check(d, c)?;
    let d = residue(d, c) as i128;
    let c = c as i128;
    // ((r/c)) = (2r - c) / 2c for 0 < r < c
    let mut acc: i128 = 0;
    for r in 1..c {
        let dr = d * r % c;
        acc += (2 * r - c) * (2 * dr - c);
    }
    Ok(Rational::from((Integer::from(acc), Integer::from(4 * c * c))))
}

/// `12 c s(d, c)` by the reciprocity recursion, in machine integers.
/// Requires `0 <= d < c`, `gcd(d, c) = 1` and `c < 2^40`.
pub(crate) fn twelve_c_small(d: i128, c: i128) -> i128 {
    if d == 0 {
        return 0;
    }
    let inner = twelve_c_small(c % d, d);
    (c * c + d * d + 1 - 3 * c * d - c * inner) / d
}

fn twelve_c_big(d: &Integer, c: &Integer) -> Integer {
    if *d == 0 {
        return Integer::new();
    }
    let inner = twelve_c_big(&Integer::from(c % d), d);
    let mut num = Integer::from(c * c) + Integer::from(d * d) + 1u32;
    num -= Integer::from(c * d) * 3u32;
    num -= Integer::from(c * &inner);
    num / d
}

const SMALL_LIMIT: i64 = 1 << 40;

/// The integer `12 c s(d, c)`.
pub fn dedekind_twelve_c(d: i64, c: i64) -> Result<Integer> {
    check(d, c)?;
    let d = residue(d, c);
    if c < SMALL_LIMIT {
        Ok(Integer::from(twelve_c_small(d as i128, c as i128)))
    } else {
        Ok(twelve_c_big(&Integer::from(d), &Integer::from(c)))
    }
}

/// `s(d, c)` for `c >= 1`, `gcd(d, c) = 1`, through reciprocity.
pub fn dedekind_sum(d: i64, c: i64) -> Result<Rational> {
    let u = dedekind_twelve_c(d, c)?;
    Ok(Rational::from((u, Integer::from(12) * c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sawtooth_examples() {
        assert_eq!(sawtooth(&Rational::from((1, 2))), 0);
        assert_eq!(sawtooth(&Rational::from(3)), 0);
        assert_eq!(sawtooth(&Rational::from((1, 3))), Rational::from((-1, 6)));
        assert_eq!(sawtooth(&Rational::from((-1, 3))), Rational::from((1, 6)));
    }

    #[test]
    fn small_values() {
        assert_eq!(dedekind_sum(1, 3).unwrap(), Rational::from((1, 18)));
        assert_eq!(dedekind_sum_direct(1, 3).unwrap(), Rational::from((1, 18)));
        assert_eq!(dedekind_sum(1, 2).unwrap(), 0);
        for d in -5..5 {
            assert_eq!(dedekind_sum(d, 1).unwrap(), 0);
        }
        assert!(matches!(dedekind_sum(2, 4), Err(Error::NonCoprime(2, 4))));
    }

    #[test]
    fn sawtooth_definition_agrees() {
        for c in 1..40i64 {
            for d in -c..c {
                if gcd(d, c) != 1 {
                    continue;
                }
                let mut s = Rational::new();
                for r in 0..c {
                    s += sawtooth(&Rational::from((r, c))) * sawtooth(&Rational::from((d * r, c)));
                }
                assert_eq!(dedekind_sum(d, c).unwrap(), s, "s({d},{c})");
            }
        }
    }

    #[test]
    fn odd_in_d() {
        for c in 2..60 {
            for d in 1..c {
                if gcd(d, c) == 1 {
                    assert_eq!(dedekind_sum(-d, c).unwrap(), -dedekind_sum(d, c).unwrap());
                }
            }
        }
    }

    #[test]
    fn large_modulus_paths_agree() {
        let c = SMALL_LIMIT - 3;
        let d = 987_654_321;
        let small = Integer::from(twelve_c_small(d as i128, c as i128));
        let big = twelve_c_big(&Integer::from(d), &Integer::from(c));
        assert_eq!(small, big);
        let huge = dedekind_twelve_c(3, (1 << 61) - 1).unwrap();
        // reciprocity: s(3, c) + s(c, 3) = (9 + c^2 + 1) / 36c - 1/4
        let c = Integer::from((1i64 << 61) - 1);
        let s_c3 = dedekind_sum(c.mod_u(3) as i64, 3).unwrap();
        let lhs = Rational::from((huge, Integer::from(&c * 12u32))) + s_c3;
        let rhs = Rational::from((Integer::from(&c * &c) + 10u32, Integer::from(&c * 36u32))) - Rational::from((1, 4));
        assert_eq!(lhs, rhs);
    }
}
