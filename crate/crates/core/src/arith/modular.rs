//! Integer utilities: gcd, inverses, Kronecker symbols, CRT.

use num_integer::Integer as _;
use rug::Integer;

use crate::error::{Error, Result};

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Least non-negative residue of `a` modulo `n > 0`.
pub fn residue(a: i64, n: i64) -> i64 {
    a.mod_floor(&n)
}

pub fn residue_i128(a: i128, n: i128) -> i128 {
    a.mod_floor(&n)
}

/// Inverse of `d` modulo `n` in `[0, n)`; the inverse modulo 1 is 0.
pub fn mod_inverse(d: i64, n: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::BadInput(format!("modulus {n} must be positive")));
    }
    let eg = d.rem_euclid(n).extended_gcd(&n);
    if eg.gcd != 1 {
        return Err(Error::NonCoprime(d, n));
    }
    Ok(eg.x.rem_euclid(n))
}

/// Returns `(inv, dprime)` where `d * inv = 1 (mod n)` and `d * dprime = -1`
/// modulo `n` for odd `n`, modulo `2n` for even `n`.
pub fn mod_inverse_variants(d: i64, n: i64) -> Result<(i64, i64)> {
    let inv = mod_inverse(d, n)?;
    let m = if n % 2 == 0 { 2 * n } else { n };
    let dprime = residue(-mod_inverse(d, m)?, m);
    Ok((inv, dprime))
}

/// Extended Kronecker symbol `(a|n)` for arbitrary integers.
pub fn kronecker_symbol(a: i64, n: i64) -> i32 {
    Integer::from(a).kronecker(&Integer::from(n))
}

/// Kronecker symbol on arbitrary-size integers.
pub fn kronecker_big(a: &Integer, n: &Integer) -> i32 {
    a.kronecker(n)
}

/// The Dirichlet character modulo 12 attached to `Q(sqrt 3)`.
pub fn chi12(x: i64) -> i32 {
    match residue(x, 12) {
        1 | 11 => 1,
        5 | 7 => -1,
        _ => 0,
    }
}

/// Unique `x` in `[0, m1*m2)` with `x = r1 (mod m1)` and `x = r2 (mod m2)`.
pub fn crt_pair(r1: i64, m1: i64, r2: i64, m2: i64) -> Result<i64> {
    if gcd(m1, m2) != 1 {
        return Err(Error::NonCoprime(m1, m2));
    }
    let m = m1 as i128 * m2 as i128;
    let inv = mod_inverse(residue(m1, m2), m2)? as i128;
    let t = residue_i128((r2 as i128 - r1 as i128) * inv, m2 as i128);
    Ok(residue_i128(r1 as i128 + m1 as i128 * t, m) as i64)
}

/// Sign of the permutation of `0..n` given as an image vector.
pub fn permutation_sign(image: &[usize]) -> i32 {
    let mut seen = vec![false; image.len()];
    let mut sign = 1;
    for start in 0..image.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = image[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Checks `p >= 5` prime.
pub fn require_prime(p: i64) -> Result<()> {
    if p >= 5 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::BadPrime(p))
    }
}

/// Units modulo `c`, ascending, for `c >= 1` (`[0]` when `c = 1`).
pub fn units(c: i64) -> Vec<i64> {
    if c == 1 {
        return vec![0];
    }
    (1..c).filter(|&d| gcd(d, c) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_variants_examples() {
        assert_eq!(mod_inverse_variants(3, 7).unwrap(), (5, 2));
        assert_eq!(mod_inverse_variants(1, 2).unwrap(), (1, 3));
        assert_eq!(mod_inverse_variants(1, 1).unwrap(), (0, 0));
        assert_eq!(mod_inverse_variants(2, 4), Err(Error::NonCoprime(2, 4)));
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_symbol(2, 7), 1);
        assert_eq!(kronecker_symbol(-1, 5), 1);
        let row: Vec<i32> = [1, 5, 7, 11].iter().map(|&x| kronecker_symbol(12, x)).collect();
        assert_eq!(row, vec![1, -1, -1, 1]);
        for x in 1..200 {
            assert_eq!(kronecker_symbol(12, x), chi12(x));
        }
    }

    #[test]
    fn crt_small() {
        let x = crt_pair(2, 5, 3, 7).unwrap();
        assert_eq!((x % 5, x % 7), (2, 3));
    }

    #[test]
    fn permutation_sign_cycles() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
