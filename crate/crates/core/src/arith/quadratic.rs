//! Factorization and square roots modulo prime powers.

use std::sync::OnceLock;

/// Smallest-prime-factor table for `2..=limit`.
#[derive(Clone, Debug)]
pub struct FactorSieve {
    spf: Vec<u32>,
}

impl FactorSieve {
    pub fn new(limit: u64) -> Self {
        let limit = limit.max(2) as usize;
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Self { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Prime factorization `[(q, e)]` in increasing `q`; falls back to trial
    /// division above the table.
    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        if n > self.limit() {
            return factorize(n);
        }
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let q = self.spf[n as usize] as u64;
            n /= q;
            match out.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => out.push((q, 1)),
            }
        }
        out
    }
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= 1 << 32 {
        (a % m) * (b % m) % m
    } else {
        (a as u128 * b as u128 % m as u128) as u64
    }
}

/// Arithmetic modulo a fixed odd prime, on some representation of residues.
trait ModArith {
    fn enter(&self, a: u64) -> u64;
    fn leave(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;

    fn pow(&self, mut b: u64, mut e: u64, one: u64) -> u64 {
        let mut r = one;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }
}

/// Montgomery form with `R = 2^32`, for odd `m < 2^32`.
#[derive(Clone, Copy, Debug)]
struct Montgomery {
    m: u64,
    /// `-m^{-1} mod 2^32`.
    neg_inv: u32,
    /// `R^2 mod m`.
    r2: u64,
}

impl Montgomery {
    fn new(m: u64) -> Self {
        debug_assert!(m % 2 == 1 && m < 1 << 32);
        let m32 = m as u32;
        let mut inv = m32;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(m32.wrapping_mul(inv)));
        }
        let r = (1u64 << 32) % m;
        Self { m, neg_inv: inv.wrapping_neg(), r2: r * r % m }
    }

    /// `t R^{-1} mod m` for `t < m R`.
    #[inline]
    fn reduce(&self, t: u64) -> u64 {
        let k = (t as u32).wrapping_mul(self.neg_inv) as u64;
        let x = ((t as u128 + (k * self.m) as u128) >> 32) as u64;
        if x >= self.m {
            x - self.m
        } else {
            x
        }
    }
}

impl ModArith for Montgomery {
    fn enter(&self, a: u64) -> u64 {
        self.reduce((a % self.m) * self.r2)
    }

    fn leave(&self, a: u64) -> u64 {
        self.reduce(a)
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }
}

/// Plain residues for moduli beyond the Montgomery range.
struct Wide(u64);

impl ModArith for Wide {
    fn enter(&self, a: u64) -> u64 {
        a % self.0
    }

    fn leave(&self, a: u64) -> u64 {
        a
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.0)
    }
}

/// The Jacobi symbol `(a|m)` for odd `m`.
fn jacobi(mut a: u64, mut m: u64) -> i32 {
    a %= m;
    let mut sign = 1;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos % 2 == 1 && (m % 8 == 3 || m % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut m);
        a %= m;
    }
    if m == 1 {
        sign
    } else {
        0
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Primes below this bound take their square roots from a shared table.
const TABLE_BOUND: u64 = 2048;

/// `table[q][u]` is the least square root of `u` modulo the odd prime `q`,
/// or `u32::MAX` for a non-residue.
fn small_prime_roots() -> &'static [Vec<u32>] {
    static TABLE: OnceLock<Vec<Vec<u32>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..TABLE_BOUND)
            .map(|q| {
                if q < 3 || factorize(q).len() != 1 || factorize(q)[0].1 != 1 {
                    return Vec::new();
                }
                let mut roots = vec![u32::MAX; q as usize];
                for x in (0..q).rev() {
                    roots[(x * x % q) as usize] = x as u32;
                }
                roots
            })
            .collect()
    })
}

/// Square-root data for one odd prime, reusable across radicands.
#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeSqrt {
    q: u64,
    table: Option<&'static [u32]>,
    /// `q - 1 = 2^s odd`.
    s: u32,
    odd: u64,
    /// A non-residue raised to `odd`.
    z_odd: u64,
    montgomery: Option<Montgomery>,
}

impl PrimeSqrt {
    pub(crate) fn new(q: u64) -> Self {
        let s = (q - 1).trailing_zeros();
        let odd = (q - 1) >> s;
        let z_odd = if s == 1 || q < TABLE_BOUND {
            q - 1
        } else {
            let z = (2..q).find(|&z| jacobi(z, q) == -1).expect("odd prime has a non-residue");
            pow_mod(z, odd, q)
        };
        let table = (q < TABLE_BOUND).then(|| small_prime_roots()[q as usize].as_slice());
        let montgomery = (TABLE_BOUND..1 << 32).contains(&q).then(|| Montgomery::new(q));
        Self { q, table, s, odd, z_odd, montgomery }
    }

    /// A square root of `u` modulo `q`.
    pub(crate) fn root(&self, u: u64) -> Option<u64> {
        let q = self.q;
        let u = u % q;
        if let Some(table) = self.table {
            let x = table[u as usize];
            return (x != u32::MAX).then_some(x as u64);
        }
        if u == 0 {
            return Some(0);
        }
        match &self.montgomery {
            Some(mt) => self.tonelli(u, mt),
            None => self.tonelli(u, &Wide(q)),
        }
    }

    /// Tonelli-Shanks; a non-residue shows up as `u^odd` having full order.
    fn tonelli(&self, u: u64, ar: &impl ModArith) -> Option<u64> {
        let one = ar.enter(1);
        let u = ar.enter(u);
        let w = ar.pow(u, (self.odd - 1) / 2, one);
        let mut r = ar.mul(w, u);
        let mut t = ar.mul(w, r);
        let mut c = ar.enter(self.z_odd);
        let mut m = self.s;
        while t != one {
            let mut i = 0;
            let mut t2 = t;
            while t2 != one {
                t2 = ar.mul(t2, t2);
                i += 1;
                if i == m {
                    return None;
                }
            }
            let mut b = c;
            for _ in 0..m - i - 1 {
                b = ar.mul(b, b);
            }
            m = i;
            c = ar.mul(b, b);
            t = ar.mul(t, c);
            r = ar.mul(r, b);
        }
        Some(ar.leave(r))
    }

    /// A square root of the unit `u` modulo `q^k`, `k >= 1`.
    pub(crate) fn unit_root(&self, u: u64, k: u32) -> Option<u64> {
        let q = self.q;
        let mut x = self.root(u)?;
        // Newton on x^2 = u, doubling the precision each step
        let target = q.pow(k);
        let mut modulus = q;
        while modulus < target {
            modulus = modulus.saturating_mul(modulus).min(target);
            let f = (mul_mod(x, x, modulus) + modulus - u % modulus) % modulus;
            let inv = super::mod_inverse((2 * x % modulus) as i64, modulus as i64).expect("unit derivative") as u64;
            x = (x + modulus - mul_mod(f, inv, modulus)) % modulus;
        }
        Some(x)
    }
}

/// A square root of the quadratic residue `u` modulo the odd prime `q`.
#[cfg(test)]
fn tonelli_shanks(u: u64, q: u64) -> Option<u64> {
    PrimeSqrt::new(q).root(u)
}

/// A square root of the odd `u` modulo `2^k`, `1 <= k <= 32`; for `k >= 3`
/// the others are `-x` and `+-x + 2^{k-1}`.
pub(crate) fn two_adic_root(u: u64, k: u32) -> Option<u64> {
    match k {
        1 => Some(1),
        2 => (u % 4 == 1).then_some(1),
        _ => {
            if u % 8 != 1 {
                return None;
            }
            let mut x = 1u64;
            for j in 3..k {
                let mask = (1u64 << (j + 1)) - 1;
                if (x * x) & mask != u & mask {
                    x += 1 << (j - 1);
                }
            }
            Some(x)
        }
    }
}

/// One square root of the unit `u` modulo `q^k`, `k >= 1`; for `q = 2` and
/// `k >= 3` the others are `-x` and `+-x + 2^{k-1}`, for odd `q` only `-x`.
pub(crate) fn unit_root(u: u64, q: u64, k: u32) -> Option<u64> {
    if q == 2 {
        two_adic_root(u, k)
    } else {
        PrimeSqrt::new(q).unit_root(u, k)
    }
}

/// All square roots of a unit `u` modulo `q^k`.
fn unit_roots(u: u64, q: u64, k: u32) -> Vec<u64> {
    if k == 0 {
        return vec![0];
    }
    let m = q.pow(k);
    let Some(x) = unit_root(u, q, k) else {
        return vec![];
    };
    let mut r = if q == 2 && k >= 3 {
        let half = m / 2;
        vec![x % m, (m - x) % m, (x + half) % m, (m + half - x) % m]
    } else {
        vec![x, (m - x) % m]
    };
    r.sort_unstable();
    r.dedup();
    r
}

/// All `x` in `[0, q^e)` with `x^2 = t (mod q^e)`.
pub fn sqrt_mod_prime_power(t: u64, q: u64, e: u32) -> Vec<u64> {
    let m = q.pow(e);
    let t = t % m;
    if t == 0 {
        let step = q.pow(e.div_ceil(2));
        return (0..m).step_by(step as usize).collect();
    }
    let mut v = 0;
    let mut unit = t;
    while unit.is_multiple_of(q) {
        unit /= q;
        v += 1;
    }
    if v % 2 == 1 {
        return vec![];
    }
    let half = q.pow(v / 2);
    let base = unit_roots(unit, q, e - v);
    let lift_mod = q.pow(e - v);
    let mut out: Vec<u64> = base.iter().flat_map(|&y| (0..half).map(move |j| (half * (y + j * lift_mod)) % m)).collect();
    out.sort_unstable();
    out.dedup();
    out
}
