use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eta::UnimodularMatrix;

/// Reproducible random elements of `Gamma0(p)` as words in `T` and
/// `V_p = [[1, 0], [p, 1]]`, with entries bounded by `max_entry`.
#[derive(Clone, Debug)]
pub struct Gamma0Sampler {
    p: i64,
    max_entry: u64,
    rng: ChaCha8Rng,
}

impl Gamma0Sampler {
    pub const DEFAULT_MAX_ENTRY: u64 = 1_000_000_000_000;

    pub fn new(p: i64, seed: u64) -> Self {
        Self::with_bound(p, seed, Self::DEFAULT_MAX_ENTRY)
    }

    pub fn with_bound(p: i64, seed: u64, max_entry: u64) -> Self {
        Self { p, max_entry, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn sample(&mut self) -> UnimodularMatrix {
        let len = self.rng.random_range(1..=40);
        let mut g = UnimodularMatrix::IDENTITY;
        for _ in 0..len {
            let mut e = self.rng.random_range(1..=6i64);
            if self.rng.random_bool(0.5) {
                e = -e;
            }
            let step = if self.rng.random_bool(0.5) { UnimodularMatrix::translation(e) } else { UnimodularMatrix::lower(e * self.p) };
            match g.checked_mul(&step) {
                Ok(next) if next.max_entry() <= self.max_entry => g = next,
                _ => break,
            }
        }
        if self.rng.random_bool(0.5) {
            -g
        } else {
            g
        }
    }

    /// An element of `Gamma0(p^2)` with `a = d = 1 (mod p)`.
    pub fn sample_gamma1_restricted(&mut self) -> UnimodularMatrix {
        let p2 = self.p * self.p;
        loop {
            let c = p2 * self.rng.random_range(1..=2000i64);
            let d = 1 + self.p * self.rng.random_range(-3000..=3000i64);
            if crate::arith::gcd(c, d) == 1 {
                let g = UnimodularMatrix::from_bottom_row(c, d).expect("coprime row");
                return if self.rng.random_bool(0.5) {
                    g
                } else {
                    g.checked_mul(&UnimodularMatrix::translation(self.rng.random_range(-50..=50))).expect("small entries")
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_in_the_group_and_bounded() {
        let mut s = Gamma0Sampler::new(7, 42);
        let mut big = 0;
        for _ in 0..500 {
            let g = s.sample();
            assert_eq!(g.c % 7, 0);
            assert!(g.max_entry() <= Gamma0Sampler::DEFAULT_MAX_ENTRY);
            assert_eq!(g.a as i128 * g.d as i128 - g.b as i128 * g.c as i128, 1);
            if g.max_entry() > 1_000_000 {
                big += 1;
            }
        }
        assert!(big > 50);
    }

    #[test]
    fn seeds_reproduce() {
        let a: Vec<_> = (0..10)
            .map({
                let mut s = Gamma0Sampler::new(5, 9);
                move |_| s.sample()
            })
            .collect();
        let mut s = Gamma0Sampler::new(5, 9);
        let b: Vec<_> = (0..10).map(|_| s.sample()).collect();
        assert_eq!(a, b);
    }
}
