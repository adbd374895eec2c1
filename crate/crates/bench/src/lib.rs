//! Shared workloads for the benchmarks.

use rankexact_core::arith::gcd;
use rankexact_core::eta::UnimodularMatrix;
use rankexact_core::mup::Gamma0Sampler;

/// A fixed batch of matrices in `Gamma_0(p)`.
pub fn gamma0_batch(p: i64, count: usize, seed: u64) -> Vec<UnimodularMatrix> {
    let mut sampler = Gamma0Sampler::new(p, seed);
    (0..count).map(|_| sampler.sample()).collect()
}

/// Coprime pairs `(d, c)` with `c` up to `c_max`.
pub fn dedekind_pairs(c_max: i64) -> Vec<(i64, i64)> {
    (1..=c_max).flat_map(|c| (0..c).filter(move |&d| gcd(d, c) == 1).map(move |d| (d, c))).collect()
}
