//! Tables of the roots of unity `e(k/N)` for the summation kernels.

use rug::Complex;

use super::phase::{phase_to_complex, PhaseRational};
use super::precision::PrecisionConfig;

/// Moduli up to this size are tabulated in full.
const FULL_TABLE_LIMIT: u64 = 1 << 15;

/// `e(k/N)` for all residues `k`, either stored directly or split as
/// `e(hi*B/N) * e(lo/N)` with `B ~ sqrt(N)`.
#[derive(Clone, Debug)]
pub struct RootTable {
    modulus: u64,
    block: u64,
    fine: Vec<Complex>,
    coarse: Vec<Complex>,
}

impl RootTable {
    pub fn new(modulus: u64, cfg: &PrecisionConfig) -> Self {
        assert!(modulus > 0);
        let root = |k: u64| phase_to_complex(&PhaseRational::from_ratio(k as i64, modulus as i64), cfg);
        if modulus <= FULL_TABLE_LIMIT {
            return Self { modulus, block: modulus, fine: (0..modulus).map(root).collect(), coarse: Vec::new() };
        }
        let block = (modulus as f64).sqrt().ceil() as u64;
        let fine = (0..block).map(root).collect();
        let coarse = (0..modulus.div_ceil(block)).map(|h| root(h * block)).collect();
        Self { modulus, block, fine, coarse }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Adds `e(k/N)` to `acc`; `k` must already be reduced.
    #[inline]
    pub fn add_to(&self, k: u64, acc: &mut Complex) {
        debug_assert!(k < self.modulus);
        if self.coarse.is_empty() {
            *acc += &self.fine[k as usize];
        } else {
            let (hi, lo) = ((k / self.block) as usize, (k % self.block) as usize);
            *acc += &self.fine[lo] * &self.coarse[hi];
        }
    }

    pub fn get(&self, k: u64, cfg: &PrecisionConfig) -> Complex {
        let mut z = cfg.zero();
        self.add_to(k % self.modulus, &mut z);
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn split_table_matches_direct() {
        let cfg = PrecisionConfig::default();
        let n = FULL_TABLE_LIMIT * 3 + 7;
        let table = RootTable::new(n, &cfg);
        for k in [0, 1, 2, 181, 1000, n / 2, n - 1] {
            let direct = phase_to_complex(&PhaseRational::from_ratio(k as i64, n as i64), &cfg);
            let diff = Float::with_val(256, (table.get(k, &cfg) - direct).abs().real());
            assert!(diff < 1e-74, "k = {k}");
        }
    }
}
