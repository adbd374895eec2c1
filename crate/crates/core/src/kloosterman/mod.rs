//! Kloosterman sums of the vector-valued multiplier `mu_p` at the cusp pairs
//! `(inf, inf)` and `(0, inf)`, the sums `B` and `D` of the asymptotic
//! formula, and the identities tying them together.

pub mod bringmann;
pub mod growth;
pub mod inf;
pub mod vanishing;
pub mod zero;

use rug::{Complex, Float};
use serde::Serialize;

use crate::arith::{phase_to_complex, PhaseRational, PrecisionConfig, RootTable};

pub use bringmann::{bridge_infinity, bridge_zero, bringmann_b, bringmann_d};
pub use growth::{growth_profile, GrowthFamily, GrowthProfile};
pub use inf::{s_inf_inf, s_inf_inf_reference, InfKernel};
pub use vanishing::{vanishing_combination_check, VanishingCase, VanishingResult};
pub use zero::{s_zero_inf, s_zero_inf_simplified};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KloostermanFamily {
    SInfInf,
    SZeroInf,
    B,
    D,
    ClassicalA,
    ScalarS,
}

/// A computed Kloosterman-type sum with its bookkeeping.
#[derive(Clone, Debug)]
pub struct KloostermanValue {
    pub family: KloostermanFamily,
    pub value: Complex,
    /// `c` or `a`.
    pub modulus: i64,
    pub ell: i64,
    pub term_count: u64,
}

impl KloostermanValue {
    /// `|value| <= term_count * max_weight`, with slack for rounding.
    pub fn within_trivial_bound(&self, max_weight: &Float) -> bool {
        let bound = Float::with_val(max_weight.prec(), max_weight * self.term_count) * 1.000001f64 + 1e-30f64;
        Float::with_val(max_weight.prec(), self.value.abs_ref()) <= bound
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.value.prec().0, self.value.abs_ref())
    }
}

/// Sums `e(k / modulus)` into one accumulator per bucket. The pairs are
/// sorted and counted first so each bucket is an exact integer combination
/// of roots before any rounding.
pub(crate) fn bucket_sums(mut keys: Vec<(usize, u64)>, buckets: usize, modulus: u64, cfg: &PrecisionConfig) -> Vec<Complex> {
    keys.sort_unstable();
    let table = (keys.len() as u64 >= modulus / 2).then(|| RootTable::new(modulus, cfg));
    let mut out = vec![cfg.zero(); buckets];
    let mut i = 0;
    while i < keys.len() {
        let mut j = i;
        while j < keys.len() && keys[j] == keys[i] {
            j += 1;
        }
        let (bucket, k) = keys[i];
        let root = match &table {
            Some(t) => t.get(k, cfg),
            None => phase_to_complex(&PhaseRational::from_ratio(k as i64, modulus as i64), cfg),
        };
        out[bucket] += root * ((j - i) as u32);
        i = j;
    }
    out
}

/// `sin(pi j / q)` at working precision.
pub(crate) fn sin_pi_ratio(j: i64, q: i64, cfg: &PrecisionConfig) -> Float {
    let mut x = cfg.pi() * j;
    x /= q;
    x.sin()
}
