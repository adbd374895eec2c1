//! Working precision and summation order.

use rug::{Complex, Float};
use serde::Serialize;

use crate::error::{Error, Result};

/// Order in which a list of terms is reduced to a single value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SummationMode {
    #[default]
    SequentialAscending,
    DeterministicTree,
}

/// Precision settings carried through every floating computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrecisionConfig {
    pub working_bits: u32,
    pub summation: SummationMode,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self { working_bits: 256, summation: SummationMode::SequentialAscending }
    }
}

impl PrecisionConfig {
    pub fn new(working_bits: u32, summation: SummationMode) -> Result<Self> {
        if working_bits < 64 {
            return Err(Error::BadInput(format!("working precision {working_bits} < 64 bits")));
        }
        Ok(Self { working_bits, summation })
    }

    pub fn with_bits(working_bits: u32) -> Result<Self> {
        Self::new(working_bits, SummationMode::SequentialAscending)
    }

    pub fn bits(&self) -> u32 {
        self.working_bits
    }

    pub fn zero(&self) -> Complex {
        Complex::new(self.working_bits)
    }

    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.working_bits, v)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.working_bits, rug::float::Constant::Pi)
    }

    /// Reduces `terms` according to the summation mode.
    pub fn sum(&self, terms: &[Complex]) -> Complex {
        match self.summation {
            SummationMode::SequentialAscending => {
                let mut acc = self.zero();
                for t in terms {
                    acc += t;
                }
                acc
            }
            SummationMode::DeterministicTree => self.tree_sum(terms),
        }
    }

    fn tree_sum(&self, terms: &[Complex]) -> Complex {
        match terms.len() {
            0 => self.zero(),
            1 => Complex::with_val(self.working_bits, &terms[0]),
            n => {
                let (lo, hi) = terms.split_at(n / 2);
                let mut acc = self.tree_sum(lo);
                acc += self.tree_sum(hi);
                acc
            }
        }
    }

    /// Number of significant decimal digits matching the working precision.
    pub fn decimal_digits(&self) -> usize {
        (self.working_bits as f64 * std::f64::consts::LOG10_2).ceil() as usize
    }
}

/// Decimal string with the digits justified by the float's own precision.
pub fn decimal(x: &Float) -> String {
    let digits = (x.prec() as f64 * std::f64::consts::LOG10_2).floor() as usize;
    x.to_string_radix(10, Some(digits.max(1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_and_sequential_agree_on_exact_terms() {
        let cfg = PrecisionConfig::default();
        let terms: Vec<Complex> = (0..37).map(|k| Complex::with_val(256, (k, -k))).collect();
        let a = cfg.sum(&terms);
        let tree = PrecisionConfig { summation: SummationMode::DeterministicTree, ..cfg };
        let b = tree.sum(&terms);
        assert_eq!(a, b);
        assert_eq!(*a.real(), 666);
    }

    #[test]
    fn low_precision_rejected() {
        assert!(PrecisionConfig::with_bits(32).is_err());
    }
}
