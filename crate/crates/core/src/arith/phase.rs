//! Exact phases `e(theta)` with `theta` a rational reduced modulo 1.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use rug::{Complex, Float, Integer, Rational};

use super::precision::PrecisionConfig;

pub type RationalNumber = Rational;
pub type BigFloat = Float;
pub type BigComplex = Complex;

/// The unimodular number `e(theta) = exp(2 pi i theta)`, stored exactly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseRational(Rational);

impl PhaseRational {
    pub fn new(theta: Rational) -> Self {
        let (fract, _) = theta.fract_floor(Integer::new());
        Self(fract)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "phase with zero denominator");
        Self::new(Rational::from((num, den)))
    }

    pub fn from_big_ratio(num: Integer, den: Integer) -> Self {
        Self::new(Rational::from((num, den)))
    }

    pub fn zero() -> Self {
        Self(Rational::new())
    }

    /// Phase of a sign: `+1 -> 0`, `-1 -> 1/2`.
    pub fn sign(s: i32) -> Self {
        match s {
            1 => Self::zero(),
            -1 => Self::from_ratio(1, 2),
            _ => panic!("sign phase of {s}"),
        }
    }

    pub fn theta(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    pub fn conj(&self) -> Self {
        Self::new(-self.0.clone())
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(self.0.clone() * Integer::from(k))
    }

    /// Value as a sign when the phase is 0 or 1/2.
    pub fn as_sign(&self) -> Option<i32> {
        if self.0 == 0 {
            Some(1)
        } else if self.0 == (1, 2) {
            Some(-1)
        } else {
            None
        }
    }

    pub fn to_complex(&self, cfg: &PrecisionConfig) -> Complex {
        phase_to_complex(self, cfg)
    }
}

impl fmt::Display for PhaseRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({})", self.0)
    }
}

impl Mul<&PhaseRational> for &PhaseRational {
    type Output = PhaseRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &PhaseRational) -> PhaseRational {
        PhaseRational::new(Rational::from(&self.0 + &rhs.0))
    }
}

impl Mul for PhaseRational {
    type Output = PhaseRational;
    fn mul(self, rhs: PhaseRational) -> PhaseRational {
        &self * &rhs
    }
}

impl Add<&Rational> for &PhaseRational {
    type Output = PhaseRational;
    fn add(self, rhs: &Rational) -> PhaseRational {
        PhaseRational::new(Rational::from(&self.0 + rhs))
    }
}

impl Neg for &PhaseRational {
    type Output = PhaseRational;
    fn neg(self) -> PhaseRational {
        self.conj()
    }
}

/// Evaluates `e(theta)` at the working precision. Multiples of 1/4 are exact.
pub fn phase_to_complex(phase: &PhaseRational, cfg: &PrecisionConfig) -> Complex {
    let bits = cfg.working_bits;
    let theta = phase.theta();
    let quarter = Rational::from(theta * 4u32);
    if quarter.denom() == &1u32 {
        let (re, im) = match quarter.numer().to_i32().unwrap_or(0) {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        return Complex::with_val(bits, (re, im));
    }
    let guard = bits + 32;
    let mut angle = Float::with_val(guard, rug::float::Constant::Pi);
    angle *= 2u32;
    angle *= theta;
    let (s, c) = angle.sin_cos(Float::new(guard));
    Complex::with_val(bits, (c, s))
}

/// A formal integer combination of phases, reduced once at the end.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseSum {
    weights: BTreeMap<PhaseRational, i64>,
    terms: u64,
}

impl PhaseSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, phase: PhaseRational, weight: i64) {
        self.terms += 1;
        *self.weights.entry(phase).or_insert(0) += weight;
    }

    pub fn term_count(&self) -> u64 {
        self.terms
    }

    pub fn distinct_phases(&self) -> usize {
        self.weights.values().filter(|w| **w != 0).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PhaseRational, i64)> {
        self.weights.iter().filter(|(_, w)| **w != 0).map(|(p, w)| (p, *w))
    }

    /// Numeric value, accumulated in ascending phase order.
    pub fn evaluate(&self, cfg: &PrecisionConfig) -> Complex {
        let terms: Vec<Complex> = self
            .iter()
            .map(|(phase, w)| {
                let mut z = phase_to_complex(phase, cfg);
                z *= w;
                z
            })
            .collect();
        cfg.sum(&terms)
    }
}
