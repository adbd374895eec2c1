//! Vanishing statements for `S_inf_inf` and `S_0inf` at `p = 5, 7`.

use std::fmt;
use std::str::FromStr;

use rug::{Complex, Float};
use serde::{Serialize, Serializer};

use super::{s_zero_inf, sin_pi_ratio, InfKernel};
use crate::arith::{decimal, PhaseRational, PrecisionConfig};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VanishingCase {
    Five4,
    Seven5,
    Five1,
    Five2,
    Seven0,
    Seven1First,
    Seven1Second,
    Seven2,
    Seven3First,
    Seven3Second,
    Seven4First,
    Seven4Second,
    Seven6,
}

/// `C_p^{x,y} = cos(x pi/p) - cos(y pi/p)`; a weight is a sum of these.
type Weight = &'static [(u32, u32)];

impl VanishingCase {
    pub const ALL: [VanishingCase; 13] = [
        Self::Five4,
        Self::Seven5,
        Self::Five1,
        Self::Five2,
        Self::Seven0,
        Self::Seven1First,
        Self::Seven1Second,
        Self::Seven2,
        Self::Seven3First,
        Self::Seven3Second,
        Self::Seven4First,
        Self::Seven4Second,
        Self::Seven6,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Five4 => "5-4",
            Self::Seven5 => "7-5",
            Self::Five1 => "5-1",
            Self::Five2 => "5-2",
            Self::Seven0 => "7-0",
            Self::Seven1First => "7-1.1",
            Self::Seven1Second => "7-1.2",
            Self::Seven2 => "7-2",
            Self::Seven3First => "7-3.1",
            Self::Seven3Second => "7-3.2",
            Self::Seven4First => "7-4.1",
            Self::Seven4Second => "7-4.2",
            Self::Seven6 => "7-6",
        }
    }

    /// `(p, k)`: the sums are taken at the argument `pn + k`.
    pub fn progression(self) -> (i64, i64) {
        match self {
            Self::Five4 => (5, 4),
            Self::Seven5 => (7, 5),
            Self::Five1 => (5, 1),
            Self::Five2 => (5, 2),
            Self::Seven0 => (7, 0),
            Self::Seven1First | Self::Seven1Second => (7, 1),
            Self::Seven2 => (7, 2),
            Self::Seven3First | Self::Seven3Second => (7, 3),
            Self::Seven4First | Self::Seven4Second => (7, 4),
            Self::Seven6 => (7, 6),
        }
    }

    /// Weights of the `l = 1, 2, ...` summands of a linear combination.
    fn weights(self) -> Option<[Weight; 3]> {
        const E: Weight = &[];
        Some(match self {
            Self::Five4 | Self::Seven5 => return None,
            Self::Five1 => [&[(2, 4)], &[(4, 2)], E],
            Self::Five2 => [&[(0, 4)], &[(0, 2)], E],
            Self::Seven0 | Self::Seven1Second => [&[(4, 6)], &[(6, 2)], &[(2, 4)]],
            Self::Seven1First => [&[(2, 4)], &[(4, 6)], &[(6, 2)]],
            Self::Seven2 => [&[(0, 6)], &[(0, 2)], &[(0, 4)]],
            Self::Seven3First => [&[(0, 4)], &[(0, 6)], &[(0, 2)]],
            Self::Seven3Second | Self::Seven4Second => [&[(2, 6)], &[(4, 2)], &[(6, 4)]],
            Self::Seven4First => [&[(0, 2)], &[(0, 4)], &[(0, 6)]],
            Self::Seven6 => [&[(0, 4), (2, 6)], &[(0, 6), (4, 2)], &[(0, 2), (6, 4)]],
        })
    }
}

impl fmt::Display for VanishingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for VanishingCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace(',', ".");
        Self::ALL.into_iter().find(|c| c.tag() == s).ok_or(Error::UnknownCase(s))
    }
}

impl Serialize for VanishingCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

fn ser_float<S: Serializer>(x: &Float, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&decimal(x))
}

fn ser_opt_float<S: Serializer>(x: &Option<Float>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&decimal(x)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingResult {
    pub case: VanishingCase,
    pub n: i64,
    pub c: i64,
    /// `pn + k`.
    pub argument: i64,
    #[serde(serialize_with = "ser_float")]
    pub residual: Float,
    /// `10^3 * term_count * 2^{1-P}`.
    #[serde(serialize_with = "ser_float")]
    pub floor: Float,
    pub term_count: u64,
    pub pass: bool,
    /// Larger residual of two scrambled variants of the combination.
    #[serde(serialize_with = "ser_opt_float")]
    pub control: Option<Float>,
}

/// Shared state for the sums at one modulus `c`.
struct Evaluator<'a> {
    kernel: InfKernel,
    cfg: &'a PrecisionConfig,
    terms: u64,
}

impl Evaluator<'_> {
    fn inf(&mut self, ell: i64, argument: i64) -> Result<Complex> {
        let v = self.kernel.evaluate(ell, 0, argument, self.cfg)?;
        self.terms += v.term_count;
        Ok(v.value)
    }

    /// `2 sqrt(7) S_0inf^{(l)}(0, N, a; 0)` when `a = c/7` has `[al] = +-1`.
    fn zero_cusp(&mut self, ell: i64, argument: i64) -> Result<Option<Complex>> {
        let a = self.kernel.c / 7;
        if !matches!((a * ell).rem_euclid(7), 1 | 6) {
            return Ok(None);
        }
        let v = s_zero_inf(ell, argument, a, 7, 0, self.cfg)?;
        self.terms += v.term_count;
        let scale = self.cfg.real(7).sqrt() * 2u32;
        Ok(Some(v.value * scale))
    }

    fn eighth(&self) -> Complex {
        PhaseRational::from_ratio(-1, 8).to_complex(self.cfg)
    }

    /// `S_7^{(l)}(N, c)`, split into its cusp-at-infinity and cusp-at-zero parts.
    fn s7_parts(&mut self, ell: i64, argument: i64) -> Result<(Complex, Option<Complex>)> {
        let sin = sin_pi_ratio(ell, 7, self.cfg);
        let inf = self.inf(ell, argument)? * self.eighth() * &sin;
        let zero = self.zero_cusp(ell, argument)?.map(|z| z * &sin);
        Ok((inf, zero))
    }
}

fn weight_value(w: Weight, p: i64, cfg: &PrecisionConfig) -> Float {
    let cos = |x: u32| {
        let mut t = cfg.pi() * x;
        t /= p;
        t.cos()
    };
    w.iter().fold(cfg.real(0), |acc, &(x, y)| acc + cos(x) - cos(y))
}

fn magnitude(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// Evaluates the vanishing statement `case` at `n` and modulus `c` and
/// compares the residual with the precision floor.
pub fn vanishing_combination_check(case: VanishingCase, n: i64, c: i64, cfg: &PrecisionConfig) -> Result<VanishingResult> {
    let (p, k) = case.progression();
    if c < 1 || c % p != 0 {
        return Err(Error::BadModulus { modulus: c, level: p });
    }
    if n < 0 {
        return Err(Error::BadInput(format!("n = {n} is negative")));
    }
    let argument = p * n + k;
    let mut ev = Evaluator { kernel: InfKernel::new(c, p)?, cfg, terms: 0 };
    let (residual, control) = match case.weights() {
        None if p == 5 => {
            let mut worst = cfg.real(0);
            for ell in 1..5 {
                worst = worst.max(&magnitude(&ev.inf(ell, argument)?));
            }
            (worst, None)
        }
        None => {
            let mut worst = cfg.real(0);
            let mut control: Option<Float> = None;
            for ell in 1..7 {
                let inf = ev.inf(ell, argument)? * ev.eighth();
                match ev.zero_cusp(ell, argument)? {
                    None => worst = worst.max(&magnitude(&inf)),
                    Some(z) => {
                        worst = worst.max(&magnitude(&Complex::with_val(cfg.working_bits, &inf + &z)));
                        let flipped = magnitude(&(inf - z));
                        control = Some(control.map_or(flipped.clone(), |c| c.max(&flipped)));
                    }
                }
            }
            (worst, control)
        }
        Some(weights) => {
            let count = if p == 5 { 2 } else { 3 };
            let mut values = Vec::with_capacity(count);
            for ell in 1..=count as i64 {
                let v = if p == 5 {
                    ev.inf(ell, argument)? * sin_pi_ratio(ell, 5, cfg)
                } else {
                    let (inf, zero) = ev.s7_parts(ell, argument)?;
                    match zero {
                        Some(z) => inf + z,
                        None => inf,
                    }
                };
                values.push(v);
            }
            let w: Vec<Float> = weights[..count].iter().map(|w| weight_value(w, p, cfg)).collect();
            let combine = |w: &[Float]| {
                let mut acc = cfg.zero();
                for (wi, v) in w.iter().zip(&values) {
                    acc += Complex::with_val(cfg.working_bits, v * wi);
                }
                magnitude(&acc)
            };
            // two scrambles: exchange the first two weights, and exchange the
            // superscripts of the first weight
            let mut swapped = w.clone();
            swapped.swap(0, 1);
            let mut flipped = w.clone();
            flipped[0] = -flipped[0].clone();
            let control = combine(&swapped).max(&combine(&flipped));
            (combine(&w), Some(control))
        }
    };
    let terms = ev.terms;
    let floor = precision_floor(terms, cfg);
    let pass = residual <= floor;
    Ok(VanishingResult { case, n, c, argument, residual, floor, term_count: terms, pass, control })
}

/// `10^3 * terms * 2^{1-P}`.
pub fn precision_floor(terms: u64, cfg: &PrecisionConfig) -> Float {
    let mut f = cfg.real(1000u64 * terms.max(1));
    f >>= cfg.working_bits - 1;
    f
}
