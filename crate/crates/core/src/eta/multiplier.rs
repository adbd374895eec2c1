//! Multiplier systems of weight 1/2 and the cocycle `w_k`.

use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};

use super::dedekind::dedekind_twelve_c;
use super::matrix::UnimodularMatrix;
use crate::arith::{kronecker_symbol, PhaseRational, PrecisionConfig};
use crate::error::{Error, Result};

/// A multiplier system with exactly known phases.
pub trait Multiplier: Sync {
    fn phase(&self, g: &UnimodularMatrix) -> Result<PhaseRational>;

    fn name(&self) -> String;
}

/// `nu_eta`, the multiplier of the Dedekind eta function.
#[derive(Clone, Copy, Debug, Default)]
pub struct Eta;

/// `nu_theta` on `Gamma0(4)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Theta;

/// Complex conjugate of another multiplier.
#[derive(Clone, Copy, Debug)]
pub struct Conjugate<M>(pub M);

/// `(d|modulus) * inner(gamma)`.
#[derive(Clone, Copy, Debug)]
pub struct KroneckerTwist<M> {
    pub modulus: i64,
    pub inner: M,
}

impl Multiplier for Eta {
    fn phase(&self, g: &UnimodularMatrix) -> Result<PhaseRational> {
        eta_multiplier(g)
    }
    fn name(&self) -> String {
        "nu_eta".into()
    }
}

impl Multiplier for Theta {
    fn phase(&self, g: &UnimodularMatrix) -> Result<PhaseRational> {
        theta_multiplier(g)
    }
    fn name(&self) -> String {
        "nu_theta".into()
    }
}

impl<M: Multiplier> Multiplier for Conjugate<M> {
    fn phase(&self, g: &UnimodularMatrix) -> Result<PhaseRational> {
        Ok(self.0.phase(g)?.conj())
    }
    fn name(&self) -> String {
        format!("conj({})", self.0.name())
    }
}

impl<M: Multiplier> Multiplier for KroneckerTwist<M> {
    fn phase(&self, g: &UnimodularMatrix) -> Result<PhaseRational> {
        if g.c % self.modulus != 0 {
            return Err(Error::NotInGroup { matrix: g.to_string(), group: format!("Gamma0({})", self.modulus) });
        }
        let chi = kronecker_symbol(g.d, self.modulus);
        Ok(PhaseRational::sign(chi) * self.inner.phase(g)?)
    }
    fn name(&self) -> String {
        format!("(.|{}) {}", self.modulus, self.inner.name())
    }
}

/// `nu_eta(gamma)` from the Dedekind-sum formula.
pub fn eta_multiplier(g: &UnimodularMatrix) -> Result<PhaseRational> {
    match g.c.signum() {
        0 => Ok(match g.d {
            1 => PhaseRational::from_ratio(g.b, 24),
            _ => PhaseRational::new(Rational::from((-6 - g.b as i128, 24i128))),
        }),
        1 => {
            // -1/8 - s/2 + (a + d)/24c, with s = U/12c
            let c = Integer::from(g.c);
            let u = dedekind_twelve_c(g.d, g.c)?;
            let num = Integer::from(g.a) + g.d - u - Integer::from(&c * 3u32);
            Ok(PhaseRational::from_big_ratio(num, c * 24u32))
        }
        _ => Ok(&eta_multiplier(&-*g)? + &Rational::from((1, 4))),
    }
}

/// `nu_eta(gamma)` from the Jacobi-symbol case formula, for cross-checking.
pub fn eta_multiplier_knopp(g: &UnimodularMatrix) -> Result<PhaseRational> {
    if g.c == 0 {
        return eta_multiplier(g);
    }
    if g.c < 0 {
        return Ok(&eta_multiplier_knopp(&-*g)? + &Rational::from((1, 4)));
    }
    let (a, b, c, d) = (Integer::from(g.a), Integer::from(g.b), Integer::from(g.c), Integer::from(g.d));
    let c2m1 = Integer::from(&c * &c) - 1u32;
    let mut num = Integer::from(&a + &d) * &c - Integer::from(&b * &d) * c2m1;
    let symbol = if g.c % 2 == 1 {
        num -= Integer::from(&c * 3u32);
        kronecker_symbol(g.d, g.c)
    } else {
        num += Integer::from(&d * 3u32) - 3u32 - Integer::from(&c * &d) * 3u32;
        kronecker_symbol(g.c, g.d)
    };
    if symbol == 0 {
        return Err(Error::NonCoprime(g.c, g.d));
    }
    Ok(PhaseRational::sign(symbol) * PhaseRational::from_big_ratio(num, Integer::from(24)))
}

/// `nu_theta(gamma) = (c|d) eps_d^{-1}` for `4 | c`.
pub fn theta_multiplier(g: &UnimodularMatrix) -> Result<PhaseRational> {
    if g.c % 4 != 0 {
        return Err(Error::NotInGroup { matrix: g.to_string(), group: "Gamma0(4)".into() });
    }
    let symbol = kronecker_symbol(g.c, g.d);
    let eps_inv = if g.d.rem_euclid(4) == 1 { PhaseRational::zero() } else { PhaseRational::from_ratio(-1, 4) };
    Ok(PhaseRational::sign(symbol) * eps_inv)
}

fn golden_point(bits: u32) -> Complex {
    let phi = (Float::with_val(bits, 5).sqrt() + 1u32) / 2u32;
    Complex::with_val(bits, (0, phi))
}

/// `cz + d`.
fn automorphy(g: &UnimodularMatrix, z: &Complex) -> Complex {
    Complex::with_val(z.prec().0, z * g.c) + g.d
}

fn mobius(g: &UnimodularMatrix, z: &Complex) -> Complex {
    let num = Complex::with_val(z.prec().0, z * g.a) + g.b;
    num / automorphy(g, z)
}

/// `w_k(g1, g2) = j(g2, z)^k j(g1, g2 z)^k j(g1 g2, z)^{-k}` with principal
/// arguments in `(-pi, pi]`, snapped to a multiple of 1/8.
pub fn cocycle_w(k: &Rational, g1: &UnimodularMatrix, g2: &UnimodularMatrix, cfg: &PrecisionConfig) -> Result<PhaseRational> {
    if Rational::from(k * 2u32).denom() != &1u32 {
        return Err(Error::BadInput(format!("weight {k} is not a half-integer")));
    }
    let product = g1.checked_mul(g2)?;
    let bits = cfg.working_bits + 64;
    let z = golden_point(bits);
    let arg = |w: Complex| Float::with_val(bits, w.imag().atan2_ref(w.real()));
    let total = arg(automorphy(g2, &z)) + arg(automorphy(g1, &mobius(g2, &z))) - arg(automorphy(&product, &z));
    // phase of w is k * total / 2pi; measure it in eighths
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let eighths = total * Float::with_val(bits, k) * 8u32 / two_pi;
    let nearest = eighths.clone().round();
    let distance = Float::with_val(bits, &eighths - &nearest).abs();
    let mut tolerance = Float::with_val(bits, 1);
    tolerance >>= cfg.working_bits / 2;
    if distance > tolerance {
        return Err(Error::SnapFailure(format!("{} eighths", eighths.to_f64())));
    }
    let n = nearest.to_integer().expect("finite snapped phase");
    Ok(PhaseRational::from_big_ratio(n, Integer::from(8)))
}
