use rug::{Integer, Rational};
use serde::Serialize;

use crate::arith::modular::require_prime;
use crate::arith::PhaseRational;
use crate::error::{Error, Result};

/// Phase of `exp(3 pi i c d l^2 / p^2) (-1)^{cl/p} (-1)^{floor(dl/p)}`.
pub fn mu_scalar(c: i64, d: i64, ell: i64, p: i64) -> Result<PhaseRational> {
    if c % p != 0 {
        return Err(Error::BadModulus { modulus: c, level: p });
    }
    if ell < 1 || ell >= p {
        return Err(Error::BadInput(format!("l = {ell} outside 1..{p}")));
    }
    let c = Integer::from(c);
    let quad = Rational::from((Integer::from(&c * d) * (3 * ell * ell), Integer::from(2 * p * p)));
    let cusp = Integer::from(&c / p) * ell;
    let floor = Integer::from((d as i128 * ell as i128).div_euclid(p as i128));
    let signs = Rational::from((cusp + floor, Integer::from(2)));
    Ok(PhaseRational::new(quad + signs))
}

/// Cusp parameters of `mu_p`: `alpha` at infinity and at the cusp 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspAlpha {
    pub p: i64,
    #[serde(serialize_with = "crate::mup::scalar::ser_rational")]
    pub alpha_infty: Rational,
    /// Indexed by `l - 1`.
    #[serde(serialize_with = "crate::mup::scalar::ser_rationals")]
    pub alpha_zero: Vec<Rational>,
}

impl CuspAlpha {
    pub fn zero(&self, ell: i64) -> &Rational {
        &self.alpha_zero[(ell - 1) as usize]
    }

    /// `alpha_{-0} = 1 - alpha_{+0}`.
    pub fn minus_zero(&self, ell: i64) -> Rational {
        Rational::from(1) - self.zero(ell)
    }
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub(crate) fn ser_rationals<S: serde::Serializer>(rs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(|r| r.to_string()))
}

pub fn cusp_alphas(p: i64) -> Result<CuspAlpha> {
    require_prime(p)?;
    let alpha_zero = (1..p)
        .map(|ell| {
            let theta = Rational::from((3 * ell * ell, 2 * p)) + Rational::from((p, 24)) + Rational::from((ell, 2));
            theta.fract_floor(Integer::new()).0
        })
        .collect();
    Ok(CuspAlpha { p, alpha_infty: Rational::from((1, 24)), alpha_zero })
}
