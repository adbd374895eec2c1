//! The rational data deciding which terms of the exact formula are present:
//! `x_r`, `delta_{l,u,a,r}`, `m_{l,u,a,r}`, condition sets and `X_r`.

use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::arith::modular::{is_prime, require_prime};
use crate::arith::{gcd, PrecisionConfig};
use crate::error::{Error, Result};
use crate::mup::cusp_alphas;

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_integer<S: serde::Serializer>(m: &Option<Integer>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match m {
        Some(m) => s.serialize_str(&m.to_string()),
        None => s.serialize_none(),
    }
}

/// `x_r = ((2r + 1) - 2 sqrt(r(r + 1))) / 6`, the root of
/// `3x^2/2 - (1/2 + r)x + 1/24` in `(0, 1/2)`.
pub fn x_r(r: u32, cfg: &PrecisionConfig) -> Float {
    let bits = cfg.working_bits;
    let r = Integer::from(r);
    let radicand = Float::with_val(bits, Integer::from(&r * &r) + &r).sqrt() * 2u32;
    (Float::with_val(bits, Integer::from(&r * 2u32) + 1u32) - radicand) / 6u32
}

/// The exact surd form `(rational, coefficient, radicand)` of `x_r`,
/// meaning `rational + coefficient * sqrt(radicand)`.
pub fn x_r_surd(r: u32) -> (Rational, Rational, Integer) {
    let r = Integer::from(r);
    (Rational::from((Integer::from(&r * 2u32) + 1u32, 6)), Rational::from((-1, 3)), Integer::from(&r * &r) + &r)
}

/// Where `[a l] / u` falls relative to `(0, 1/6)` and `(5/6, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Low,
    High,
    Middle,
}

/// All quantities attached to `(l, u, a, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaRecord {
    pub ell: i64,
    pub u: i64,
    pub a: i64,
    pub r: i64,
    /// `[a_(u) l]`, reduced modulo `u_(a)`.
    pub reduced: i64,
    pub branch: Branch,
    #[serde(serialize_with = "ser_rational")]
    pub delta: Rational,
    #[serde(serialize_with = "ser_opt_integer")]
    pub m_int: Option<Integer>,
    /// `(a_(u) l - [a_(u) l]) / u_(a)`.
    pub t: i64,
    pub in_condition: bool,
    /// `ceil(-u delta)` when `delta > 0`, else 0.
    #[serde(rename = "X")]
    pub x: i64,
}

/// `delta_{l,u,a,r}` and `m_{l,u,a,r}` for odd `u >= 3` with `u` not dividing `a`.
pub fn delta_record(ell: i64, u: i64, a: i64, r: i64) -> Result<DeltaRecord> {
    if u < 3 || u % 2 == 0 {
        return Err(Error::BadInput(format!("u = {u} must be odd and at least 3")));
    }
    if a < 1 || r < 0 {
        return Err(Error::BadInput(format!("need a >= 1 and r >= 0, got a = {a}, r = {r}")));
    }
    if a % u == 0 {
        return Err(Error::BadInput(format!("{u} divides a = {a}")));
    }
    if ell < 1 || ell >= u || gcd(ell, u) != 1 {
        return Err(Error::BadInput(format!("l = {ell} must be a unit in 1..{u}")));
    }
    let g = gcd(u, a);
    let (ua, au) = (u / g, a / g);
    let full = au as i128 * ell as i128;
    let reduced = full.rem_euclid(ua as i128) as i64;
    let t = ((full - reduced as i128) / ua as i128) as i64;
    let x = Rational::from((reduced, ua));
    let branch = if reduced > 0 && 6 * reduced < ua {
        Branch::Low
    } else if 6 * reduced > 5 * ua {
        Branch::High
    } else {
        Branch::Middle
    };
    let three_halves_sq = Rational::from(&x * &x) * Rational::from((3, 2));
    let rr = Rational::from(r);
    let delta = match branch {
        Branch::Low => three_halves_sq - (Rational::from((1, 2)) + &rr) * &x + Rational::from((1, 24)),
        Branch::High => three_halves_sq - (&x * Rational::from((5, 2))) + Rational::from((25, 24)) - &rr + rr.clone() * &x,
        Branch::Middle => Rational::new(),
    };
    let big_t = Integer::from(full - reduced as i128);
    let ua_i = Integer::from(ua);
    let m_int = match branch {
        Branch::Middle => None,
        _ => {
            let sq: Integer = Integer::from(&big_t * &big_t) * -3;
            let num = if branch == Branch::Low {
                sq - Integer::from(&ua_i * (1 + 2 * r)) * &big_t
            } else {
                sq + Integer::from(&ua_i * (2 * r - 5)) * &big_t + Integer::from(&ua_i * &ua_i) * (2 * (r - 1))
            };
            let den = Integer::from(&ua_i * &ua_i) * 2;
            if !num.is_divisible(&den) {
                return Err(Error::DomainError(format!("m_(l,u,a,r) = {num}/{den} is not integral")));
            }
            Some(num / den)
        }
    };
    if let (true, Some(m)) = (is_prime(u), &m_int) {
        let t_r = Rational::from(t);
        let minus_m = match branch {
            Branch::Low => Rational::from((3, 2)) * t_r.clone() * &t_r + Rational::from((1 + 2 * r, 2)) * t_r,
            _ => Rational::from((3, 2)) * t_r.clone() * &t_r + Rational::from((5 - 2 * r, 2)) * t_r + (1 - r),
        };
        if minus_m != Rational::from(-m) {
            return Err(Error::DomainError(format!("m forms disagree at (l, u, a, r) = ({ell}, {u}, {a}, {r})")));
        }
    }
    let in_condition = delta > 0;
    let x_int = if in_condition {
        let scaled = -Rational::from(&delta * u);
        scaled.ceil().numer().to_i64().ok_or_else(|| Error::Overflow("X".into()))?
    } else {
        0
    };
    Ok(DeltaRecord { ell, u, a, r, reduced, branch, delta, m_int, t, in_condition, x: x_int })
}

/// Largest `r` with `x_r > 1/p`, or `-1`; decided by the sign of `delta_{1,p,1,r}`.
pub fn max_r(p: i64) -> Result<i64> {
    require_prime(p)?;
    let mut r = -1;
    while delta_record(1, p, 1, r + 1)?.in_condition {
        r += 1;
    }
    Ok(r)
}

/// The members of the condition set for `(p, a, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionSet {
    pub p: i64,
    pub a: i64,
    pub r: i64,
    pub members: Vec<i64>,
}

impl ConditionSet {
    pub fn contains(&self, ell: i64) -> bool {
        self.members.binary_search(&ell).is_ok()
    }
}

pub fn condition_set(p: i64, a: i64, r: i64) -> Result<ConditionSet> {
    require_prime(p)?;
    let members = (1..p).map(|ell| delta_record(ell, p, a, r).map(|d| (ell, d.in_condition))).collect::<Result<Vec<_>>>()?;
    Ok(ConditionSet { p, a, r, members: members.into_iter().filter(|m| m.1).map(|m| m.0).collect() })
}

/// `X_r^{(l)}` for `l = 1..p`, zero outside the condition set.
pub fn x_vector(p: i64, r: i64) -> Result<Vec<i64>> {
    require_prime(p)?;
    (1..p).map(|ell| delta_record(ell, p, 1, r).map(|d| d.x)).collect()
}

/// Checks `X_r^{(l)} - alpha_{+0}^{(l)} = -p delta_{l,p,1,r}` on the members.
pub fn verify_x_identity(p: i64, r: i64) -> Result<usize> {
    let alphas = cusp_alphas(p)?;
    let mut members = 0;
    for ell in 1..p {
        let rec = delta_record(ell, p, 1, r)?;
        if !rec.in_condition {
            continue;
        }
        members += 1;
        let lhs = Rational::from(rec.x) - alphas.zero(ell);
        if lhs != -Rational::from(&rec.delta * p) {
            return Err(Error::DomainError(format!("X identity fails at p = {p}, r = {r}, l = {ell}")));
        }
    }
    Ok(members)
}
