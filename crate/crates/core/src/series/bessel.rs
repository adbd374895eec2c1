//! Bessel functions of order one half.

use rug::Float;
use serde::Serialize;

use crate::arith::PrecisionConfig;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BesselKind {
    I,
    J,
}

/// `I_{1/2}(z) = sqrt(2/(pi z)) sinh z` or `J_{1/2}(z) = sqrt(2/(pi z)) sin z`.
pub fn bessel_half(kind: BesselKind, z: &Float, cfg: &PrecisionConfig) -> Result<Float> {
    if *z <= 0 || z.is_nan() {
        return Err(Error::DomainError(z.to_string()));
    }
    let z = Float::with_val(cfg.working_bits, z);
    let scale = (cfg.real(2) / (cfg.pi() * &z)).sqrt();
    let f = match kind {
        BesselKind::I => z.sinh(),
        BesselKind::J => z.sin(),
    };
    Ok(scale * f)
}

/// `I_{1/2}(z)` in double precision, stable as `z -> 0`.
pub(crate) fn i_half_f64(z: f64) -> f64 {
    let ratio = if z < 1e-4 { 1.0 + z * z / 6.0 } else { z.sinh() / z };
    (2.0 * z / std::f64::consts::PI).sqrt() * ratio
}
