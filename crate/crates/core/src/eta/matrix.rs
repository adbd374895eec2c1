use std::fmt;
use std::ops::Neg;

use serde::Serialize;

use crate::error::{Error, Result};

/// An element `[[a, b], [c, d]]` of `SL2(Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnimodularMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMatrix {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };
    pub const T: Self = Self { a: 1, b: 1, c: 0, d: 1 };
    pub const S: Self = Self { a: 0, b: -1, c: 1, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a as i128 * d as i128 - b as i128 * c as i128 != 1 {
            return Err(Error::BadInput(format!("[[{a}, {b}], [{c}, {d}]] has determinant != 1")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn translation(b: i64) -> Self {
        Self { a: 1, b, c: 0, d: 1 }
    }

    /// `[[1, 0], [c, 1]]`.
    pub fn lower(c: i64) -> Self {
        Self { a: 1, b: 0, c, d: 1 }
    }

    /// Completes a coprime bottom row `(c, d)` with `c >= 1` using the
    /// representative `a` in `[0, c)`.
    pub fn from_bottom_row(c: i64, d: i64) -> Result<Self> {
        let a = crate::arith::mod_inverse(d, c)?;
        let b = (a as i128 * d as i128 - 1) / c as i128;
        Ok(Self { a, b: b as i64, c, d })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let entry = |x: i64, y: i64, u: i64, v: i64| -> Result<i64> {
            let s = x as i128 * y as i128 + u as i128 * v as i128;
            i64::try_from(s).map_err(|_| Error::Overflow("matrix product".into()))
        };
        Ok(Self {
            a: entry(self.a, rhs.a, self.b, rhs.c)?,
            b: entry(self.a, rhs.b, self.b, rhs.d)?,
            c: entry(self.c, rhs.a, self.d, rhs.c)?,
            d: entry(self.c, rhs.b, self.d, rhs.d)?,
        })
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn max_entry(&self) -> u64 {
        [self.a, self.b, self.c, self.d].iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn in_gamma0(&self, n: i64) -> bool {
        self.c % n == 0
    }
}

impl Neg for UnimodularMatrix {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_basics() {
        let s = UnimodularMatrix::S;
        let s2 = s.checked_mul(&s).unwrap();
        assert_eq!(s2, -UnimodularMatrix::IDENTITY);
        let g = UnimodularMatrix::new(2, 3, 5, 8).unwrap();
        assert_eq!(g.checked_mul(&g.inverse()).unwrap(), UnimodularMatrix::IDENTITY);
        assert!(UnimodularMatrix::new(2, 3, 5, 7).is_err());
    }

    #[test]
    fn bottom_row_completion() {
        let g = UnimodularMatrix::from_bottom_row(7, 3).unwrap();
        assert_eq!((g.a, g.c, g.d), (5, 7, 3));
        assert_eq!(g.a * g.d - g.b * g.c, 1);
        assert_eq!(UnimodularMatrix::from_bottom_row(1, 0).unwrap(), UnimodularMatrix::S);
    }

    #[test]
    fn overflow_is_reported() {
        let g = UnimodularMatrix::translation(i64::MAX / 2);
        assert!(matches!(g.checked_mul(&UnimodularMatrix::lower(4)), Err(Error::Overflow(_))));
    }
}
