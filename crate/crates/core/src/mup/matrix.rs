use rug::Rational;

use super::scalar::mu_scalar;
use crate::arith::modular::{permutation_sign, require_prime, residue};
use crate::arith::{PhaseRational, PrecisionConfig};
use crate::error::{Error, Result};
use crate::eta::{eta_multiplier, UnimodularMatrix};
use rug::Complex;

/// `sum_l e(phases[l]) E_{l, perm[l]}` on indices `1..p`, stored zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermPhaseMatrix {
    pub p: i64,
    pub perm: Vec<usize>,
    pub phases: Vec<PhaseRational>,
}

impl PermPhaseMatrix {
    pub fn identity(p: i64) -> Self {
        let n = (p - 1) as usize;
        Self { p, perm: (0..n).collect(), phases: vec![PhaseRational::zero(); n] }
    }

    pub fn scalar(p: i64, phase: PhaseRational) -> Self {
        let mut m = Self::identity(p);
        m.phases.fill(phase);
        m
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Column holding the nonzero entry of row `l` (one-based both ways).
    pub fn column_of(&self, ell: i64) -> i64 {
        self.perm[(ell - 1) as usize] as i64 + 1
    }

    pub fn phase_of(&self, ell: i64) -> &PhaseRational {
        &self.phases[(ell - 1) as usize]
    }

    pub fn is_scalar(&self) -> Option<&PhaseRational> {
        let first = self.phases.first()?;
        let identity = self.perm.iter().enumerate().all(|(i, &j)| i == j);
        (identity && self.phases.iter().all(|ph| ph == first)).then_some(first)
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.dim()];
        self.perm.iter().all(|&j| j < seen.len() && !std::mem::replace(&mut seen[j], true))
    }

    pub fn permutation_sign(&self) -> i32 {
        permutation_sign(&self.perm)
    }

    pub fn det(&self) -> PhaseRational {
        let prod = self.phases.iter().fold(PhaseRational::zero(), |acc, ph| &acc * ph);
        PhaseRational::sign(self.permutation_sign()) * prod
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.p != rhs.p {
            return Err(Error::DimensionMismatch(self.p - 1, rhs.p - 1));
        }
        let perm = self.perm.iter().map(|&j| rhs.perm[j]).collect();
        let phases = self.phases.iter().zip(&self.perm).map(|(ph, &j)| ph * &rhs.phases[j]).collect();
        Ok(Self { p: self.p, perm, phases })
    }

    /// The inverse, which is the conjugate transpose.
    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut phases = vec![PhaseRational::zero(); n];
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j] = i;
            phases[j] = self.phases[i].conj();
        }
        Self { p: self.p, perm, phases }
    }

    pub fn scale(&self, phase: &PhaseRational) -> Self {
        Self { p: self.p, perm: self.perm.clone(), phases: self.phases.iter().map(|ph| ph * phase).collect() }
    }

    /// `y = M v`, i.e. `y[l] = e(phase[l]) v[perm[l]]`.
    pub fn apply(&self, v: &[Complex], cfg: &PrecisionConfig) -> Result<Vec<Complex>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(self.dim() as i64, v.len() as i64));
        }
        Ok(self.perm.iter().zip(&self.phases).map(|(&j, ph)| ph.to_complex(cfg) * &v[j]).collect())
    }
}

pub fn perm_phase_compose(a: &PermPhaseMatrix, b: &PermPhaseMatrix) -> Result<PermPhaseMatrix> {
    a.compose(b)
}

pub fn perm_phase_inverse(a: &PermPhaseMatrix) -> PermPhaseMatrix {
    a.inverse()
}

/// `M_p(gamma) = sum_l mu(c, d, l, p) E_{l, [dl]}`.
pub fn m_matrix(g: &UnimodularMatrix, p: i64) -> Result<PermPhaseMatrix> {
    require_prime(p)?;
    if !g.in_gamma0(p) {
        return Err(Error::NotInGroup { matrix: g.to_string(), group: format!("Gamma0({p})") });
    }
    let mut perm = Vec::with_capacity((p - 1) as usize);
    let mut phases = Vec::with_capacity((p - 1) as usize);
    for ell in 1..p {
        perm.push((residue((g.d % p) * ell, p) - 1) as usize);
        phases.push(mu_scalar(g.c, g.d, ell, p)?);
    }
    Ok(PermPhaseMatrix { p, perm, phases })
}

/// `mu_p(gamma) = conj(nu_eta(gamma)) M_p(gamma)`.
pub fn mu_matrix(g: &UnimodularMatrix, p: i64) -> Result<PermPhaseMatrix> {
    Ok(m_matrix(g, p)?.scale(&eta_multiplier(g)?.conj()))
}

/// `conj mu(c, d, [a l], p)` through `exp(-3 pi i c a l^2/p^2) (-1)^{lc + t}`
/// with `t = (a l - [a l]) / p`, valid for `ad = 1 (mod c)`.
pub fn mu_conj_simplified(c: i64, a: i64, ell: i64, p: i64) -> PhaseRational {
    let al = a as i128 * ell as i128;
    let t = al.div_euclid(p as i128);
    let quad = Rational::from((-(3 * c as i128 * al * ell as i128), 2 * (p * p) as i128));
    let sign = Rational::from(((ell as i128 * c as i128 + t).rem_euclid(2), 2i128));
    PhaseRational::new(quad + sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd;

    #[test]
    fn minus_identity_and_translation() {
        for p in [5, 7, 11] {
            let minus = mu_matrix(&-UnimodularMatrix::IDENTITY, p).unwrap();
            for ell in 1..p {
                assert_eq!(minus.column_of(ell), p - ell);
                assert_eq!(minus.phase_of(ell), &PhaseRational::from_ratio(-1, 4));
            }
            let t = mu_matrix(&UnimodularMatrix::T, p).unwrap();
            assert_eq!(t.is_scalar(), Some(&PhaseRational::from_ratio(-1, 24)));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let g = UnimodularMatrix::from_bottom_row(14, 3).unwrap();
        let m = mu_matrix(&g, 7).unwrap();
        let id = m.compose(&m.inverse()).unwrap();
        assert_eq!(id, PermPhaseMatrix::identity(7));
        assert_eq!(m.inverse().compose(&m).unwrap(), PermPhaseMatrix::identity(7));
    }

    #[test]
    fn simplified_conjugate_form() {
        for p in [5, 7, 11] {
            for k in 1..6 {
                let c = k * p;
                for d in 1..c {
                    if gcd(d, c) != 1 {
                        continue;
                    }
                    let a = crate::arith::mod_inverse(d, c).unwrap();
                    for ell in 1..p {
                        let al = residue(a * ell, p);
                        let direct = mu_scalar(c, d, al, p).unwrap().conj();
                        assert_eq!(direct, mu_conj_simplified(c, a, ell, p), "p={p} c={c} d={d} l={ell}");
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = PermPhaseMatrix::identity(5);
        let b = PermPhaseMatrix::identity(7);
        assert!(matches!(a.compose(&b), Err(Error::DimensionMismatch(4, 6))));
    }
}
