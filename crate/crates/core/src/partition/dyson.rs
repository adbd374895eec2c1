//! Dyson's rank identities modulo 5 and 7, checked on exact counts.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::rank::{rank_mod_counts, RankTable};
use crate::error::{Error, Result};

/// One of the ten rank identities for the progressions `pn + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DysonIdentity {
    #[serde(rename = "5-1")]
    Five1,
    #[serde(rename = "5-2")]
    Five2,
    #[serde(rename = "5-4")]
    Five4,
    #[serde(rename = "7-0")]
    Seven0,
    #[serde(rename = "7-1")]
    Seven1,
    #[serde(rename = "7-2")]
    Seven2,
    #[serde(rename = "7-3")]
    Seven3,
    #[serde(rename = "7-4")]
    Seven4,
    #[serde(rename = "7-5")]
    Seven5,
    #[serde(rename = "7-6")]
    Seven6,
}

impl DysonIdentity {
    pub const ALL: [DysonIdentity; 10] = [
        Self::Five1,
        Self::Five2,
        Self::Five4,
        Self::Seven0,
        Self::Seven1,
        Self::Seven2,
        Self::Seven3,
        Self::Seven4,
        Self::Seven5,
        Self::Seven6,
    ];

    /// `(p, k)` of the progression `pn + k`.
    pub fn progression(self) -> (i64, i64) {
        match self {
            Self::Five1 => (5, 1),
            Self::Five2 => (5, 2),
            Self::Five4 => (5, 4),
            Self::Seven0 => (7, 0),
            Self::Seven1 => (7, 1),
            Self::Seven2 => (7, 2),
            Self::Seven3 => (7, 3),
            Self::Seven4 => (7, 4),
            Self::Seven5 => (7, 5),
            Self::Seven6 => (7, 6),
        }
    }

    /// Linear relations `sum coeff * N(residue, p; pn + k) = 0`.
    pub fn relations(self) -> Vec<Vec<(i64, i64)>> {
        let eq = |a: i64, b: i64| vec![(a, 1), (b, -1)];
        match self {
            Self::Five1 => vec![eq(1, 2)],
            Self::Five2 => vec![eq(0, 2)],
            Self::Five4 => vec![eq(0, 1), eq(1, 2)],
            Self::Seven0 => vec![eq(2, 3)],
            Self::Seven1 => vec![eq(1, 2), eq(2, 3)],
            Self::Seven2 => vec![eq(0, 3)],
            Self::Seven3 => vec![eq(0, 2), eq(1, 3)],
            Self::Seven4 => vec![eq(0, 1), eq(1, 3)],
            Self::Seven5 => vec![eq(0, 1), eq(1, 2), eq(2, 3)],
            Self::Seven6 => vec![vec![(0, 1), (1, 1), (2, -1), (3, -1)]],
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Self::Five1 => "5-1",
            Self::Five2 => "5-2",
            Self::Five4 => "5-4",
            Self::Seven0 => "7-0",
            Self::Seven1 => "7-1",
            Self::Seven2 => "7-2",
            Self::Seven3 => "7-3",
            Self::Seven4 => "7-4",
            Self::Seven5 => "7-5",
            Self::Seven6 => "7-6",
        }
    }
}

impl fmt::Display for DysonIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for DysonIdentity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|id| id.tag() == s).ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

/// Counts `N(a, p; n)` for `a = 0..p` at one tested argument.
#[derive(Clone, Debug, Serialize)]
pub struct DysonCheck {
    pub n: usize,
    #[serde(serialize_with = "serialize_counts")]
    pub counts: Vec<i128>,
    pub pass: bool,
}

fn serialize_counts<S: serde::Serializer>(counts: &[i128], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(counts.iter().map(|c| c.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct DysonReport {
    pub identity: DysonIdentity,
    pub n_max: usize,
    pub checks: Vec<DysonCheck>,
    pub pass: bool,
}

/// Verifies the identity at every argument `pn + k <= n_max`.
pub fn dyson_identity_check(identity: DysonIdentity, n_max: usize, table: &RankTable) -> Result<DysonReport> {
    if n_max > table.n_max() {
        return Err(Error::OutOfRange { index: n_max as i64, bound: table.n_max() as i64 });
    }
    let (p, k) = identity.progression();
    let relations = identity.relations();
    let mut checks = Vec::new();
    let mut n = k as usize;
    while n <= n_max {
        let counts: Vec<i128> = (0..p).map(|a| rank_mod_counts(a, p, n, table)).collect::<Result<_>>()?;
        let pass = relations.iter().all(|rel| rel.iter().map(|&(a, c)| c as i128 * counts[a as usize]).sum::<i128>() == 0);
        checks.push(DysonCheck { n, counts, pass });
        n += p as usize;
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(DysonReport { identity, n_max, checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::rank::rank_table;

    #[test]
    fn all_identities_to_two_hundred() {
        let t = rank_table(200).unwrap();
        for id in DysonIdentity::ALL {
            let r = dyson_identity_check(id, 200, &t).unwrap();
            assert!(r.pass, "{id}");
            assert!(!r.checks.is_empty());
        }
    }

    #[test]
    fn seven_five_equidistributes() {
        let t = rank_table(110).unwrap();
        let r = dyson_identity_check(DysonIdentity::Seven5, 110, &t).unwrap();
        for c in &r.checks {
            let total = t.total(c.n).unwrap();
            assert!(c.counts.iter().all(|&v| 7 * v == total));
        }
        assert_eq!(r.checks.last().unwrap().n, 110);
    }

    #[test]
    fn tags_round_trip() {
        for id in DysonIdentity::ALL {
            assert_eq!(id.tag().parse::<DysonIdentity>().unwrap(), id);
        }
        assert!("7-7".parse::<DysonIdentity>().is_err());
    }

    #[test]
    fn wrong_relation_is_detected() {
        // N(0,5;5n+1) = N(1,5;5n+1) is not an identity
        let t = rank_table(60).unwrap();
        let fails = (1..60).step_by(5).any(|n| rank_mod_counts(0, 5, n, &t).unwrap() != rank_mod_counts(1, 5, n, &t).unwrap());
        assert!(fails);
    }
}
