//! Exact rank counts `N(m, n)` from the Durfee-square expansion of the
//! rank generating function.

use crate::error::{Error, Result};

/// Largest `n_max` whose counts fit the `i128` storage.
pub const RANK_TABLE_LIMIT: usize = 1400;

/// `N(m, n)` for `0 <= n <= n_max`, stored for `m >= 0` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    n_max: usize,
    rows: Vec<Vec<i128>>,
}

impl RankTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `N(m, n)`, using `N(m, n) = N(-m, n)`.
    pub fn count(&self, m: i64, n: usize) -> Result<i128> {
        let row = self.row(n)?;
        Ok(row.get(m.unsigned_abs() as usize).copied().unwrap_or(0))
    }

    /// Counts for `m = 0..=n`.
    pub fn row(&self, n: usize) -> Result<&[i128]> {
        self.rows.get(n).map(Vec::as_slice).ok_or(Error::OutOfRange { index: n as i64, bound: self.n_max as i64 })
    }

    /// `(m, N(m, n))` over all ranks, negative ones included.
    pub fn signed_row(&self, n: usize) -> Result<Vec<(i64, i128)>> {
        let row = self.row(n)?;
        let mut out = Vec::with_capacity(2 * row.len());
        for (m, &v) in row.iter().enumerate().rev().filter(|(m, _)| *m > 0) {
            out.push((-(m as i64), v));
        }
        out.extend(row.iter().enumerate().map(|(m, &v)| (m as i64, v)));
        Ok(out)
    }

    pub fn total(&self, n: usize) -> Result<i128> {
        Ok(self.signed_row(n)?.iter().map(|(_, v)| v).sum())
    }
}

/// Builds the table from `R(w;q) = 1 + sum_k q^{k^2} / ((wq;q)_k (w^{-1}q;q)_k)`.
pub fn rank_table(n_max: usize) -> Result<RankTable> {
    if n_max > RANK_TABLE_LIMIT {
        return Err(Error::OutOfRange { index: n_max as i64, bound: RANK_TABLE_LIMIT as i64 });
    }
    let width = 2 * n_max + 1;
    let centre = n_max;
    let mut acc = vec![vec![0i128; width]; n_max + 1];
    acc[0][centre] = 1;

    // g[n][m + centre]: coefficients of 1/((wq;q)_k (w^{-1}q;q)_k), truncated at degree n_max - k^2.
    let mut g = vec![vec![0i128; width]; n_max + 1];
    g[0][centre] = 1;
    let mut k = 1;
    while k * k <= n_max {
        let deg = n_max - k * k;
        for n in k..=deg {
            // divide by (1 - w q^k), then by (1 - w^{-1} q^k)
            let (head, tail) = g.split_at_mut(n);
            let src = &head[n - k];
            let dst = &mut tail[0];
            for m in 1..width {
                dst[m] += src[m - 1];
            }
        }
        for n in k..=deg {
            let (head, tail) = g.split_at_mut(n);
            let src = &head[n - k];
            let dst = &mut tail[0];
            for m in 0..width - 1 {
                dst[m] += src[m + 1];
            }
        }
        for n in 0..=deg {
            let row = &g[n];
            let target = &mut acc[n + k * k];
            for m in 0..width {
                target[m] += row[m];
            }
        }
        k += 1;
    }
    let rows = acc.into_iter().enumerate().map(|(n, row)| row[centre..=centre + n].to_vec()).collect();
    Ok(RankTable { n_max, rows })
}

/// `N(a, b; n)`: the number of partitions of `n` with rank congruent to `a` mod `b`.
pub fn rank_mod_counts(a: i64, b: i64, n: usize, table: &RankTable) -> Result<i128> {
    if b < 1 {
        return Err(Error::BadInput(format!("modulus {b} must be positive")));
    }
    Ok(table.signed_row(n)?.iter().filter(|(m, _)| (m - a).rem_euclid(b) == 0).map(|(_, v)| v).sum())
}
