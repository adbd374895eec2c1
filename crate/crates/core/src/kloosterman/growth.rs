//! Partial sums of the Kloosterman-Selberg zeta functions at the edge of
//! convergence, and their empirical growth exponent.

use rayon::prelude::*;
use serde::Serialize;

use super::{s_zero_inf, InfKernel};
use crate::arith::PrecisionConfig;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthFamily {
    /// `sum_{c <= x, p | c} S_inf_inf^{(l)}(m, n, c) / c`.
    SInfInf,
    /// `sum_{a <= x, p ∤ a} S_0inf^{(l)}(X_r, n, a; r) / (a sqrt(p))`.
    SZeroInf,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthProfile {
    pub family: GrowthFamily,
    pub p: i64,
    pub ell: i64,
    /// `m` for `SInfInf`, `r` for `SZeroInf`.
    pub param: i64,
    pub n: i64,
    pub grid: Vec<i64>,
    /// `(re, im)` of the partial sum at each grid point.
    pub partial_sums: Vec<(f64, f64)>,
    /// Least-squares slope of `log |partial sum|` against `log x` over `[x_max/10, x_max]`.
    pub slope: f64,
    pub term_count: u64,
}

/// Twenty points per decade from `10p` to `x_max`, ending at `x_max`.
pub fn default_grid(p: i64, x_max: i64) -> Vec<i64> {
    let start = (10 * p) as f64;
    let steps = ((x_max as f64 / start).log10() * 20.0).ceil().max(1.0) as i64;
    let mut grid: Vec<i64> = (0..=steps).map(|i| (start * 10f64.powf(i as f64 / 20.0)).round() as i64).filter(|&x| x < x_max).collect();
    grid.push(x_max);
    grid.dedup();
    grid
}

fn fit_slope(grid: &[i64], sums: &[(f64, f64)], x_max: i64) -> f64 {
    let points: Vec<(f64, f64)> = grid
        .iter()
        .zip(sums)
        .filter(|(&x, _)| 10 * x >= x_max)
        .map(|(&x, &(re, im))| ((x as f64).ln(), re.hypot(im)))
        .filter(|&(_, r)| r > 0.0)
        .map(|(lx, r)| (lx, r.ln()))
        .collect();
    if points.len() < 2 {
        return f64::NAN;
    }
    let k = points.len() as f64;
    let (mx, my) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x / k, b + y / k));
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + (x - mx) * (y - my), b + (x - mx) * (x - mx)));
    sxy / sxx
}

/// Partial sums on `grid` (or [`default_grid`] when empty). Every grid
/// value is a prefix of the same running sum.
pub fn growth_profile(family: GrowthFamily, ell: i64, param: i64, n: i64, p: i64, x_max: i64, grid: &[i64]) -> Result<GrowthProfile> {
    if x_max < 10 * p {
        return Err(Error::BadInput(format!("x_max = {x_max} is below 10p = {}", 10 * p)));
    }
    let grid = if grid.is_empty() { default_grid(p, x_max) } else { grid.to_vec() };
    if grid.windows(2).any(|w| w[0] >= w[1]) || grid.first().is_some_and(|&x| x < 1) || grid.last().is_some_and(|&x| x > x_max) {
        return Err(Error::BadInput("grid must be increasing within [1, x_max]".into()));
    }
    let moduli: Vec<i64> = match family {
        GrowthFamily::SInfInf => (p..=x_max).step_by(p as usize).collect(),
        GrowthFamily::SZeroInf => (1..=x_max).filter(|a| a % p != 0).collect(),
    };
    let cfg = PrecisionConfig::with_bits(64)?;
    let terms: Vec<(f64, f64, u64)> = moduli
        .par_iter()
        .map(|&q| -> Result<(f64, f64, u64)> {
            match family {
                GrowthFamily::SInfInf => {
                    let kernel = InfKernel::new(q, p)?;
                    let (re, im) = kernel.evaluate_f64(ell, param, n);
                    Ok((re / q as f64, im / q as f64, kernel.term_count()))
                }
                GrowthFamily::SZeroInf => {
                    let v = s_zero_inf(ell, n, q, p, param, &cfg)?;
                    let scale = q as f64 * (p as f64).sqrt();
                    Ok((v.value.real().to_f64() / scale, v.value.imag().to_f64() / scale, v.term_count))
                }
            }
        })
        .collect::<Result<_>>()?;
    let mut partial_sums = Vec::with_capacity(grid.len());
    let (mut re, mut im, mut count) = (0.0, 0.0, 0u64);
    let mut next = 0;
    for (&q, &(dr, di, t)) in moduli.iter().zip(&terms) {
        while next < grid.len() && grid[next] < q {
            partial_sums.push((re, im));
            next += 1;
        }
        re += dr;
        im += di;
        count += t;
    }
    partial_sums.resize(grid.len(), (re, im));
    let slope = fit_slope(&grid, &partial_sums, x_max);
    Ok(GrowthProfile { family, p, ell, param, n, grid, partial_sums, slope, term_count: count })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = default_grid(5, 10_000);
        assert_eq!(g[0], 50);
        assert_eq!(*g.last().unwrap(), 10_000);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn prefix_consistent() {
        let short = growth_profile(GrowthFamily::SInfInf, 1, 0, 1, 5, 500, &[100, 250, 500]).unwrap();
        let long = growth_profile(GrowthFamily::SInfInf, 1, 0, 1, 5, 1000, &[100, 250, 500, 1000]).unwrap();
        for i in 0..3 {
            assert!((short.partial_sums[i].0 - long.partial_sums[i].0).abs() < 1e-12);
            assert!((short.partial_sums[i].1 - long.partial_sums[i].1).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_cusp_family_runs() {
        let g = growth_profile(GrowthFamily::SZeroInf, 1, 0, 1, 7, 200, &[]).unwrap();
        assert!(g.term_count > 0);
        assert!(g.slope.is_finite());
    }

    #[test]
    fn rejects_short_range() {
        assert!(growth_profile(GrowthFamily::SInfInf, 1, 0, 1, 5, 40, &[]).is_err());
    }
}
