// SPDX-License-Identifier: MIT OR Apache-2.0

//! Sparse scale grid, self-normalizer and the multiscale statistic.

use alloc::vec;
use alloc::vec::Vec;

use crate::conv::{fast_filtered_series, FilteredSeries};
use crate::filter::JumpPassFilter;
use crate::math::{ceil, exp, floor, log, pow, sqrt};
use crate::{Error, Result};

/// Relative floor below which the self-normalizer is treated as zero.
const XI_FLOOR: f64 = 1e-12;

/// Scales of the detector: the range `[s_lower, s_upper]` of the multiscale
/// maximum, the fine scale `s_star` of the self-normalizer and the exponent of
/// the grid size `floor(ln(n)^(1 + grid_eps))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleConfig {
    pub s_lower: f64,
    pub s_upper: f64,
    pub s_star: f64,
    pub grid_eps: f64,
}

impl ScaleConfig {
    pub fn new(s_lower: f64, s_upper: f64, s_star: f64) -> Self {
        Self { s_lower, s_upper, s_star, grid_eps: 0.5 }
    }

    pub fn with_grid_eps(mut self, eps: f64) -> Self {
        self.grid_eps = eps;
        self
    }

    /// Check `s* < s_lower < s_upper <= 1/2`, `n s* >= 2` and `grid_eps > 0`.
    pub fn validate(&self, n: usize) -> Result<()> {
        let Self { s_lower, s_upper, s_star, grid_eps } = *self;
        if !(s_star > 0.0 && s_star < s_lower && s_lower < s_upper && s_upper <= 0.5) {
            return Err(Error::invalid(alloc::format!(
                "need 0 < s* < s_lower < s_upper <= 1/2, got s*={s_star}, s_lower={s_lower}, s_upper={s_upper}"
            )));
        }
        if !(grid_eps > 0.0 && grid_eps.is_finite()) {
            return Err(Error::invalid(alloc::format!("grid_eps must be positive, got {grid_eps}")));
        }
        if (n as f64) * s_star < 2.0 {
            return Err(Error::ScaleTooSmall { n, scale: s_star });
        }
        Ok(())
    }
}

/// Number of grid scales `floor(ln(n)^(1 + eps))`.
pub fn grid_len(n: usize, eps: f64) -> usize {
    floor(pow(log(n as f64), 1.0 + eps)) as usize
}

/// Scales `2^{g_i}` with `g_i` equispaced from `log2 s_lower` to `log2 s_upper`.
pub fn scale_grid(n: usize, cfg: &ScaleConfig) -> Result<Vec<f64>> {
    cfg.validate(n)?;
    let len = if n >= 2 { grid_len(n, cfg.grid_eps) } else { 0 };
    explicit_grid(n, cfg.s_lower, cfg.s_upper, len)
}

/// Log-equispaced grid of a given length; used when the caller fixes the
/// number of scales.
pub fn explicit_grid(n: usize, s_lower: f64, s_upper: f64, len: usize) -> Result<Vec<f64>> {
    if len < 2 {
        return Err(Error::GridDegenerate { n, len });
    }
    if !(s_lower > 0.0 && s_lower < s_upper) {
        return Err(Error::invalid(alloc::format!(
            "grid endpoints must satisfy 0 < s_lower < s_upper, got {s_lower}, {s_upper}"
        )));
    }
    let lo = log(s_lower);
    let hi = log(s_upper);
    let step = (hi - lo) / (len - 1) as f64;
    let mut grid: Vec<f64> = (0..len).map(|i| exp(lo + step * i as f64)).collect();
    grid[0] = s_lower;
    grid[len - 1] = s_upper;
    Ok(grid)
}

/// `Xi(t) = sum_{i in K(t)} H(i/n, s*)^2 / |K(t)|` with
/// `K(t) = {i : s* <= |i/n - t| <= s_upper}`, restricted to indices where the
/// fine-scale window is complete. Entries with empty `K` are zero.
pub fn xi_denominator(y: &[f64], cfg: &ScaleConfig, filter: &JumpPassFilter) -> Result<Vec<f64>> {
    cfg.validate(y.len())?;
    let fine = fast_filtered_series(y, cfg.s_star, filter)?;
    xi_from_fine(&fine, cfg)
}

pub(crate) fn xi_from_fine(fine: &FilteredSeries, cfg: &ScaleConfig) -> Result<Vec<f64>> {
    let n = fine.len();
    let inner = ceil(n as f64 * cfg.s_star) as usize;
    let outer = floor(n as f64 * cfg.s_upper) as usize;
    let valid = fine.valid_range();
    let mut prefix = vec![0.0; n + 1];
    for i in 0..n {
        let sq = if valid.contains(&i) { fine.values[i] * fine.values[i] } else { 0.0 };
        prefix[i + 1] = prefix[i] + sq;
    }
    let band = |lo: usize, hi: usize| -> (f64, usize) {
        // inclusive [lo, hi] intersected with the valid range
        let lo = lo.max(valid.start);
        let hi = hi.min(valid.end.saturating_sub(1));
        if valid.is_empty() || lo > hi {
            (0.0, 0)
        } else {
            (prefix[hi + 1] - prefix[lo], hi - lo + 1)
        }
    };
    let adm = admissible_range(n, cfg.s_upper);
    let mut xi = vec![0.0; n];
    for (j, out) in xi.iter_mut().enumerate() {
        let (mut sum, mut count) = (0.0, 0usize);
        if j >= inner {
            let (s, c) = band(j.saturating_sub(outer), j - inner);
            sum += s;
            count += c;
        }
        if j + inner < n {
            let (s, c) = band(j + inner, (j + outer).min(n - 1));
            sum += s;
            count += c;
        }
        if count == 0 {
            if adm.contains(&j) {
                return Err(Error::invalid(alloc::format!(
                    "empty normalizing band at index {j}"
                )));
            }
            continue;
        }
        *out = sum / count as f64;
    }
    Ok(xi)
}

/// Indices whose time lies in `[s_upper, 1 - s_upper]`, i.e. whose coarsest
/// window is complete.
pub fn admissible_range(n: usize, s_upper: f64) -> core::ops::Range<usize> {
    let w = floor(n as f64 * s_upper) as usize;
    if 2 * w >= n {
        0..0
    } else {
        w..(n - w)
    }
}

/// Filtered series over the grid, the self-normalizer and the statistic
/// `g[j] = max_u |h[u][j]| / sqrt(xi[j])` for admissible `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiscaleField {
    pub grid: Vec<f64>,
    /// `h[u][j] = H((j+1)/n, grid[u])`
    pub h: Vec<Vec<f64>>,
    pub xi: Vec<f64>,
    /// Zero where `valid[j]` is false.
    pub g: Vec<f64>,
    pub valid: Vec<bool>,
    /// Grid index achieving the maximum at each valid `j`.
    pub argmax_scale: Vec<usize>,
    pub config: ScaleConfig,
    /// `int_{-1}^1 W^2` of the filter used.
    pub u11: f64,
}

impl MultiscaleField {
    pub fn n(&self) -> usize {
        self.g.len()
    }

    /// Time of index `j`.
    pub fn time(&self, j: usize) -> f64 {
        (j + 1) as f64 / self.n() as f64
    }

    pub fn valid_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.valid.iter().enumerate().filter(|(_, v)| **v).map(|(j, _)| j)
    }

    /// Largest statistic over valid indices, `None` if there are none.
    pub fn max_g(&self) -> Option<f64> {
        self.valid_indices().map(|j| self.g[j]).reduce(f64::max)
    }
}

fn filter_rows(y: &[f64], grid: &[f64], filter: &JumpPassFilter) -> Result<Vec<FilteredSeries>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        grid.par_iter().map(|&s| fast_filtered_series(y, s, filter)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        grid.iter().map(|&s| fast_filtered_series(y, s, filter)).collect()
    }
}

/// Evaluate the statistic on the grid given by `cfg`.
pub fn multiscale_field(y: &[f64], cfg: &ScaleConfig, filter: &JumpPassFilter) -> Result<MultiscaleField> {
    let grid = scale_grid(y.len(), cfg)?;
    multiscale_field_on_grid(y, cfg, grid, filter)
}

/// Evaluate the statistic on an explicit, strictly increasing grid inside
/// `[cfg.s_lower, cfg.s_upper]`.
pub fn multiscale_field_on_grid(
    y: &[f64],
    cfg: &ScaleConfig,
    grid: Vec<f64>,
    filter: &JumpPassFilter,
) -> Result<MultiscaleField> {
    let n = y.len();
    if n < 50 {
        return Err(Error::invalid(alloc::format!("need at least 50 observations, got {n}")));
    }
    cfg.validate(n)?;
    if grid.len() < 2 {
        return Err(Error::GridDegenerate { n, len: grid.len() });
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("scale grid must be strictly increasing"));
    }
    let u11 = filter.moments()?.u11;
    let fine = fast_filtered_series(y, cfg.s_star, filter)?;
    let xi = xi_from_fine(&fine, cfg)?;
    let rows = filter_rows(y, &grid, filter)?;

    let adm = admissible_range(n, cfg.s_upper);
    let xi_max = adm.clone().map(|j| xi[j]).fold(0.0, f64::max);
    let mut g = vec![0.0; n];
    let mut valid = vec![false; n];
    let mut argmax_scale = vec![0usize; n];
    for j in adm {
        let x = xi[j];
        if !(x > 0.0 && x >= XI_FLOOR * xi_max) {
            continue;
        }
        let root = sqrt(x);
        let mut best = f64::NEG_INFINITY;
        let mut best_u = 0;
        for (u, row) in rows.iter().enumerate() {
            let v = row.values[j].abs() / root;
            if v > best {
                best = v;
                best_u = u;
            }
        }
        g[j] = best;
        valid[j] = true;
        argmax_scale[j] = best_u;
    }
    if !valid.iter().any(|v| *v) {
        return Err(Error::DegenerateDenominator);
    }
    Ok(MultiscaleField {
        grid,
        h: rows.into_iter().map(|r| r.values).collect(),
        xi,
        g,
        valid,
        argmax_scale,
        config: *cfg,
        u11,
    })
}
