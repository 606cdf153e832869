// SPDX-License-Identifier: MIT OR Apache-2.0

//! Critical values for the multiscale statistic: the closed-form tail
//! approximation and the Gaussian bootstrap.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use crate::conv::fast_filtered_series;
use crate::filter::{FilterMoments, JumpPassFilter};
use crate::math::{exp, log, norm_sf, sqrt};
use crate::multiscale::{scale_grid, ScaleConfig};
use crate::rng::{normal_series, stream};
use crate::{Error, Result};

const BRACKET: (f64, f64) = (0.5, 12.0);
const BISECT_TOL: f64 = 1e-8;

/// Constants of the tail approximation for a filter and scale range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailConstants {
    pub kappa: f64,
    pub zeta1p: f64,
    pub zeta2: f64,
}

impl TailConstants {
    pub fn new(m: &FilterMoments, s_lower: f64, s_upper: f64) -> Result<Self> {
        if !(s_lower > 0.0 && s_lower < s_upper && s_upper < 0.5) {
            return Err(Error::invalid(alloc::format!(
                "need 0 < s_lower < s_upper < 1/2, got {s_lower}, {s_upper}"
            )));
        }
        let shrink = 1.0 - 2.0 * s_upper;
        Ok(Self {
            kappa: sqrt(m.w11 * m.w22) / m.u11 * (1.0 / s_lower - 1.0 / s_upper) * shrink,
            zeta1p: shrink * sqrt(m.w11 / m.u11) * (1.0 / s_upper + 1.0 / s_lower),
            zeta2: 2.0 * sqrt(m.w22 / m.u11) * (log(s_upper) - log(s_lower)),
        })
    }

    pub fn from_filter(filter: &JumpPassFilter, s_lower: f64, s_upper: f64) -> Result<Self> {
        Self::new(&filter.moments()?, s_lower, s_upper)
    }
}

/// Approximate `P(sup G > c)` under the no-jump hypothesis.
pub fn alpha_of_c(c: f64, tc: &TailConstants) -> f64 {
    let e = exp(-0.5 * c * c);
    tc.kappa * c / (SQRT_2 * PI * sqrt(PI)) * e + tc.zeta1p / (2.0 * PI) * e + 2.0 * norm_sf(c)
}

/// Root of `alpha_of_c(c) = alpha` on `[0.5, 12]` by bisection.
pub fn critical_value(alpha: f64, tc: &TailConstants) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::invalid(alloc::format!("alpha must lie in (0, 0.5), got {alpha}")));
    }
    let (mut lo, mut hi) = BRACKET;
    let at_low = alpha_of_c(lo, tc);
    let at_high = alpha_of_c(hi, tc);
    if !(at_low > alpha && at_high < alpha) {
        return Err(Error::NoRoot { alpha, at_low, at_high });
    }
    while hi - lo >= BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        if alpha_of_c(mid, tc) > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `M sqrt(-2 upsilon0 ln n - 2 ln alpha)`, a crude upper bound on the
/// critical value.
pub fn upper_bound_cv(alpha: f64, n: usize, upsilon0: f64, m: f64) -> Result<f64> {
    if !(upsilon0 < 0.0) {
        return Err(Error::invalid(alloc::format!("upsilon0 must be negative, got {upsilon0}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(alloc::format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let radicand = -2.0 * upsilon0 * log(n as f64) - 2.0 * log(alpha);
    if radicand < 0.0 {
        return Err(Error::invalid(alloc::format!("negative radicand {radicand}")));
    }
    Ok(m * sqrt(radicand))
}

/// Maximum over all indices and grid scales of `|H| / sqrt(u11)` for one
/// standard normal series.
fn bootstrap_replicate(
    n: usize,
    grid: &[f64],
    filter: &JumpPassFilter,
    root_u11: f64,
    seed: u64,
    r: u64,
) -> Result<f64> {
    let mut rng = stream(seed, r);
    let v = normal_series(&mut rng, n);
    let mut best = 0.0f64;
    for &s in grid {
        let row = fast_filtered_series(&v, s, filter)?;
        for x in &row.values {
            best = best.max(x.abs());
        }
    }
    Ok(best / root_u11)
}

/// Monte Carlo replicates of the null statistic, in replicate order.
pub fn bootstrap_samples(
    n: usize,
    cfg: &ScaleConfig,
    filter: &JumpPassFilter,
    b: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let grid = scale_grid(n, cfg)?;
    let root_u11 = sqrt(filter.moments()?.u11);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..b as u64)
            .into_par_iter()
            .map(|r| bootstrap_replicate(n, &grid, filter, root_u11, seed, r))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..b as u64)
            .map(|r| bootstrap_replicate(n, &grid, filter, root_u11, seed, r))
            .collect()
    }
}

/// The `floor(B (1 - alpha))`-th order statistic of `B` null replicates.
pub fn bootstrap_cv(
    alpha: f64,
    n: usize,
    cfg: &ScaleConfig,
    filter: &JumpPassFilter,
    b: usize,
    seed: u64,
) -> Result<f64> {
    if b < 100 {
        return Err(Error::invalid(alloc::format!("B must be at least 100, got {b}")));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(alloc::format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let mut samples = bootstrap_samples(n, cfg, filter, b, seed)?;
    Ok(order_statistic(&mut samples, alpha))
}

/// `floor(B (1 - alpha))`-th smallest value (1-based).
pub fn order_statistic(samples: &mut [f64], alpha: f64) -> f64 {
    samples.sort_unstable_by(f64::total_cmp);
    let b = samples.len();
    let rank = ((b as f64) * (1.0 - alpha)) as usize;
    samples[rank.clamp(1, b) - 1]
}
