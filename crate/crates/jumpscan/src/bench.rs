// SPDX-License-Identifier: MIT OR Apache-2.0

//! Timing of the filtering step and of the full pipeline across series
//! lengths.

use std::time::Instant;

use jumpscan_core::detect::{detect_on_field, resolve_threshold};
use jumpscan_core::simulate::{gen_series, MeanModel, NoiseModel, PlsScenario};
use jumpscan_core::tuning::default_scale_grids;
use jumpscan_core::{fast_filtered_series, multiscale_field, JumpPassFilter, RefineConfig, ScaleConfig, ThresholdMode};
use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub scales: usize,
    /// Best-of-rounds time of one filtering pass at `s_upper`.
    pub per_scale_secs: f64,
    /// Best-of-rounds time of field, threshold, peaks and refinement.
    pub total_secs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of `ln total` on `ln(n (ln n)^1.5)`.
    pub slope: f64,
}

/// Scales used for length `n`: the midpoints of the default search grids and
/// `s* = s_lower / 3`.
pub fn bench_config(n: usize) -> ScaleConfig {
    let (g1, g2) = default_scale_grids(n, 3);
    ScaleConfig::new(g1[1], g2[1], g1[1] / 3.0)
}

fn best_of<T>(rounds: usize, mut f: impl FnMut() -> Result<T>) -> Result<(f64, T)> {
    let mut best = f64::INFINITY;
    let mut last = None;
    for _ in 0..rounds.max(1) {
        let start = Instant::now();
        let out = f()?;
        best = best.min(start.elapsed().as_secs_f64());
        last = Some(out);
    }
    Ok((best, last.expect("at least one round")))
}

pub fn bench_row(n: usize, filter: &JumpPassFilter, rounds: usize, seed: u64) -> Result<BenchRow> {
    let y = gen_series(&PlsScenario::new(NoiseModel::Gs, MeanModel::I, n, seed))?.y;
    let cfg = bench_config(n);
    let (per_scale_secs, _) = best_of(rounds, || Ok(fast_filtered_series(&y, cfg.s_upper, filter)?))?;
    let (total_secs, scales) = best_of(rounds, || {
        let field = multiscale_field(&y, &cfg, filter)?;
        let c = resolve_threshold(ThresholdMode::Analytic, 0.05, n, &cfg, filter)?;
        detect_on_field(&y, &field, 0.05, c, &RefineConfig::rule_of_thumb(&cfg))?;
        Ok(field.grid.len())
    })?;
    Ok(BenchRow { n, scales, per_scale_secs, total_secs })
}

/// Slope of `ln y` on `ln x` by ordinary least squares.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn run(sizes: &[usize], filter: &JumpPassFilter, rounds: usize, seed: u64) -> Result<BenchReport> {
    if sizes.len() < 2 {
        return Err(CliError::config("bench needs at least two sizes"));
    }
    let rows = sizes.iter().map(|&n| bench_row(n, filter, rounds, seed)).collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = rows.iter().map(|r| r.n as f64 * (r.n as f64).ln().powf(1.5)).collect();
    let y: Vec<f64> = rows.iter().map(|r| r.total_secs).collect();
    Ok(BenchReport { slope: loglog_slope(&x, &y), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let x = [1.0, 2.0, 4.0, 8.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(1.2)).collect();
        assert!((loglog_slope(&x, &y) - 1.2).abs() < 1e-12);
    }

    #[test]
    fn config_is_valid_over_sizes() {
        for n in [500, 1000, 5000, 100_000] {
            assert!(bench_config(n).validate(n).is_ok(), "n={n}");
        }
    }
}
