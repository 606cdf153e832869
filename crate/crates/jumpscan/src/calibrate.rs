// SPDX-License-Identifier: MIT OR Apache-2.0

//! Critical-value tables.

use jumpscan_core::threshold::{bootstrap_samples, order_statistic};
use jumpscan_core::{bootstrap_cv, critical_value, JumpPassFilter, ScaleConfig, TailConstants};
use serde::Serialize;

use crate::error::Result;

/// `(n, s_lower, s_upper)` configurations of the reference table.
pub const REFERENCE_ROWS: [(usize, f64, f64); 10] = [
    (500, 0.061, 0.167),
    (1000, 0.043, 0.125),
    (1500, 0.036, 0.100),
    (2000, 0.031, 0.100),
    (2500, 0.028, 0.083),
    (3000, 0.026, 0.071),
    (3500, 0.024, 0.071),
    (4000, 0.023, 0.062),
    (4500, 0.022, 0.062),
    (5000, 0.020, 0.056),
];

pub const DEFAULT_LEVELS: [f64; 3] = [0.10, 0.05, 0.01];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CalibrationRow {
    pub n: usize,
    pub s_lower: f64,
    pub s_upper: f64,
    pub alpha: f64,
    pub analytic: f64,
    pub bootstrap: Option<f64>,
}

/// Bootstrap replicate count, seed and grid exponent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BootstrapSpec {
    pub b: usize,
    pub seed: u64,
    pub grid_eps: f64,
}

pub fn table(
    rows: &[(usize, f64, f64)],
    levels: &[f64],
    filter: &JumpPassFilter,
    bootstrap: Option<BootstrapSpec>,
) -> Result<Vec<CalibrationRow>> {
    let mut out = Vec::with_capacity(rows.len() * levels.len());
    for &(n, s_lower, s_upper) in rows {
        let tc = TailConstants::from_filter(filter, s_lower, s_upper)?;
        // s* does not enter the bootstrap statistic; any admissible value works
        let cfg = bootstrap.map(|b| ScaleConfig::new(s_lower, s_upper, s_lower / 2.0).with_grid_eps(b.grid_eps));
        let samples = match (bootstrap, cfg) {
            (Some(b), Some(cfg)) => Some(bootstrap_samples(n, &cfg, filter, b.b, b.seed)?),
            _ => None,
        };
        for &alpha in levels {
            let boot = samples.as_ref().map(|s| order_statistic(&mut s.clone(), alpha));
            out.push(CalibrationRow { n, s_lower, s_upper, alpha, analytic: critical_value(alpha, &tc)?, bootstrap: boot });
        }
    }
    Ok(out)
}

/// Bootstrap critical value for one configuration.
pub fn bootstrap_value(alpha: f64, n: usize, s_lower: f64, s_upper: f64, filter: &JumpPassFilter, spec: BootstrapSpec) -> Result<f64> {
    let cfg = ScaleConfig::new(s_lower, s_upper, s_lower / 2.0).with_grid_eps(spec.grid_eps);
    Ok(bootstrap_cv(alpha, n, &cfg, filter, spec.b, spec.seed)?)
}
