// SPDX-License-Identifier: MIT OR Apache-2.0

//! Greedy peak extraction on the multiscale statistic and local CUSUM
//! refinement of each peak.

use alloc::vec::Vec;

use crate::filter::JumpPassFilter;
use crate::math::{ceil, floor};
use crate::multiscale::{multiscale_field, MultiscaleField, ScaleConfig};
use crate::threshold::{bootstrap_cv, critical_value, TailConstants};
use crate::{Error, Result};

/// Fewest observations a refinement window may hold.
const MIN_REFINE_WINDOW: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RawJump {
    /// 0-based index; the time is `(index + 1) / n`.
    pub index: usize,
    pub t: f64,
    pub g: f64,
    /// Grid scale achieving `g`.
    pub scale: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jump {
    pub raw: f64,
    pub refined: f64,
    pub g: f64,
    pub scale: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectionResult {
    pub alpha: f64,
    pub threshold: f64,
    /// Sorted by location.
    pub jumps: Vec<Jump>,
    pub config: ScaleConfig,
    pub n: usize,
}

impl DetectionResult {
    pub fn raw_locations(&self) -> Vec<f64> {
        self.jumps.iter().map(|j| j.raw).collect()
    }

    pub fn refined_locations(&self) -> Vec<f64> {
        self.jumps.iter().map(|j| j.refined).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdMode {
    Analytic,
    Bootstrap { b: usize, seed: u64 },
    Fixed(f64),
}

/// Half-width `z` of the refinement search and the window inflation `alpha_tilde`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RefineConfig {
    pub z: f64,
    pub alpha_tilde: f64,
}

impl RefineConfig {
    /// `z = s_lower`, `alpha_tilde = 1.5`.
    pub fn rule_of_thumb(cfg: &ScaleConfig) -> Self {
        Self { z: cfg.s_lower, alpha_tilde: 1.5 }
    }
}

/// Repeatedly take the largest remaining statistic, keep it if it reaches
/// `threshold`, and discard everything within `s_upper` of it.
pub fn mjpd_detect(field: &MultiscaleField, threshold: f64) -> Vec<RawJump> {
    let n = field.n();
    let radius = floor(n as f64 * field.config.s_upper) as usize;
    let mut alive = field.valid.clone();
    let mut out = Vec::new();
    loop {
        let mut best: Option<usize> = None;
        for j in 0..n {
            if alive[j] && best.is_none_or(|b| field.g[j] > field.g[b]) {
                best = Some(j);
            }
        }
        let Some(j) = best else { break };
        if !(field.g[j] >= threshold) {
            break;
        }
        out.push(RawJump {
            index: j,
            t: field.time(j),
            g: field.g[j],
            scale: field.grid[field.argmax_scale[j]],
        });
        let lo = j.saturating_sub(radius);
        let hi = (j + radius).min(n - 1);
        alive[lo..=hi].iter_mut().for_each(|a| *a = false);
    }
    out.sort_by_key(|r| r.index);
    out
}

/// Refine each raw location by the CUSUM argmax in a local window.
///
/// For a raw jump at `d` the data window is `[d - (2 + alpha_tilde) z,
/// d + (2 + alpha_tilde) z]` and the search range is `[d - z, d + z]`. The
/// returned time is the last sample before the estimated jump.
pub fn cusum_refine(y: &[f64], raw: &[RawJump], cfg: &RefineConfig) -> Result<Vec<f64>> {
    if !(cfg.z > 0.0) || !(cfg.alpha_tilde >= 0.0) {
        return Err(Error::invalid(alloc::format!(
            "need z > 0 and alpha_tilde >= 0, got {} and {}",
            cfg.z, cfg.alpha_tilde
        )));
    }
    let n = y.len();
    let nf = n as f64;
    let reach = (2.0 + cfg.alpha_tilde) * cfg.z * nf;
    let search = floor(cfg.z * nf) as isize;
    Ok(raw
        .iter()
        .map(|r| {
            // 1-based positions throughout
            let p = r.index as isize + 1;
            let lo = (ceil(p as f64 - reach) as isize).max(1);
            let hi = (floor(p as f64 + reach) as isize).min(n as isize);
            let count = (hi - lo + 1).max(0) as usize;
            if count < MIN_REFINE_WINDOW {
                log::warn!(
                    "refinement window at t={:.5} holds {count} observations; keeping raw location",
                    r.t
                );
                return r.t;
            }
            let window = &y[(lo - 1) as usize..hi as usize];
            let total: f64 = window.iter().sum();
            let s_lo = (p - search).max(lo);
            let s_hi = (p + search).min(hi);
            let mut partial: f64 = window[..(s_lo - lo) as usize].iter().sum();
            let mut best = (f64::NEG_INFINITY, p);
            for t in s_lo..=s_hi {
                partial += window[(t - lo) as usize];
                let frac = (t - lo + 1) as f64 / count as f64;
                let v = (partial - frac * total).abs();
                let better = v > best.0
                    || (v == best.0 && (t - p).abs() < (best.1 - p).abs());
                if better {
                    best = (v, t);
                }
            }
            best.1 as f64 / nf
        })
        .collect())
}

/// Critical value for a threshold mode.
pub fn resolve_threshold(
    mode: ThresholdMode,
    alpha: f64,
    n: usize,
    cfg: &ScaleConfig,
    filter: &JumpPassFilter,
) -> Result<f64> {
    match mode {
        ThresholdMode::Fixed(c) => {
            if c.is_nan() {
                Err(Error::invalid("fixed threshold is NaN"))
            } else {
                Ok(c)
            }
        }
        ThresholdMode::Analytic => {
            let tc = TailConstants::from_filter(filter, cfg.s_lower, cfg.s_upper)?;
            critical_value(alpha, &tc)
        }
        ThresholdMode::Bootstrap { b, seed } => bootstrap_cv(alpha, n, cfg, filter, b, seed),
    }
}

/// Peak extraction and refinement on a precomputed field.
pub fn detect_on_field(
    y: &[f64],
    field: &MultiscaleField,
    alpha: f64,
    threshold: f64,
    refine: &RefineConfig,
) -> Result<DetectionResult> {
    let raw = mjpd_detect(field, threshold);
    let refined = cusum_refine(y, &raw, refine)?;
    Ok(DetectionResult {
        alpha,
        threshold,
        jumps: raw
            .iter()
            .zip(refined)
            .map(|(r, t)| Jump { raw: r.t, refined: t, g: r.g, scale: r.scale })
            .collect(),
        config: field.config,
        n: y.len(),
    })
}

/// Field, threshold, peaks and refinement in one call; also returns the field.
pub fn detect_with_field(
    y: &[f64],
    cfg: &ScaleConfig,
    filter: &JumpPassFilter,
    alpha: f64,
    mode: ThresholdMode,
) -> Result<(DetectionResult, MultiscaleField)> {
    let field = multiscale_field(y, cfg, filter)?;
    let threshold = resolve_threshold(mode, alpha, y.len(), cfg, filter)?;
    let result = detect_on_field(y, &field, alpha, threshold, &RefineConfig::rule_of_thumb(cfg))?;
    Ok((result, field))
}

pub fn detect_pipeline(
    y: &[f64],
    cfg: &ScaleConfig,
    filter: &JumpPassFilter,
    alpha: f64,
    mode: ThresholdMode,
) -> Result<DetectionResult> {
    detect_with_field(y, cfg, filter, alpha, mode).map(|(r, _)| r)
}
