// SPDX-License-Identifier: MIT OR Apache-2.0

//! The detection pipeline with data-driven defaults for every unset tuning
//! parameter.

use jumpscan_core::detect::{detect_on_field, resolve_threshold};
use jumpscan_core::tuning::{
    auto_alpha, default_scale_grids, select_s_star, select_scales, AlphaChoice, MvReport, ScalesReport,
};
use jumpscan_core::{multiscale_field, DetectionResult, JumpPassFilter, MultiscaleField, RefineConfig, ScaleConfig};

use crate::error::Result;
use crate::settings::{AlphaArg, Settings};

/// Points per axis of the `(s_lower, s_upper)` search grid.
pub const SCALE_GRID_LEN: usize = 7;
/// Neighbourhood half-width of the minimum-volatility rules.
pub const MV_K: usize = 2;
/// Candidates for `s*`.
pub const S_STAR_CANDIDATES: usize = 10;
/// Level used while choosing the scales when the level itself is automatic.
pub const SCALE_SEARCH_ALPHA: f64 = 0.05;

/// Tuning parameters in effect and how they were chosen.
#[derive(Clone, Debug)]
pub struct Tuned {
    pub s_lower: f64,
    pub s_upper: f64,
    pub s_star: f64,
    pub alpha: f64,
    pub scales: Option<ScalesReport>,
    pub s_star_report: Option<MvReport>,
    pub alpha_choice: Option<AlphaChoice>,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub result: DetectionResult,
    pub field: MultiscaleField,
    pub tuned: Tuned,
}

/// Fill in the scales: given ones are kept, missing ones are chosen by
/// minimum volatility.
fn tune_scales(y: &[f64], settings: &Settings, filter: &JumpPassFilter) -> Result<(f64, f64, Option<ScalesReport>)> {
    if let (Some(lo), Some(hi)) = (settings.s_lower, settings.s_upper) {
        return Ok((lo, hi, None));
    }
    let (g1, g2) = default_scale_grids(y.len(), SCALE_GRID_LEN);
    let s_star = match settings.s_star {
        Some(s) => s,
        None => select_s_star(y, g1[0], g2[SCALE_GRID_LEN / 2], filter, MV_K, S_STAR_CANDIDATES)?.value(),
    };
    let alpha = match settings.alpha {
        AlphaArg::Fixed(a) => a,
        AlphaArg::Auto => SCALE_SEARCH_ALPHA,
    };
    let report = select_scales(y, filter, alpha, &g1, &g2, MV_K, s_star)?;
    Ok((report.s_lower, report.s_upper, Some(report)))
}

/// Choose the unset tuning parameters, then detect.
pub fn analyse(y: &[f64], settings: &Settings, filter: &JumpPassFilter) -> Result<Analysis> {
    settings.validate()?;
    let (s_lower, s_upper, scales) = tune_scales(y, settings, filter)?;
    let (s_star, s_star_report) = match settings.s_star {
        Some(s) => (s, None),
        None => {
            let r = select_s_star(y, s_lower, s_upper, filter, MV_K, S_STAR_CANDIDATES)?;
            (r.value(), Some(r))
        }
    };
    let cfg = ScaleConfig::new(s_lower, s_upper, s_star).with_grid_eps(settings.grid_eps);
    let field = multiscale_field(y, &cfg, filter)?;
    let (alpha, alpha_choice) = match settings.alpha {
        AlphaArg::Fixed(a) => (a, None),
        AlphaArg::Auto => {
            let choice = auto_alpha(y, &field, filter)?;
            (choice.alpha, Some(choice))
        }
    };
    let threshold = resolve_threshold(settings.threshold.mode(settings.seed), alpha, y.len(), &cfg, filter)?;
    let result = detect_on_field(y, &field, alpha, threshold, &RefineConfig::rule_of_thumb(&cfg))?;
    Ok(Analysis {
        result,
        field,
        tuned: Tuned { s_lower, s_upper, s_star, alpha, scales, s_star_report, alpha_choice },
    })
}
