// SPDX-License-Identifier: MIT OR Apache-2.0

//! Replicated simulation and detection with summary accuracy metrics.

use std::time::Instant;

use jumpscan_core::rng::stream;
use jumpscan_core::simulate::{gen_series, PlsScenario, TrueJump};
use jumpscan_core::JumpPassFilter;
use rand_core::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::analyse;
use crate::error::{CliError, Result};
use crate::settings::Settings;

/// Fewest replications accepted.
pub const MIN_REPS: usize = 50;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub seed: u64,
    pub m_hat: usize,
    pub hit: bool,
    /// Mean absolute location error over the jumps, on hits only.
    pub mad_raw: Option<f64>,
    pub mad_refined: Option<f64>,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metrics {
    pub reps: usize,
    pub hit_rate: f64,
    pub mean_m: f64,
    pub mad_raw: Option<f64>,
    pub mad_refined: Option<f64>,
    pub mean_runtime: f64,
}

/// Seed of replicate `r` under master seed `seed`.
pub fn replicate_seed(seed: u64, r: u64) -> u64 {
    stream(seed, r).next_u64()
}

fn mad(estimates: &[f64], truth: &[TrueJump]) -> f64 {
    let mut est = estimates.to_vec();
    est.sort_by(f64::total_cmp);
    est.iter().zip(truth).map(|(e, t)| (e - t.t).abs()).sum::<f64>() / truth.len() as f64
}

/// One replicate: simulate with the replicate seed, then detect.
pub fn run_one(template: &PlsScenario, settings: &Settings, filter: &JumpPassFilter, seed: u64) -> Result<RunRecord> {
    let series = gen_series(&PlsScenario { seed, ..template.clone() })?;
    let start = Instant::now();
    let analysis = analyse(&series.y, settings, filter)?;
    let seconds = start.elapsed().as_secs_f64();
    let m_hat = analysis.result.jumps.len();
    let hit = m_hat == series.truth.len();
    let (mad_raw, mad_refined) = if hit && m_hat > 0 {
        (
            Some(mad(&analysis.result.raw_locations(), &series.truth)),
            Some(mad(&analysis.result.refined_locations(), &series.truth)),
        )
    } else if hit {
        (Some(0.0), Some(0.0))
    } else {
        (None, None)
    };
    Ok(RunRecord { seed, m_hat, hit, mad_raw, mad_refined, seconds })
}

/// `reps` replicates in replicate order; parallel on the current rayon pool.
pub fn run(
    template: &PlsScenario,
    settings: &Settings,
    filter: &JumpPassFilter,
    reps: usize,
    seed: u64,
) -> Result<Vec<RunRecord>> {
    if reps < MIN_REPS {
        return Err(CliError::config(format!("need at least {MIN_REPS} replications, got {reps}")));
    }
    settings.validate()?;
    (0..reps as u64)
        .into_par_iter()
        .map(|r| run_one(template, settings, filter, replicate_seed(seed, r)))
        .collect()
}

pub fn summarize(runs: &[RunRecord]) -> Metrics {
    let reps = runs.len();
    let hits: Vec<&RunRecord> = runs.iter().filter(|r| r.hit).collect();
    let mean = |v: Vec<f64>| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
    Metrics {
        reps,
        hit_rate: hits.len() as f64 / reps as f64,
        mean_m: runs.iter().map(|r| r.m_hat as f64).sum::<f64>() / reps as f64,
        mad_raw: mean(hits.iter().filter_map(|r| r.mad_raw).collect()),
        mad_refined: mean(hits.iter().filter_map(|r| r.mad_refined).collect()),
        mean_runtime: runs.iter().map(|r| r.seconds).sum::<f64>() / reps as f64,
    }
}

/// Median of the present values.
pub fn median(values: impl IntoIterator<Item = Option<f64>>) -> Option<f64> {
    let mut v: Vec<f64> = values.into_iter().flatten().collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let k = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[k] } else { 0.5 * (v[k - 1] + v[k]) })
}
