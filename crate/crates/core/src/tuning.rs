// SPDX-License-Identifier: MIT OR Apache-2.0

//! Data-driven choice of the fine scale, the scale range and the level.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::conv::fast_filtered_series;
use crate::detect::{cusum_refine, mjpd_detect, RefineConfig};
use crate::filter::{FilterMoments, JumpPassFilter};
use crate::math::{floor, log, median, norm_sf, pow, round, sample_variance, sqrt};
use crate::multiscale::{admissible_range, multiscale_field, xi_from_fine, MultiscaleField, ScaleConfig};
use crate::threshold::{critical_value, TailConstants};
use crate::{Error, Result};

/// Levels searched by [`select_alpha`]: 0.001, 0.002, ..., 0.300.
pub const ALPHA_GRID_STEPS: u32 = 300;
const ALPHA_GRID_STEP: f64 = 0.001;

/// Minimum-volatility selection over a one-dimensional candidate list.
#[derive(Clone, Debug, PartialEq)]
pub struct MvReport {
    pub candidates: Vec<f64>,
    /// Stability score per candidate; `None` where the neighbourhood is
    /// incomplete.
    pub se: Vec<Option<f64>>,
    pub chosen: usize,
    pub note: String,
}

impl MvReport {
    pub fn value(&self) -> f64 {
        self.candidates[self.chosen]
    }
}

/// Choose `s*` among `m_candidates` equispaced values from
/// `n^{-1/2} (ln n)^{1/2} / 6` to `s_lower` by minimum volatility of
/// `sqrt(Xi)` across `2k + 1` neighbouring candidates.
pub fn select_s_star(
    y: &[f64],
    s_lower: f64,
    s_upper: f64,
    filter: &JumpPassFilter,
    k: usize,
    m_candidates: usize,
) -> Result<MvReport> {
    if k == 0 || m_candidates < 2 * k + 3 {
        return Err(Error::invalid(alloc::format!(
            "need k >= 1 and at least 2k + 3 = {} candidates, got k={k}, M={m_candidates}",
            2 * k + 3
        )));
    }
    let n = y.len();
    let nf = n as f64;
    if !(s_lower > 0.0 && s_lower < s_upper && s_upper <= 0.5) {
        return Err(Error::invalid(alloc::format!(
            "need 0 < s_lower < s_upper <= 1/2, got {s_lower}, {s_upper}"
        )));
    }
    let first = sqrt(log(nf) / nf) / 6.0;
    if !(first < s_lower) {
        return Err(Error::invalid(alloc::format!(
            "smallest candidate {first:.5} is not below s_lower = {s_lower}"
        )));
    }
    let step = (s_lower - first) / (m_candidates - 1) as f64;
    let mut candidates: Vec<f64> = (0..m_candidates).map(|r| first + step * r as f64).collect();
    candidates[m_candidates - 1] = s_lower;
    let before = candidates.len();
    candidates.retain(|&c| nf * c >= 2.0);
    let mut note = String::new();
    if candidates.len() < before {
        log::warn!("dropped {} s* candidate(s) with n*s* < 2", before - candidates.len());
        note = alloc::format!("dropped {} candidate(s) with n*s* < 2", before - candidates.len());
    }
    if candidates.len() < 2 * k + 3 {
        return Err(Error::invalid(alloc::format!(
            "only {} usable s* candidates for n={n}",
            candidates.len()
        )));
    }

    let roots: Vec<Vec<f64>> = candidates
        .iter()
        .map(|&c| {
            let cfg = ScaleConfig::new(s_lower, s_upper, c);
            let fine = fast_filtered_series(y, c, filter)?;
            Ok(xi_from_fine(&fine, &cfg)?.into_iter().map(sqrt).collect())
        })
        .collect::<Result<_>>()?;

    let adm = admissible_range(n, s_upper);
    let mut se = vec![None; candidates.len()];
    let mut buf = vec![0.0; 2 * k + 1];
    for r in k..candidates.len() - k {
        let mut worst = 0.0f64;
        for j in adm.clone() {
            for (slot, row) in buf.iter_mut().zip(&roots[r - k..=r + k]) {
                *slot = row[j];
            }
            worst = worst.max(sample_variance(&buf));
        }
        se[r] = Some(worst);
    }
    let chosen = argmin_first(&se).expect("interior candidates exist");
    Ok(MvReport { candidates, se, chosen, note })
}

fn argmin_first(values: &[Option<f64>]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.iter().enumerate() {
        if let Some(v) = *v {
            if best.is_none_or(|(_, b)| v < b) {
                best = Some((i, v));
            }
        }
    }
    best.map(|(i, _)| i)
}

/// Default candidate grids for `(s_lower, s_upper)`: `len` equispaced values
/// in `[n^{-1/3}/4, n^{-1/3}/2]` and `[n^{-1/6}/6, n^{-1/6}/3]`.
pub fn default_scale_grids(n: usize, len: usize) -> (Vec<f64>, Vec<f64>) {
    let nf = n as f64;
    let a = pow(nf, -1.0 / 3.0);
    let b = pow(nf, -1.0 / 6.0);
    let lin = |lo: f64, hi: f64| -> Vec<f64> {
        if len < 2 {
            return vec![lo];
        }
        (0..len).map(|i| lo + (hi - lo) * i as f64 / (len - 1) as f64).collect()
    };
    (lin(a / 4.0, a / 2.0), lin(b / 6.0, b / 3.0))
}

/// Two-dimensional minimum-volatility selection of `(s_lower, s_upper)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalesReport {
    pub grid_lower: Vec<f64>,
    pub grid_upper: Vec<f64>,
    /// Detected counts; `None` for inadmissible pairs.
    pub counts: Vec<Vec<Option<usize>>>,
    pub se: Vec<Vec<Option<f64>>>,
    pub chosen: (usize, usize),
    pub s_lower: f64,
    pub s_upper: f64,
}

fn count_for_pair(
    y: &[f64],
    filter: &JumpPassFilter,
    moments: &FilterMoments,
    alpha: f64,
    s_lower: f64,
    s_upper: f64,
    s_star: f64,
) -> Option<usize> {
    if !(s_lower < s_upper) {
        return None;
    }
    let cfg = ScaleConfig::new(s_lower, s_upper, s_star);
    let field = multiscale_field(y, &cfg, filter).ok()?;
    let tc = TailConstants::new(moments, s_lower, s_upper).ok()?;
    let c = critical_value(alpha, &tc).ok()?;
    Some(mjpd_detect(&field, c).len())
}

/// Run the detector on every admissible pair and choose the interior pair
/// whose neighbourhood of detected counts has the smallest sample variance.
/// Ties go to the smallest `s_lower + s_upper`.
pub fn select_scales(
    y: &[f64],
    filter: &JumpPassFilter,
    alpha: f64,
    grid1: &[f64],
    grid2: &[f64],
    k3: usize,
    s_star: f64,
) -> Result<ScalesReport> {
    for (name, g) in [("lower", grid1), ("upper", grid2)] {
        if g.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid(alloc::format!("{name} grid must be strictly increasing")));
        }
        if g.len() < 2 * k3 + 1 {
            return Err(Error::invalid(alloc::format!(
                "{name} grid has {} points, neighbourhood needs {}",
                g.len(),
                2 * k3 + 1
            )));
        }
    }
    let moments = filter.moments()?;
    let pairs: Vec<(usize, usize)> =
        (0..grid1.len()).flat_map(|i| (0..grid2.len()).map(move |j| (i, j))).collect();
    let eval = |&(i, j): &(usize, usize)| {
        count_for_pair(y, filter, &moments, alpha, grid1[i], grid2[j], s_star)
    };
    #[cfg(feature = "parallel")]
    let flat: Vec<Option<usize>> = {
        use rayon::prelude::*;
        pairs.par_iter().map(eval).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let flat: Vec<Option<usize>> = pairs.iter().map(eval).collect();

    let counts: Vec<Vec<Option<usize>>> = flat.chunks(grid2.len()).map(<[_]>::to_vec).collect();
    if counts.iter().flatten().all(Option::is_none) {
        return Err(Error::invalid("no admissible (s_lower, s_upper) pair"));
    }
    let mut se = vec![vec![None; grid2.len()]; grid1.len()];
    let mut best: Option<((usize, usize), f64)> = None;
    for i in k3..grid1.len() - k3 {
        for j in k3..grid2.len() - k3 {
            if counts[i][j].is_none() {
                continue;
            }
            let neigh: Vec<f64> = (i - k3..=i + k3)
                .flat_map(|a| (j - k3..=j + k3).map(move |b| (a, b)))
                .filter_map(|(a, b)| counts[a][b].map(|c| c as f64))
                .collect();
            if neigh.len() < 2 {
                continue;
            }
            let v = sample_variance(&neigh);
            se[i][j] = Some(v);
            let sum = grid1[i] + grid2[j];
            let better = match best {
                None => true,
                Some(((bi, bj), bv)) => v < bv || (v == bv && sum < grid1[bi] + grid2[bj]),
            };
            if better {
                best = Some(((i, j), v));
            }
        }
    }
    let ((i, j), _) = best.ok_or_else(|| Error::invalid("no admissible interior pair"))?;
    Ok(ScalesReport {
        grid_lower: grid1.to_vec(),
        grid_upper: grid2.to_vec(),
        counts,
        se,
        chosen: (i, j),
        s_lower: grid1[i],
        s_upper: grid2[j],
    })
}

/// `q + 1 - P(|Z + xi| > c_{1-q})^m`, a bound on the probability of
/// misidentifying the jump set at level `q`.
pub fn alpha_objective(q: f64, xi: f64, m: f64, tc: &TailConstants) -> Result<f64> {
    let c = critical_value(q, tc)?;
    let detect = norm_sf(c - xi) + norm_sf(c + xi);
    Ok(q + 1.0 - pow(detect, m))
}

/// `xi_n = sqrt(n s_upper) delta f0 / (sigma_sup sqrt(u11))`.
pub fn signal_ratio(n: usize, s_upper: f64, sigma_sup: f64, delta: f64, moments: &FilterMoments) -> f64 {
    sqrt(n as f64 * s_upper) * delta * moments.f0 / (sigma_sup * sqrt(moments.u11))
}

/// Level minimising [`alpha_objective`] over the grid `0.001..=0.300`.
pub fn select_alpha(
    n: usize,
    s_upper: f64,
    sigma_sup: f64,
    m_guess: f64,
    delta_guess: f64,
    tc: &TailConstants,
    moments: &FilterMoments,
) -> Result<f64> {
    let xi = signal_ratio(n, s_upper, sigma_sup, delta_guess, moments);
    if !xi.is_finite() {
        return Err(Error::invalid(alloc::format!("signal ratio is not finite ({xi})")));
    }
    if !(m_guess >= 0.0) {
        return Err(Error::invalid(alloc::format!("m must be non-negative, got {m_guess}")));
    }
    let mut best = (f64::INFINITY, 0.0);
    for step in 1..=ALPHA_GRID_STEPS {
        let q = f64::from(step) * ALPHA_GRID_STEP;
        let v = alpha_objective(q, xi, m_guess, tc)?;
        if v < best.0 {
            best = (v, q);
        }
    }
    Ok(best.1)
}

/// `max_t sqrt(Xi(t) / u11)` after a running median of `Xi` over
/// `floor(n s*)` points.
pub fn sigma_sup_estimate(field: &MultiscaleField) -> f64 {
    let n = field.n();
    let w = (floor(n as f64 * field.config.s_star) as usize).max(1);
    let half = w / 2;
    let valid: Vec<usize> = field.valid_indices().collect();
    let mut buf = Vec::with_capacity(w + 1);
    let mut best = 0.0f64;
    for pos in 0..valid.len() {
        let lo = pos.saturating_sub(half);
        let hi = (pos + half).min(valid.len() - 1);
        buf.clear();
        buf.extend(valid[lo..=hi].iter().map(|&i| field.xi[i]));
        let med = median(&mut buf);
        best = best.max(sqrt(med / field.u11));
    }
    best
}

/// Level chosen by [`select_alpha`] with the rule-of-thumb inputs, then once
/// more with the number of detected jumps and the smallest estimated jump.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaChoice {
    pub alpha: f64,
    pub sigma_sup: f64,
    /// `(alpha, m, delta)` per round.
    pub rounds: Vec<(f64, f64, f64)>,
}

pub fn auto_alpha(
    y: &[f64],
    field: &MultiscaleField,
    filter: &JumpPassFilter,
) -> Result<AlphaChoice> {
    let cfg = field.config;
    let moments = filter.moments()?;
    let tc = TailConstants::new(&moments, cfg.s_lower, cfg.s_upper)?;
    let sigma = sigma_sup_estimate(field);
    let n = y.len();
    let m1 = 1.0 / (2.0 * cfg.s_upper);
    let d1 = cfg.s_upper;
    let a1 = select_alpha(n, cfg.s_upper, sigma, m1, d1, &tc, &moments)?;
    let mut rounds = vec![(a1, m1, d1)];

    let raw = mjpd_detect(field, critical_value(a1, &tc)?);
    if raw.is_empty() {
        return Ok(AlphaChoice { alpha: a1, sigma_sup: sigma, rounds });
    }
    let refined = cusum_refine(y, &raw, &RefineConfig::rule_of_thumb(&cfg))?;
    let w = (floor(n as f64 * cfg.s_lower) as usize).max(1);
    let delta = refined
        .iter()
        .map(|&t| {
            let p = (round(t * n as f64) as usize).clamp(1, n - 1);
            let left = &y[p.saturating_sub(w)..p];
            let right = &y[p..(p + w).min(n)];
            let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
            (mean(right) - mean(left)).abs()
        })
        .fold(f64::INFINITY, f64::min);
    let m2 = raw.len() as f64;
    let a2 = select_alpha(n, cfg.s_upper, sigma, m2, delta, &tc, &moments)?;
    rounds.push((a2, m2, delta));
    Ok(AlphaChoice { alpha: a2, sigma_sup: sigma, rounds })
}
