// SPDX-License-Identifier: MIT OR Apache-2.0

//! Benchmark data-generating processes: piecewise locally stationary noise
//! plus a piecewise smooth mean.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::str::FromStr;

use rand_core::RngCore;
use rand_distr::{ChiSquared, Distribution, StandardNormal, StudentT};

use crate::math::{cos, log, pow, round, sin, sqrt};
use crate::rng::{stream, Rng};
use crate::{Error, Result};

/// Lags kept from the infinite moving average of the `PLSnP` model.
const MA_TRUNCATION: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Innovation {
    /// N(0, 1)
    Gaussian,
    /// `(chi2(3) - 3) / sqrt(6)`
    Chi3,
    /// +-1 with equal probability
    Rademacher,
    /// `t(6) / sqrt(3/2)`
    T6,
    /// `t(8) / sqrt(4/3)`
    T8,
}

enum Sampler {
    Gaussian,
    Chi3(ChiSquared<f64>),
    Rademacher,
    T(StudentT<f64>, f64),
}

impl Innovation {
    fn sampler(self) -> Sampler {
        match self {
            Self::Gaussian => Sampler::Gaussian,
            Self::Chi3 => Sampler::Chi3(ChiSquared::new(3.0).expect("valid dof")),
            Self::Rademacher => Sampler::Rademacher,
            Self::T6 => Sampler::T(StudentT::new(6.0).expect("valid dof"), sqrt(1.5)),
            Self::T8 => Sampler::T(StudentT::new(8.0).expect("valid dof"), sqrt(4.0 / 3.0)),
        }
    }

    /// `len` standardized draws.
    pub fn draw(self, rng: &mut Rng, len: usize) -> Vec<f64> {
        let s = self.sampler();
        (0..len).map(|_| s.sample(rng)).collect()
    }
}

impl Sampler {
    fn sample(&self, rng: &mut Rng) -> f64 {
        match self {
            Self::Gaussian => StandardNormal.sample(rng),
            Self::Chi3(d) => (d.sample(rng) - 3.0) / sqrt(6.0),
            Self::Rademacher => {
                if rng.next_u32() & 1 == 0 {
                    -1.0
                } else {
                    1.0
                }
            }
            Self::T(d, scale) => d.sample(rng) / scale,
        }
    }
}

/// One regime of an ARMA(1,1)-type recursion `G_i = a G_{i-1} + eta_i + b eta_{i-1}`,
/// output `scale * G_i`, active for times up to `until`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArPiece {
    pub until: f64,
    pub ar: f64,
    pub ma: f64,
    pub scale: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NoiseModel {
    /// i.i.d. N(0, 1)
    Gs,
    /// AR(1) with a coefficient flip at 0.5, standardized chi-square innovations
    Ps,
    /// stationary ARMA(1,1) with unit long-run variance
    Arma,
    /// smoothly time-varying AR(1) with Rademacher innovations
    Ls,
    /// two time-varying ARMA(1,1) regimes split at 0.4, t(6) innovations
    Pls,
    /// AR(1) with four coefficient regimes, chi-square innovations
    PsnP,
    /// time-varying ARMA(1,1), t(8) innovations
    LsnP,
    /// moving average whose coefficients switch on an `n`-dependent number of segments
    PlsnP,
    /// two time-varying AR(1) regimes split at 0.6, t(8) innovations, halved
    PlsTypeOne,
    /// Gaussian ARMA(1,1) with constant coefficients per regime
    Custom(Vec<ArPiece>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum MeanModel {
    /// step of 2.5 at 0.5
    I,
    /// sinusoidal trend with jumps of 2.75 at 1/3 and 2/3
    II,
    /// eight alternating jumps of 1.99 at j/9
    InP,
    /// `5 sin(2 pi t)` plus the `InP` steps
    IInP,
    /// `10 t` plus `k_n` alternating jumps of size `Delta_n`
    Increasing,
    /// `cos(pi t) + d 1(0 < t <= 0.5)`
    SmoothShift(f64),
    Zero,
    /// Piecewise constant: `(end, level)` pairs with increasing ends, the last
    /// one at 1.
    Custom(Vec<(f64, f64)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlsScenario {
    pub noise: NoiseModel,
    pub mean: MeanModel,
    pub n: usize,
    pub seed: u64,
    pub burn_in: usize,
    /// Multiplier applied to the noise.
    pub noise_scale: f64,
}

impl PlsScenario {
    pub fn new(noise: NoiseModel, mean: MeanModel, n: usize, seed: u64) -> Self {
        Self { noise, mean, n, seed, burn_in: 500, noise_scale: 1.0 }
    }

    pub fn with_noise_scale(mut self, scale: f64) -> Self {
        self.noise_scale = scale;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrueJump {
    pub t: f64,
    /// `beta(t+) - beta(t-)`
    pub size: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub y: Vec<f64>,
    pub truth: Vec<TrueJump>,
}

/// Number of jumps `k_n = round(4/3 (ln n / 6)^5)` of the increasing scenario.
pub fn increasing_k(n: usize) -> usize {
    let r = log(n as f64) / 6.0;
    (round(4.0 / 3.0 * pow(r, 5.0)) as usize).max(1)
}

/// Jump size `Delta_n = 4 / (ln n / 6)^2` of the increasing scenario.
pub fn increasing_delta(n: usize) -> f64 {
    let r = log(n as f64) / 6.0;
    4.0 / (r * r)
}

/// Number of noise breaks `floor(k_n / 2)` of the `PLSnP` model.
pub fn plsnp_breaks(n: usize) -> usize {
    (increasing_k(n) / 2).max(1)
}

/// 1 on `(0, 1/segments]`, 0 on the next segment, and so on; exact for `t = i/n`.
fn alternating(i: usize, n: usize, segments: usize) -> f64 {
    if i == 0 {
        return 0.0;
    }
    let u = (i * segments).div_ceil(n) - 1;
    if u % 2 == 0 {
        1.0
    } else {
        0.0
    }
}

fn alternating_truth(segments: usize, size: f64) -> Vec<TrueJump> {
    (1..segments)
        .map(|j| TrueJump {
            t: j as f64 / segments as f64,
            size: if j % 2 == 1 { -size } else { size },
        })
        .collect()
}

impl MeanModel {
    /// `beta(i/n)` for 1-based `i`.
    pub fn value(&self, i: usize, n: usize) -> f64 {
        let t = i as f64 / n as f64;
        match self {
            Self::I => {
                if 2 * i >= n {
                    2.5
                } else {
                    0.0
                }
            }
            Self::II => {
                if 3 * i <= n {
                    5.0 * sin(PI * t) + 2.75
                } else if 3 * i <= 2 * n {
                    5.0 * sin(PI * t)
                } else {
                    let d = t - 2.0 / 3.0;
                    (5.0 * sin(2.0 * PI / 3.0) + 2.75) * (1.0 - 10.0 * d * d)
                }
            }
            Self::InP => 1.0 + 1.99 * alternating(i, n, 9),
            Self::IInP => 5.0 * sin(2.0 * PI * t) + 1.99 * alternating(i, n, 9),
            Self::Increasing => {
                let k = increasing_k(n);
                10.0 * t + increasing_delta(n) * alternating(i, n, k + 1)
            }
            Self::SmoothShift(d) => cos(PI * t) + if 2 * i <= n { *d } else { 0.0 },
            Self::Zero => 0.0,
            Self::Custom(pieces) => pieces
                .iter()
                .find(|(end, _)| t <= *end)
                .or(pieces.last())
                .map_or(0.0, |p| p.1),
        }
    }

    pub fn truth(&self, n: usize) -> Vec<TrueJump> {
        match self {
            Self::I => vec![TrueJump { t: 0.5, size: 2.5 }],
            Self::II => vec![
                TrueJump { t: 1.0 / 3.0, size: -2.75 },
                TrueJump { t: 2.0 / 3.0, size: 2.75 },
            ],
            Self::InP | Self::IInP => alternating_truth(9, 1.99),
            Self::Increasing => alternating_truth(increasing_k(n) + 1, increasing_delta(n)),
            Self::SmoothShift(d) if *d != 0.0 => vec![TrueJump { t: 0.5, size: -d }],
            Self::SmoothShift(_) | Self::Zero => Vec::new(),
            Self::Custom(pieces) => pieces
                .windows(2)
                .filter(|w| w[0].1 != w[1].1)
                .map(|w| TrueJump { t: w[0].0, size: w[1].1 - w[0].1 })
                .collect(),
        }
    }
}

type Coef = Box<dyn Fn(f64) -> (f64, f64, f64)>;

struct Regime {
    until: f64,
    /// `t -> (ar, ma, scale)`
    coef: Coef,
}

fn regime(until: f64, f: impl Fn(f64) -> (f64, f64, f64) + 'static) -> Regime {
    Regime { until, coef: Box::new(f) }
}

impl NoiseModel {
    pub fn innovation(&self) -> Innovation {
        match self {
            Self::Gs | Self::Arma | Self::PlsnP | Self::Custom(_) => Innovation::Gaussian,
            Self::Ps | Self::PsnP => Innovation::Chi3,
            Self::Ls => Innovation::Rademacher,
            Self::Pls => Innovation::T6,
            Self::LsnP | Self::PlsTypeOne => Innovation::T8,
        }
    }

    fn regimes(&self) -> Vec<Regime> {
        match self {
            Self::Gs => vec![regime(1.0, |_| (0.0, 0.0, 1.0))],
            Self::Arma => vec![regime(1.0, |_| (0.3, 0.5, 1.0 / 2.142857))],
            Self::Ps => vec![
                regime(0.5, |_| (0.25, 0.0, 0.75)),
                regime(1.0, |_| (-0.25, 0.0, 1.25)),
            ],
            Self::Ls => vec![regime(1.0, |t| (0.5 * t - 0.2, 0.0, 1.0 + 0.5 * t))],
            Self::Pls => vec![
                regime(0.4, |t| (0.5 - t, 0.2 - 0.5 * t, 1.0)),
                regime(1.0, |t| {
                    let d = t - 0.2;
                    (0.5 * sin(2.0 * PI * t), d * d / 2.0, 1.0)
                }),
            ],
            Self::PsnP => vec![regime(1.0, |t| {
                let b = if t <= 0.25 {
                    -0.3
                } else if t <= 2.0 / 3.0 {
                    0.1
                } else if t <= 0.75 {
                    0.2
                } else {
                    -0.1
                };
                (1.25 * b, 0.0, 1.0)
            })],
            Self::LsnP => vec![regime(1.0, |t| {
                let d = t - 0.5;
                (3.0 * d * d - 0.3, 0.2 - 0.4 * t, 1.0)
            })],
            Self::PlsTypeOne => vec![
                regime(0.6, |t| (0.5 * t - 0.2, 0.0, 0.5)),
                regime(1.0, |t| (0.6 * cos(2.0 * PI * t), 0.0, 0.5)),
            ],
            Self::Custom(pieces) => pieces
                .iter()
                .map(|p| {
                    let p = *p;
                    regime(p.until, move |_| (p.ar, p.ma, p.scale))
                })
                .collect(),
            Self::PlsnP => Vec::new(),
        }
    }

    /// Noise for observations `1..=n`, after `burn_in` warm-up steps.
    pub fn generate(&self, n: usize, burn_in: usize, rng: &mut Rng) -> Vec<f64> {
        let total = burn_in + n;
        let eta = self.innovation().draw(rng, total);
        let time = |p: usize| ((p as f64 - burn_in as f64 + 1.0) / n as f64).clamp(0.0, 1.0);
        if let Self::PlsnP = self {
            return plsnp(&eta, n, burn_in);
        }
        let regimes = self.regimes();
        let mut out = vec![0.0; n];
        let mut state = vec![0.0; regimes.len()];
        for p in 0..total {
            let t = time(p);
            let eta_prev = if p > 0 { eta[p - 1] } else { 0.0 };
            let active = regimes.iter().position(|r| t <= r.until).unwrap_or(regimes.len() - 1);
            for (k, r) in regimes.iter().enumerate() {
                let (a, b, c) = (r.coef)(t);
                state[k] = a * state[k] + eta[p] + b * eta_prev;
                if p >= burn_in && k == active {
                    out[p - burn_in] = c * state[k];
                }
            }
        }
        out
    }
}

fn plsnp(eta: &[f64], n: usize, burn_in: usize) -> Vec<f64> {
    let segments = plsnp_breaks(n) + 1;
    (0..n)
        .map(|i| {
            let obs = i + 1;
            let t = obs as f64 / n as f64;
            let g = alternating(obs, n, segments);
            let phi = 0.2 * cos(2.0 * PI * t) + 0.2 * g;
            let p = burn_in + i;
            let mut acc = 0.0;
            let mut w = 1.0;
            for j in 0..=MA_TRUNCATION.min(p) {
                acc += w * eta[p - j];
                w *= phi;
            }
            0.6 * (1.0 + 0.7 * g) * acc
        })
        .collect()
}

/// Simulate one series with its true jump set.
pub fn gen_series(sc: &PlsScenario) -> Result<Series> {
    if sc.n < 100 {
        return Err(Error::invalid(alloc::format!("n must be at least 100, got {}", sc.n)));
    }
    if let NoiseModel::Custom(p) = &sc.noise {
        if p.is_empty() {
            return Err(Error::invalid("custom noise needs at least one regime"));
        }
    }
    let mut rng = stream(sc.seed, 0);
    let noise = sc.noise.generate(sc.n, sc.burn_in, &mut rng);
    let y = noise
        .iter()
        .enumerate()
        .map(|(i, e)| sc.mean.value(i + 1, sc.n) + sc.noise_scale * e)
        .collect();
    Ok(Series { y, truth: sc.mean.truth(sc.n) })
}

impl FromStr for NoiseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "gs" => Self::Gs,
            "ps" => Self::Ps,
            "arma" => Self::Arma,
            "ls" => Self::Ls,
            "pls" => Self::Pls,
            "psnp" => Self::PsnP,
            "lsnp" => Self::LsnP,
            "plsnp" => Self::PlsnP,
            "pls1" => Self::PlsTypeOne,
            _ => return Err(Error::invalid(alloc::format!("unknown noise model '{s}'"))),
        })
    }
}

impl FromStr for MeanModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if let Some(d) = lower.strip_prefix("smooth:") {
            let d: f64 = d
                .parse()
                .map_err(|_| Error::invalid(alloc::format!("bad shift in '{s}'")))?;
            return Ok(Self::SmoothShift(d));
        }
        Ok(match lower.as_str() {
            "i" => Self::I,
            "ii" => Self::II,
            "inp" => Self::InP,
            "iinp" => Self::IInP,
            "increasing" => Self::Increasing,
            "smooth" => Self::SmoothShift(0.0),
            "zero" => Self::Zero,
            _ => return Err(Error::invalid(alloc::format!("unknown mean model '{s}'"))),
        })
    }
}

impl NoiseModel {
    pub fn name(&self) -> String {
        String::from(match self {
            Self::Gs => "GS",
            Self::Ps => "PS",
            Self::Arma => "ARMA",
            Self::Ls => "LS",
            Self::Pls => "PLS",
            Self::PsnP => "PSnP",
            Self::LsnP => "LSnP",
            Self::PlsnP => "PLSnP",
            Self::PlsTypeOne => "PLS1",
            Self::Custom(_) => "custom",
        })
    }
}

impl MeanModel {
    pub fn name(&self) -> String {
        match self {
            Self::I => "I".into(),
            Self::II => "II".into(),
            Self::InP => "InP".into(),
            Self::IInP => "IInP".into(),
            Self::Increasing => "increasing".into(),
            Self::SmoothShift(d) => alloc::format!("smooth:{d}"),
            Self::Zero => "zero".into(),
            Self::Custom(_) => "custom".into(),
        }
    }
}
