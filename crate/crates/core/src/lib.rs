// SPDX-License-Identifier: MIT OR Apache-2.0

//! Multiscale jump-point detection for time series whose trend is piecewise
//! smooth and whose noise is piecewise locally stationary.
//!
//! The pipeline is:
//!
//! 1. filter the series with an odd, compactly supported jump-pass filter at a
//!    sparse grid of scales ([`conv`], [`filter`]),
//! 2. self-normalize by a local fine-scale energy estimate and take the maximum
//!    over scales ([`multiscale`]),
//! 3. compare against a closed-form (or bootstrap) critical value
//!    ([`threshold`]),
//! 4. greedily extract separated peaks and refine each with a local CUSUM
//!    ([`detect`]).
//!
//! [`tuning`] implements data-driven choices of the scales and the level, and
//! [`simulate`] reproduces the benchmark data-generating processes.
//!
//! The crate is `no_std` + `alloc`. The `parallel` feature evaluates scales and
//! bootstrap replicates on a rayon pool; results do not depend on scheduling.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![forbid(unsafe_code)]
// NaN must fail range checks, so negated comparisons are deliberate
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub(crate) mod linalg;
pub mod math;
pub(crate) mod poly;

pub mod conv;
pub mod detect;
pub mod filter;
pub mod multiscale;
pub mod rng;
pub mod simulate;
pub mod threshold;
pub mod tuning;

pub use conv::{brute_filtered_series, fast_filtered_series, FilteredSeries};
pub use detect::{
    cusum_refine, detect_pipeline, mjpd_detect, DetectionResult, Jump, RawJump, RefineConfig,
    ThresholdMode,
};
pub use error::Error;
pub use filter::{builtin_wstar, FilterMoments, JumpPassFilter, OrderReport};
pub use multiscale::{multiscale_field, scale_grid, xi_denominator, MultiscaleField, ScaleConfig};
pub use threshold::{alpha_of_c, bootstrap_cv, critical_value, upper_bound_cv, TailConstants};

pub type Result<T> = core::result::Result<T, Error>;
