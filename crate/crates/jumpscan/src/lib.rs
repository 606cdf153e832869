// SPDX-License-Identifier: MIT OR Apache-2.0

//! File formats, tuning defaults, Monte Carlo and benchmark drivers, and the
//! command-line interface around `jumpscan-core`.

#![forbid(unsafe_code)]

pub mod analysis;
pub mod bench;
pub mod calibrate;
pub mod cli;
pub mod error;
pub mod input;
pub mod montecarlo;
pub mod report;
pub mod settings;

pub use analysis::{analyse, Analysis, Tuned};
pub use error::{CliError, Result};
pub use settings::{AlphaArg, Settings, ThresholdArg};
