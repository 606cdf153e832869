// SPDX-License-Identifier: MIT OR Apache-2.0

use std::str::FromStr;

use jumpscan_core::ThresholdMode;

use crate::error::CliError;

/// Smallest bootstrap size accepted.
pub const MIN_BOOTSTRAP: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ThresholdArg {
    Analytic,
    Bootstrap(usize),
    Fixed(f64),
}

impl ThresholdArg {
    pub fn mode(self, seed: u64) -> ThresholdMode {
        match self {
            Self::Analytic => ThresholdMode::Analytic,
            Self::Bootstrap(b) => ThresholdMode::Bootstrap { b, seed },
            Self::Fixed(c) => ThresholdMode::Fixed(c),
        }
    }
}

impl FromStr for ThresholdArg {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::config(format!("threshold must be analytic, bootstrap:B or fixed:c, got '{s}'"));
        match s.split_once(':') {
            None if s == "analytic" => Ok(Self::Analytic),
            Some(("bootstrap", b)) => {
                let b: usize = b.parse().map_err(|_| bad())?;
                if b < MIN_BOOTSTRAP {
                    return Err(CliError::config(format!("bootstrap needs B >= {MIN_BOOTSTRAP}, got {b}")));
                }
                Ok(Self::Bootstrap(b))
            }
            Some(("fixed", c)) => {
                let c: f64 = c.parse().map_err(|_| bad())?;
                if c.is_nan() {
                    return Err(bad());
                }
                Ok(Self::Fixed(c))
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AlphaArg {
    Auto,
    Fixed(f64),
}

impl FromStr for AlphaArg {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s == "auto" {
            return Ok(Self::Auto);
        }
        match s.parse::<f64>() {
            Ok(a) if a > 0.0 && a < 0.5 => Ok(Self::Fixed(a)),
            _ => Err(CliError::config(format!("alpha must be 'auto' or lie in (0, 0.5), got '{s}'"))),
        }
    }
}

/// Everything the detection pipeline needs besides the data and the filter.
/// Unset scales are chosen from the data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub alpha: AlphaArg,
    pub s_lower: Option<f64>,
    pub s_upper: Option<f64>,
    pub s_star: Option<f64>,
    pub grid_eps: f64,
    pub threshold: ThresholdArg,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            alpha: AlphaArg::Auto,
            s_lower: None,
            s_upper: None,
            s_star: None,
            grid_eps: 0.5,
            threshold: ThresholdArg::Analytic,
            seed: 0,
        }
    }
}

impl Settings {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.s_lower.is_some() != self.s_upper.is_some() {
            return Err(CliError::config("--s-lower and --s-upper must be given together"));
        }
        if let (Some(lo), Some(hi)) = (self.s_lower, self.s_upper) {
            if !(lo > 0.0 && lo < hi && hi < 0.5) {
                return Err(CliError::config(format!("need 0 < s_lower < s_upper < 1/2, got {lo}, {hi}")));
            }
            if let Some(s) = self.s_star {
                if !(s > 0.0 && s < lo) {
                    return Err(CliError::config(format!("need 0 < s_star < s_lower, got {s}")));
                }
            }
        }
        if let Some(s) = self.s_star {
            if !(s > 0.0 && s < 0.5) {
                return Err(CliError::config(format!("s_star must lie in (0, 1/2), got {s}")));
            }
        }
        if !(self.grid_eps > 0.0 && self.grid_eps.is_finite()) {
            return Err(CliError::config(format!("grid_eps must be positive, got {}", self.grid_eps)));
        }
        Ok(())
    }
}
