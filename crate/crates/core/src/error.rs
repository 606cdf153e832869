// SPDX-License-Identifier: MIT OR Apache-2.0

use alloc::string::String;
use core::fmt;

/// Errors raised by the detection pipeline and its components.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A precondition on an argument was violated.
    InvalidInput(String),
    /// The filter has no non-zero coefficient.
    ZeroFilter,
    /// `n * s` is below the minimum window half-width of 2 samples.
    ScaleTooSmall { n: usize, scale: f64 },
    /// The series contains a NaN or infinite value.
    NonFinite { index: usize },
    /// The sparse scale grid would have fewer than two scales.
    GridDegenerate { n: usize, len: usize },
    /// The self-normalizer vanished for every admissible time point.
    DegenerateDenominator,
    /// A linear system could not be solved.
    Singular { what: &'static str, condition: f64 },
    /// Root bracketing for the critical value failed.
    NoRoot { alpha: f64, at_low: f64, at_high: f64 },
    /// A filter cannot be represented in the requested form.
    Unrepresentable(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Self::InvalidInput(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Self::ZeroFilter => f.write_str("zero filter"),
            Self::ScaleTooSmall { n, scale } => {
                write!(f, "scale too small: n*s = {} < 2 (n={n}, s={scale})", *n as f64 * scale)
            }
            Self::NonFinite { index } => write!(f, "non-finite value at index {index}"),
            Self::GridDegenerate { n, len } => {
                write!(f, "grid degenerate: {len} scale(s) for n={n}, need at least 2")
            }
            Self::DegenerateDenominator => {
                f.write_str("self-normalizer is zero at every admissible time point")
            }
            Self::Singular { what, condition } => {
                write!(f, "singular {what} system (condition estimate {condition:.3e})")
            }
            Self::NoRoot { alpha, at_low, at_high } => write!(
                f,
                "no sign change for alpha={alpha}: tail(0.5)={at_low:.6e}, tail(12)={at_high:.6e}"
            ),
            Self::Unrepresentable(msg) => write!(f, "unrepresentable filter: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
