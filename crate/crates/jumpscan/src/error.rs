// SPDX-License-Identifier: MIT OR Apache-2.0

use std::path::PathBuf;

/// Exit status for malformed input data.
pub const EXIT_DATA: i32 = 2;
/// Exit status for an invalid configuration.
pub const EXIT_CONFIG: i32 = 3;
/// Exit status for I/O and other runtime failures.
pub const EXIT_RUNTIME: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: line {line}: {msg}")]
    Data { path: PathBuf, line: u64, msg: String },
    #[error("{path}: {msg}")]
    Input { path: PathBuf, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] jumpscan_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        use jumpscan_core::Error as E;
        match self {
            Self::Data { .. } | Self::Input { .. } => EXIT_DATA,
            Self::Core(E::NonFinite { .. }) => EXIT_DATA,
            Self::Config(_) | Self::Core(_) => EXIT_CONFIG,
            Self::Io { .. } | Self::Json(_) | Self::Csv(_) => EXIT_RUNTIME,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
