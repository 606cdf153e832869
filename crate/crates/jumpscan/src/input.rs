// SPDX-License-Identifier: MIT OR Apache-2.0

//! Series and filter loading.

use std::fs::File;
use std::path::Path;

use jumpscan_core::filter::{construct_beta_filter, construct_legendre_filter};
use jumpscan_core::{builtin_wstar, JumpPassFilter};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Smallest series the detector accepts.
pub const MIN_LEN: usize = 100;

/// Read a one-column numeric CSV. A non-numeric first row is taken as a
/// header.
pub fn read_series(path: &Path) -> Result<Vec<f64>> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    read_series_from(file, path)
}

pub fn read_series_from(reader: impl std::io::Read, path: &Path) -> Result<Vec<f64>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(reader);
    let data_err = |line: u64, msg: String| CliError::Data { path: path.to_path_buf(), line, msg };
    let mut out = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(k as u64 + 1, |p| p.line());
            data_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(k as u64 + 1, |p| p.line());
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != 1 {
            return Err(data_err(line, format!("expected one column, found {}", rec.len())));
        }
        match rec[0].parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            Ok(v) => return Err(data_err(line, format!("row {} is not finite ({v})", out.len() + 1))),
            Err(_) if k == 0 => continue,
            Err(_) => return Err(data_err(line, format!("row {} is not a number: '{}'", out.len() + 1, &rec[0]))),
        }
    }
    if out.len() < MIN_LEN {
        return Err(CliError::Input {
            path: path.to_path_buf(),
            msg: format!("series has {} values, need at least {MIN_LEN}", out.len()),
        });
    }
    Ok(out)
}

/// On-disk filter: `W(x) = sum_j coeffs[j-1] x^j` on `[0, 1]`, extended oddly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterFile {
    pub order_k: u32,
    pub coeffs: Vec<f64>,
}

/// Resolve `--filter`: `wstar`, `legendre:K:N`, `beta:K:Q`, or a JSON path.
pub fn load_filter(spec: &str) -> Result<JumpPassFilter> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<u32> {
        s.parse().map_err(|_| CliError::config(format!("bad number '{s}' in filter '{spec}'")))
    };
    match parts.as_slice() {
        ["wstar"] => Ok(builtin_wstar()),
        ["legendre", k, big_n] => Ok(construct_legendre_filter(num(k)?, num(big_n)? as usize)?),
        ["beta", k, q] => {
            let (f, report) = construct_beta_filter(num(k)?, num(q)?)?;
            if !report.passed() {
                log::warn!("beta filter fails its order checks: {:?}", report.failures());
            }
            Ok(f)
        }
        _ => {
            let path = Path::new(spec);
            let file = File::open(path).map_err(|e| CliError::io(path, e))?;
            let parsed: FilterFile = serde_json::from_reader(file)
                .map_err(|e| CliError::Input { path: path.to_path_buf(), msg: e.to_string() })?;
            let f = JumpPassFilter::from_coeffs(parsed.order_k, &parsed.coeffs)?;
            f.moments()?;
            Ok(f)
        }
    }
}
