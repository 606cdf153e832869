// SPDX-License-Identifier: MIT OR Apache-2.0

//! JSON and CSV outputs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use jumpscan_core::{DetectionResult, MultiscaleField};
use serde::Serialize;

use crate::analysis::Tuned;
use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JumpJson {
    pub raw: f64,
    pub refined: f64,
    pub g: f64,
    pub scale: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigJson {
    pub n: usize,
    pub s_lower: f64,
    pub s_upper: f64,
    pub s_star: f64,
    pub grid_eps: f64,
    pub scales: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultJson {
    pub alpha: f64,
    pub threshold: f64,
    pub jumps: Vec<JumpJson>,
    pub config: ConfigJson,
}

impl ResultJson {
    pub fn new(result: &DetectionResult, field: &MultiscaleField) -> Self {
        let c = result.config;
        Self {
            alpha: result.alpha,
            threshold: result.threshold,
            jumps: result
                .jumps
                .iter()
                .map(|j| JumpJson { raw: j.raw, refined: j.refined, g: j.g, scale: j.scale })
                .collect(),
            config: ConfigJson {
                n: result.n,
                s_lower: c.s_lower,
                s_upper: c.s_upper,
                s_star: c.s_star,
                grid_eps: c.grid_eps,
                scales: field.grid.len(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TuneJson {
    pub s_lower: f64,
    pub s_upper: f64,
    pub s_star: f64,
    pub alpha: f64,
}

impl From<&Tuned> for TuneJson {
    fn from(t: &Tuned) -> Self {
        Self { s_lower: t.s_lower, s_upper: t.s_upper, s_star: t.s_star, alpha: t.alpha }
    }
}

pub fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n").and_then(|()| w.flush()).map_err(|e| CliError::io(path, e))
}

/// Rows of serializable records with a header.
pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

#[derive(Serialize)]
struct PlotRow {
    t: f64,
    g: f64,
    threshold: f64,
    jump: u8,
}

/// `t, g, threshold, jump` per time point; `jump` marks raw detections.
pub fn write_plot(path: &Path, result: &DetectionResult, field: &MultiscaleField) -> Result<()> {
    let marks: Vec<usize> = result.jumps.iter().map(|j| (j.raw * field.n() as f64).round() as usize - 1).collect();
    let rows: Vec<PlotRow> = (0..field.n())
        .map(|j| PlotRow {
            t: field.time(j),
            g: field.g[j],
            threshold: result.threshold,
            jump: u8::from(marks.contains(&j)),
        })
        .collect();
    write_csv(path, &rows)
}

/// Full field: `t, valid, xi, g, scale`, then `H` at every grid scale.
pub fn write_field(path: &Path, field: &MultiscaleField) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(path)?);
    let mut header = vec!["t".to_string(), "valid".into(), "xi".into(), "g".into(), "scale".into()];
    header.extend(field.grid.iter().map(|s| format!("h_{s:.6}")));
    w.write_record(&header)?;
    for j in 0..field.n() {
        let mut rec = vec![
            field.time(j).to_string(),
            u8::from(field.valid[j]).to_string(),
            field.xi[j].to_string(),
            field.g[j].to_string(),
            field.grid[field.argmax_scale[j]].to_string(),
        ];
        rec.extend(field.h.iter().map(|row| row[j].to_string()));
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// One-line human summary per jump.
pub fn summary(result: &DetectionResult) -> String {
    let mut s = format!(
        "n={} alpha={:.4} threshold={:.4} jumps={}\n",
        result.n,
        result.alpha,
        result.threshold,
        result.jumps.len()
    );
    for j in &result.jumps {
        s.push_str(&format!(
            "  t_raw={:.5} t_refined={:.5} g={:.3} scale={:.4}\n",
            j.raw, j.refined, j.g, j.scale
        ));
    }
    s
}
