// SPDX-License-Identifier: MIT OR Apache-2.0

//! Command definitions and dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use jumpscan_core::simulate::{gen_series, MeanModel, NoiseModel, PlsScenario};
use serde::Serialize;

use crate::analysis::analyse;
use crate::calibrate::{self, BootstrapSpec, CalibrationRow, DEFAULT_LEVELS, REFERENCE_ROWS};
use crate::error::{CliError, Result};
use crate::input::{load_filter, read_series};
use crate::montecarlo;
use crate::report::{self, ResultJson, TuneJson};
use crate::settings::{AlphaArg, Settings, ThresholdArg};
use crate::bench;

#[derive(Debug, Parser)]
#[command(name = "jumpscan", version, about = "Multiscale jump detection for time series")]
pub struct Cli {
    /// Worker threads for scale rows and replicates.
    #[arg(long, global = true, env = "JUMPSCAN_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect jumps in a one-column CSV series.
    Detect(DetectCmd),
    /// Print critical values for a list of levels and configurations.
    Calibrate(CalibrateCmd),
    /// Choose s_lower, s_upper, s* and alpha from the data.
    Tune(TuneCmd),
    /// Write one simulated series with its true jumps.
    Simulate(SimulateCmd),
    /// Replicate simulation and detection and summarize accuracy.
    Montecarlo(MonteCarloCmd),
    /// Time filtering and the full pipeline across series lengths.
    Bench(BenchCmd),
}

#[derive(Debug, Clone, Args)]
pub struct DetectArgs {
    /// Level in (0, 0.5), or `auto`.
    #[arg(long, default_value = "auto")]
    pub alpha: AlphaArg,
    #[arg(long)]
    pub s_lower: Option<f64>,
    #[arg(long)]
    pub s_upper: Option<f64>,
    #[arg(long)]
    pub s_star: Option<f64>,
    /// Exponent of the scale-grid size `floor(ln(n)^(1 + eps))`.
    #[arg(long, default_value_t = 0.5)]
    pub grid_eps: f64,
    /// `wstar`, `legendre:K:N`, `beta:K:Q`, or a JSON file `{order_k, coeffs}`.
    #[arg(long, default_value = "wstar")]
    pub filter: String,
    /// `analytic`, `bootstrap:B` or `fixed:c`.
    #[arg(long, default_value = "analytic")]
    pub threshold: ThresholdArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl DetectArgs {
    pub fn settings(&self) -> Settings {
        Settings {
            alpha: self.alpha,
            s_lower: self.s_lower,
            s_upper: self.s_upper,
            s_star: self.s_star,
            grid_eps: self.grid_eps,
            threshold: self.threshold,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct DetectCmd {
    #[arg(long)]
    pub input: PathBuf,
    /// Output directory for `result.json` and `plot.csv`.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Also write the full statistic field to `field.csv`.
    #[arg(long)]
    pub dump_stat: bool,
    #[command(flatten)]
    pub detect: DetectArgs,
}

#[derive(Debug, Args)]
pub struct CalibrateCmd {
    /// Single configuration; the reference rows are used when omitted.
    #[arg(long, requires_all = ["s_lower", "s_upper"])]
    pub n: Option<usize>,
    #[arg(long)]
    pub s_lower: Option<f64>,
    #[arg(long)]
    pub s_upper: Option<f64>,
    /// Comma-separated levels.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_LEVELS.to_vec())]
    pub levels: Vec<f64>,
    /// `analytic`, or `bootstrap:B` to add a simulated column.
    #[arg(long, default_value = "analytic")]
    pub threshold: ThresholdArg,
    #[arg(long, default_value_t = 0.5)]
    pub grid_eps: f64,
    #[arg(long, default_value = "wstar")]
    pub filter: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV output path; the table is always printed.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TuneCmd {
    #[arg(long)]
    pub input: PathBuf,
    /// JSON output path; the report is always printed.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub detect: DetectArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// GS, PS, ARMA, LS, PLS, PSnP, LSnP, PLSnP or PLS1.
    #[arg(long, default_value = "gs")]
    pub noise: NoiseModel,
    /// I, II, InP, IInP, increasing, smooth, smooth:d or zero.
    #[arg(long, default_value = "i")]
    pub mean: MeanModel,
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub noise_scale: f64,
}

impl ScenarioArgs {
    pub fn scenario(&self, seed: u64) -> PlsScenario {
        PlsScenario::new(self.noise.clone(), self.mean.clone(), self.n, seed).with_noise_scale(self.noise_scale)
    }
}

#[derive(Debug, Args)]
pub struct SimulateCmd {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV path; the truth goes to the same path with a `.json` extension.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct MonteCarloCmd {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, default_value_t = 200)]
    pub reps: usize,
    /// Metrics CSV path; per-run records go next to it with a `.runs.csv` suffix.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub detect: DetectArgs,
}

#[derive(Debug, Args)]
pub struct BenchCmd {
    #[arg(long, value_delimiter = ',', default_values_t = vec![500, 1000, 1500, 2000, 2500, 3000, 3500, 4000, 4500, 5000])]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub rounds: usize,
    #[arg(long, default_value = "wstar")]
    pub filter: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV output path; the report is always printed.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Size the global rayon pool. Without a count rayon picks its default.
pub fn init_threads(threads: Option<usize>) -> Result<()> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        return Err(CliError::config("thread count must be positive"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::config(format!("cannot size thread pool: {e}")))
}

pub fn run(cli: Cli) -> Result<()> {
    init_threads(cli.threads)?;
    match cli.command {
        Command::Detect(c) => detect(&c),
        Command::Calibrate(c) => calibrate(&c),
        Command::Tune(c) => tune(&c),
        Command::Simulate(c) => simulate(&c),
        Command::Montecarlo(c) => montecarlo(&c),
        Command::Bench(c) => bench(&c),
    }
}

fn detect(c: &DetectCmd) -> Result<()> {
    let settings = c.detect.settings();
    settings.validate()?;
    let filter = load_filter(&c.detect.filter)?;
    let y = read_series(&c.input)?;
    let a = analyse(&y, &settings, &filter)?;
    report::write_json(&c.out.join("result.json"), &ResultJson::new(&a.result, &a.field))?;
    report::write_plot(&c.out.join("plot.csv"), &a.result, &a.field)?;
    if c.dump_stat {
        report::write_field(&c.out.join("field.csv"), &a.field)?;
    }
    print!("{}", report::summary(&a.result));
    Ok(())
}

fn calibrate(c: &CalibrateCmd) -> Result<()> {
    let filter = load_filter(&c.filter)?;
    let rows = match (c.n, c.s_lower, c.s_upper) {
        (Some(n), Some(lo), Some(hi)) => vec![(n, lo, hi)],
        (None, None, None) => REFERENCE_ROWS.to_vec(),
        _ => return Err(CliError::config("--n, --s-lower and --s-upper go together")),
    };
    if let Some(a) = c.levels.iter().find(|a| !(**a > 0.0 && **a < 0.5)) {
        return Err(CliError::config(format!("levels must lie in (0, 0.5), got {a}")));
    }
    let boot = match c.threshold {
        ThresholdArg::Analytic => None,
        ThresholdArg::Bootstrap(b) => Some(BootstrapSpec { b, seed: c.seed, grid_eps: c.grid_eps }),
        ThresholdArg::Fixed(_) => return Err(CliError::config("calibrate accepts analytic or bootstrap:B")),
    };
    let table = calibrate::table(&rows, &c.levels, &filter, boot)?;
    print!("{}", format_calibration(&table, &c.levels));
    if let Some(out) = &c.out {
        report::write_csv(out, &table)?;
    }
    Ok(())
}

/// One line per configuration with a column per level, as `analytic` or
/// `analytic/bootstrap`.
pub fn format_calibration(table: &[CalibrationRow], levels: &[f64]) -> String {
    let mut s = format!("{:>6} {:>7} {:>7}", "n", "s_lower", "s_upper");
    for a in levels {
        s.push_str(&format!(" {:>15}", format!("alpha={a}")));
    }
    s.push('\n');
    for row in table.chunks(levels.len()) {
        s.push_str(&format!("{:>6} {:>7.3} {:>7.3}", row[0].n, row[0].s_lower, row[0].s_upper));
        for r in row {
            let cell = match r.bootstrap {
                Some(b) => format!("{:.3}/{:.3}", r.analytic, b),
                None => format!("{:.3}", r.analytic),
            };
            s.push_str(&format!(" {cell:>15}"));
        }
        s.push('\n');
    }
    s
}

#[derive(Serialize)]
struct TuneReportJson {
    chosen: TuneJson,
    s_star_candidates: Option<Vec<f64>>,
    s_star_se: Option<Vec<Option<f64>>>,
    scale_grid_lower: Option<Vec<f64>>,
    scale_grid_upper: Option<Vec<f64>>,
    scale_counts: Option<Vec<Vec<Option<usize>>>>,
    scale_se: Option<Vec<Vec<Option<f64>>>>,
    alpha_rounds: Option<Vec<(f64, f64, f64)>>,
    sigma_sup: Option<f64>,
}

fn tune(c: &TuneCmd) -> Result<()> {
    let settings = c.detect.settings();
    settings.validate()?;
    let filter = load_filter(&c.detect.filter)?;
    let y = read_series(&c.input)?;
    let a = analyse(&y, &settings, &filter)?;
    let t = &a.tuned;
    let out = TuneReportJson {
        chosen: TuneJson::from(t),
        s_star_candidates: t.s_star_report.as_ref().map(|r| r.candidates.clone()),
        s_star_se: t.s_star_report.as_ref().map(|r| r.se.clone()),
        scale_grid_lower: t.scales.as_ref().map(|r| r.grid_lower.clone()),
        scale_grid_upper: t.scales.as_ref().map(|r| r.grid_upper.clone()),
        scale_counts: t.scales.as_ref().map(|r| r.counts.clone()),
        scale_se: t.scales.as_ref().map(|r| r.se.clone()),
        alpha_rounds: t.alpha_choice.as_ref().map(|r| r.rounds.clone()),
        sigma_sup: t.alpha_choice.as_ref().map(|r| r.sigma_sup),
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    if let Some(path) = &c.out {
        report::write_json(path, &out)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SidecarJson {
    noise: String,
    mean: String,
    n: usize,
    seed: u64,
    noise_scale: f64,
    truth: Vec<TruthJson>,
}

#[derive(Serialize)]
struct TruthJson {
    t: f64,
    size: f64,
}

#[derive(Serialize)]
struct ValueRow {
    y: f64,
}

pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

fn simulate(c: &SimulateCmd) -> Result<()> {
    let sc = c.scenario.scenario(c.seed);
    let series = gen_series(&sc)?;
    let rows: Vec<ValueRow> = series.y.iter().map(|&y| ValueRow { y }).collect();
    report::write_csv(&c.out, &rows)?;
    let side = SidecarJson {
        noise: sc.noise.name(),
        mean: sc.mean.name(),
        n: sc.n,
        seed: sc.seed,
        noise_scale: sc.noise_scale,
        truth: series.truth.iter().map(|j| TruthJson { t: j.t, size: j.size }).collect(),
    };
    report::write_json(&sidecar_path(&c.out), &side)?;
    println!("wrote {} values to {}", series.y.len(), c.out.display());
    Ok(())
}

fn montecarlo(c: &MonteCarloCmd) -> Result<()> {
    let settings = c.detect.settings();
    settings.validate()?;
    let filter = load_filter(&c.detect.filter)?;
    let runs = montecarlo::run(&c.scenario.scenario(0), &settings, &filter, c.reps, c.detect.seed)?;
    let m = montecarlo::summarize(&runs);
    let fmt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), |x| format!("{x:.6}"));
    println!(
        "reps={} hit_rate={:.4} mean_m={:.3} mad_raw={} mad_refined={} mean_runtime={:.4}s",
        m.reps,
        m.hit_rate,
        m.mean_m,
        fmt(m.mad_raw),
        fmt(m.mad_refined),
        m.mean_runtime
    );
    if let Some(out) = &c.out {
        report::write_csv(out, std::slice::from_ref(&m))?;
        report::write_csv(&out.with_extension("runs.csv"), &runs)?;
    }
    Ok(())
}

fn bench(c: &BenchCmd) -> Result<()> {
    let filter = load_filter(&c.filter)?;
    let r = bench::run(&c.sizes, &filter, c.rounds, c.seed)?;
    println!("{:>7} {:>6} {:>14} {:>12}", "n", "scales", "per_scale_s", "total_s");
    for row in &r.rows {
        println!("{:>7} {:>6} {:>14.6} {:>12.6}", row.n, row.scales, row.per_scale_secs, row.total_secs);
    }
    println!("log-log slope of total time on n (ln n)^1.5: {:.3}", r.slope);
    if let Some(out) = &c.out {
        report::write_csv(out, &r.rows)?;
    }
    Ok(())
}
