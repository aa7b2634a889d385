//! The `projsum` command line: `spectrum`, `density`, `experiment` and
//! `selftest`.
//!
//! Exit codes: 0 success, 1 runtime failure (I/O and the like), 2 usage or
//! configuration error, 3 a statistical assertion failed.

pub mod config;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::densities::{
    atoms_sum, integrate, limit_density_jacobi, limit_density_sum, support_jacobi, support_sum,
    DensityError, LimitParams, LimitShape,
};
use crate::ensembles::{
    sample_jacobi_spectrum, sample_sum_matrix, self_adjoint_eigenvalues, Beta, EnsembleError,
    EnsembleParams, SeedSpec,
};
use crate::spectra::{classify_eigenvalues, predicted_spectrum, EigenKind, Interval, SpectraError};
use crate::stats::{run_experiment, ExperimentConfig, ExperimentReport, ExperimentResult, Mode, StatsError};
use config::ConfigError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ASSERTION: i32 = 3;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PROJSUM_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("json output: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    AssertionFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => EXIT_USAGE,
            CliError::Stats(StatsError::IntervalHitsAtom(_))
            | CliError::Stats(StatsError::InvalidConfig(_))
            | CliError::Stats(StatsError::Degenerate(_)) => EXIT_USAGE,
            CliError::Ensemble(EnsembleError::InvalidParams(_))
            | CliError::Ensemble(EnsembleError::RankOutOfRange { .. }) => EXIT_USAGE,
            CliError::Density(DensityError::InvalidRanks { .. })
            | CliError::Density(DensityError::InvalidRates { .. }) => EXIT_USAGE,
            CliError::Stats(StatsError::Ensemble(EnsembleError::InvalidParams(_))) => EXIT_USAGE,
            CliError::AssertionFailed(_) => EXIT_ASSERTION,
            _ => EXIT_RUNTIME,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Parser)]
#[command(name = "projsum", version, about = "Spectra of sums of random orthogonal projections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplePath {
    /// Full eigensolve of the N×N matrix P + θQ.
    Direct,
    /// p Jacobi points mapped through the exact correspondence.
    Jacobi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliMode {
    Counting,
    VarianceGrowth,
    HardEdge,
    SoftEdge,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Counting => Mode::Counting,
            CliMode::VarianceGrowth => Mode::VarianceGrowth,
            CliMode::HardEdge => Mode::HardEdge,
            CliMode::SoftEdge => Mode::SoftEdge,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one spectrum of P + θQ and write it as CSV.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 2)]
        beta: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SamplePath::Direct)]
        path: SamplePath,
        #[arg(long)]
        out: PathBuf,
    },
    /// Tabulate a limiting density: `--p --q` for P + Q, `--s --t` for Jacobi.
    Density {
        #[arg(long, requires = "q", conflicts_with_all = ["s", "t"])]
        p: Option<f64>,
        #[arg(long, requires = "p")]
        q: Option<f64>,
        #[arg(long, requires = "t")]
        s: Option<f64>,
        #[arg(long, requires = "s")]
        t: Option<f64>,
        #[arg(long, default_value_t = 200)]
        grid_points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a Monte Carlo experiment from a key-value config file.
    Experiment {
        #[arg(long, value_enum)]
        mode: CliMode,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Run the acceptance checks (several minutes in full).
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

/// Entry point shared by the binary and the tests; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Sizes the global worker pool from `PROJSUM_THREADS`, if set.
pub fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            log::debug!("global thread pool already initialised");
        }
    }
    Ok(())
}

pub fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Spectrum {
            n,
            p,
            q,
            theta,
            beta,
            seed,
            path,
            out,
        } => {
            let beta = Beta::try_from(beta)?;
            let params = EnsembleParams::new(n, p, q, theta, beta)?;
            if params.swapped() {
                log::info!("p > q given; ranks swapped to p = {}, q = {}", params.p_rank(), params.q_rank());
            }
            let rows = sample_spectrum(&params, SeedSpec::new(seed, 0), path)?;
            write_spectrum_csv(&out, &rows)?;
            Ok(EXIT_OK)
        }
        Command::Density {
            p,
            q,
            s,
            t,
            grid_points,
            out,
        } => {
            let table = match (p, q, s, t) {
                (Some(p), Some(q), None, None) => density_table_sum(LimitParams::new(p, q)?, grid_points)?,
                (None, None, Some(s), Some(t)) => density_table_jacobi(s, t, grid_points)?,
                _ => return Err(CliError::Usage("give either --p and --q, or --s and --t".into())),
            };
            write_density_csv(&out, &table)?;
            Ok(EXIT_OK)
        }
        Command::Experiment {
            mode,
            config,
            seed,
            out_dir,
        } => {
            let text = fs::read_to_string(&config).map_err(io_err(&config))?;
            let cfg = config::parse_config(&text, Some(mode.into()), seed)?;
            let report = run_and_write(&cfg, &out_dir)?;
            for c in &report.checks {
                let tag = if c.passed { "ok" } else { "FAIL" };
                eprintln!("[{tag}] {} = {}", c.name, c.value);
            }
            if report.passed() {
                Ok(EXIT_OK)
            } else {
                Err(CliError::AssertionFailed(format!(
                    "{} of {} assertions failed",
                    report.checks.iter().filter(|c| !c.passed).count(),
                    report.checks.len()
                )))
            }
        }
        Command::Selftest { only } => {
            let mut all_pass = true;
            for (id, _, check) in crate::selftest::CRITERIA {
                if !only.is_empty() && !only.contains(id) {
                    continue;
                }
                let o = check();
                println!("{}", o.headline());
                for d in &o.details {
                    println!("    {d}");
                }
                all_pass &= o.passed;
            }
            Ok(if all_pass { EXIT_OK } else { EXIT_ASSERTION })
        }
    }
}

/// `(value, kind)` rows of one sampled spectrum, ascending.
pub fn sample_spectrum(
    params: &EnsembleParams,
    seed: SeedSpec,
    path: SamplePath,
) -> Result<Vec<(f64, EigenKind)>, CliError> {
    Ok(match path {
        SamplePath::Direct => {
            let ev = self_adjoint_eigenvalues(&sample_sum_matrix(params, seed)?)?;
            classify_eigenvalues(&ev, params)
        }
        SamplePath::Jacobi => {
            let t = sample_jacobi_spectrum(params, seed)?;
            predicted_spectrum(&t, params)?.labelled()
        }
    })
}

/// 17 significant digits, which round-trips every `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let f = fs::File::create(path).map_err(io_err(path))?;
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(f))
}

/// Header `index,value,kind`.
pub fn write_spectrum_csv(path: &Path, rows: &[(f64, EigenKind)]) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    w.write_record(["index", "value", "kind"])?;
    for (i, (x, kind)) in rows.iter().enumerate() {
        w.write_record([i.to_string(), fmt_f64(*x), kind.name().to_string()])?;
    }
    w.flush().map_err(io_err(path))?;
    Ok(())
}

/// Rows of a density table: `(kind, x, value)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub kind: &'static str,
    pub x: Option<f64>,
    pub value: f64,
}

fn support_rows(ivs: &[Interval]) -> Vec<DensityRow> {
    let mut rows = Vec::new();
    for iv in ivs {
        rows.push(DensityRow { kind: "support_lo", x: None, value: iv.lo });
        rows.push(DensityRow { kind: "support_hi", x: None, value: iv.hi });
    }
    rows
}

fn grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let h = (hi - lo) / points as f64;
    (0..points).map(move |i| lo + (i as f64 + 0.5) * h)
}

pub fn density_table_sum(lp: LimitParams, points: usize) -> Result<Vec<DensityRow>, CliError> {
    if points == 0 {
        return Err(CliError::Usage("--grid-points must be positive".into()));
    }
    let (i1, i2) = support_sum(lp);
    let mut rows = support_rows(&[i2, i1]);
    for x in grid(0.0, 2.0, points) {
        let value = limit_density_sum(lp, x).unwrap_or(0.0);
        rows.push(DensityRow { kind: "density", x: Some(x), value });
    }
    for (x, w) in atoms_sum(lp) {
        rows.push(DensityRow { kind: "atom", x: Some(x), value: w });
    }
    let mass = LimitShape::sum(lp).total_mass(1e-10)?;
    rows.push(DensityRow { kind: "total_mass", x: None, value: mass });
    Ok(rows)
}

pub fn density_table_jacobi(s: f64, t: f64, points: usize) -> Result<Vec<DensityRow>, CliError> {
    if points == 0 {
        return Err(CliError::Usage("--grid-points must be positive".into()));
    }
    let iv = support_jacobi(s, t)?;
    let mut rows = support_rows(&[iv]);
    for x in grid(0.0, 1.0, points) {
        let value = limit_density_jacobi(s, t, x)?;
        rows.push(DensityRow { kind: "density", x: Some(x), value });
    }
    let mass = integrate(|x| limit_density_jacobi(s, t, x).unwrap_or(0.0), &iv, 1e-10)?;
    rows.push(DensityRow { kind: "total_mass", x: None, value: mass });
    Ok(rows)
}

/// Header `kind,x,value`; support rows first, then the grid, the atoms and
/// a final `total_mass` row.
pub fn write_density_csv(path: &Path, rows: &[DensityRow]) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    w.write_record(["kind", "x", "value"])?;
    for r in rows {
        let x = r.x.map(fmt_f64).unwrap_or_default();
        w.write_record([r.kind.to_string(), x, fmt_f64(r.value)])?;
    }
    w.flush().map_err(io_err(path))?;
    Ok(())
}

/// Provenance of an `experiment` run. Kept apart from `report.json` because
/// its timestamps differ between runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config: ExperimentConfig,
    pub tool_version: String,
    /// Seconds since the Unix epoch.
    pub started_at: f64,
    pub finished_at: f64,
    pub output_paths: Vec<PathBuf>,
}

fn now() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

/// Runs `cfg` and writes `report.json`, `samples.csv` and `manifest.json`
/// into `out_dir`.
pub fn run_and_write(cfg: &ExperimentConfig, out_dir: &Path) -> Result<ExperimentReport, CliError> {
    let started_at = now();
    let report = run_experiment(cfg)?;
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let report_path = out_dir.join("report.json");
    let samples_path = out_dir.join("samples.csv");
    let manifest_path = out_dir.join("manifest.json");
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    fs::write(&report_path, json).map_err(io_err(&report_path))?;
    write_samples_csv(&samples_path, &report.result)?;
    let manifest = RunManifest {
        config: cfg.clone(),
        tool_version: report.tool_version.clone(),
        started_at,
        finished_at: now(),
        output_paths: vec![report_path, samples_path, manifest_path.clone()],
    };
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    fs::write(&manifest_path, json).map_err(io_err(&manifest_path))?;
    Ok(report)
}

/// Per-replicate raw values. Headers by mode:
/// counting `replicate,count,normalized`; variance growth `n,replicate,count`;
/// hard edge `t,replicate,count`; soft edge `replicate,lambda_max,scaled`.
pub fn write_samples_csv(path: &Path, result: &ExperimentResult) -> Result<(), CliError> {
    let mut w = csv_writer(path)?;
    match result {
        ExperimentResult::Counting(s) => {
            w.write_record(["replicate", "count", "normalized"])?;
            for (i, (c, z)) in s.counts.iter().zip(&s.normalized_samples).enumerate() {
                w.write_record([i.to_string(), c.to_string(), fmt_f64(*z)])?;
            }
        }
        ExperimentResult::VarianceGrowth(s) => {
            w.write_record(["n", "replicate", "count"])?;
            for pt in &s.points {
                for (i, c) in pt.counts.iter().enumerate() {
                    w.write_record([pt.n.to_string(), i.to_string(), c.to_string()])?;
                }
            }
        }
        ExperimentResult::HardEdge(s) => {
            w.write_record(["t", "replicate", "count"])?;
            for row in &s.rows {
                for (i, c) in row.counts.iter().enumerate() {
                    w.write_record([fmt_f64(row.t), i.to_string(), c.to_string()])?;
                }
            }
        }
        ExperimentResult::SoftEdge(s) => {
            w.write_record(["replicate", "lambda_max", "scaled"])?;
            for (i, (x, z)) in s.raw_max.iter().zip(&s.scaled_samples).enumerate() {
                w.write_record([i.to_string(), fmt_f64(*x), fmt_f64(*z)])?;
            }
        }
    }
    w.flush().map_err(io_err(path))?;
    Ok(())
}
