//! Monte Carlo experiments: counting statistics and their CLT, growth of the
//! counting variance, the hard edge at 1 and the soft upper edge.

mod experiments;
mod ks;

pub use experiments::{
    run_counting, run_experiment, run_hard_edge, run_soft_edge, run_variance_growth,
};
pub use ks::{ks_distance, ks_lattice_normal, ks_two_sample, moments, normal_cdf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::densities::DensityError;
use crate::ensembles::{EnsembleError, EnsembleParams};
use crate::specfun::SpecfunError;
use crate::spectra::{Interval, SpectraError};

/// Replicate count below which no distributional check is evaluated.
pub const MIN_REPLICATES_FOR_CHECKS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("interval must avoid {{0,1,2}} and lie inside (0,1) or (1,2), got {0}")]
    IntervalHitsAtom(Interval),
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
    #[error("degenerate statistic: {0}")]
    Degenerate(String),
    #[error("empty sample")]
    EmptySample,
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Density(#[from] DensityError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Counting,
    VarianceGrowth,
    HardEdge,
    SoftEdge,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Counting => "counting",
            Mode::VarianceGrowth => "variance_growth",
            Mode::HardEdge => "hard_edge",
            Mode::SoftEdge => "soft_edge",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = StatsError;

    /// Accepts `hard_edge` and `hard-edge` alike.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "counting" => Ok(Mode::Counting),
            "variance_growth" => Ok(Mode::VarianceGrowth),
            "hard_edge" => Ok(Mode::HardEdge),
            "soft_edge" => Ok(Mode::SoftEdge),
            _ => Err(StatsError::InvalidConfig(format!("unknown mode {s:?}"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A fully resolved experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub params: EnsembleParams,
    pub interval: Option<Interval>,
    pub replicates: usize,
    pub master_seed: u64,
    /// Hard-edge scale points `t`.
    #[serde(default)]
    pub t_grid: Vec<f64>,
    /// Dimensions for variance growth; ranks scale as `p/N`, `q/N`.
    #[serde(default)]
    pub n_ladder: Vec<usize>,
}

impl ExperimentConfig {
    pub fn new(mode: Mode, params: EnsembleParams, replicates: usize, master_seed: u64) -> Self {
        ExperimentConfig {
            mode,
            params,
            interval: None,
            replicates,
            master_seed,
            t_grid: Vec::new(),
            n_ladder: Vec::new(),
        }
    }

    pub fn with_interval(mut self, iv: Interval) -> Self {
        self.interval = Some(iv);
        self
    }

    pub fn with_t_grid(mut self, t: Vec<f64>) -> Self {
        self.t_grid = t;
        self
    }

    pub fn with_ladder(mut self, ladder: Vec<usize>) -> Self {
        self.n_ladder = ladder;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingSummary {
    pub counts: Vec<u32>,
    pub mean_count: f64,
    pub var_count: f64,
    pub standard_error: f64,
    /// `N` times the limiting mass of the interval.
    pub limit_mean: f64,
    pub normalized_samples: Vec<f64>,
    /// KS of the normalised counts against `Φ`.
    pub ks_vs_normal: f64,
    /// KS of the counts against the continuity-corrected normal lattice law.
    pub ks_lattice: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderPoint {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub mean_count: f64,
    pub var_count: f64,
    pub counts: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceGrowthSummary {
    pub points: Vec<LadderPoint>,
    /// Least-squares slope of the variance against `ln N`.
    pub slope: f64,
    pub intercept: f64,
    /// `π⁻²`.
    pub reference_slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardEdgeRow {
    pub t: f64,
    /// Jacobi points at or below this value are counted.
    pub threshold: f64,
    pub empirical_mean: f64,
    pub standard_error: f64,
    pub theory: f64,
    /// `∫₀ᵗ x f_a(√2 x) dx`, the Bessel count at the scale where the
    /// Jacobi kernel converges (β = 2 only).
    pub rescaled_theory: Option<f64>,
    pub counts: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardEdgeSummary {
    pub a: u32,
    pub b: u32,
    pub rows: Vec<HardEdgeRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeSummary {
    /// Largest non-atom eigenvalue per replicate.
    pub raw_max: Vec<f64>,
    /// `1 + μ`.
    pub center: f64,
    pub sample_mean: f64,
    /// `σ̂` with `Var λ(1) = σ̂² N^{-4/3} Var(TW)`.
    pub scale_fitted: f64,
    /// `N^{2/3} (mean − center) / σ̂`, to compare with the TW mean.
    pub scaled_mean_offset: f64,
    pub skewness: f64,
    /// Samples standardised to the TW mean and variance.
    pub scaled_samples: Vec<f64>,
    pub ks_vs_tw: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentResult {
    Counting(CountingSummary),
    VarianceGrowth(VarianceGrowthSummary),
    HardEdge(HardEdgeSummary),
    SoftEdge(EdgeSummary),
}

/// One configured assertion of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub passed: bool,
}

impl Check {
    pub fn within(name: impl Into<String>, value: f64, lo: Option<f64>, hi: Option<f64>) -> Self {
        let passed = lo.is_none_or(|l| value >= l) && hi.is_none_or(|h| value <= h);
        Check {
            name: name.into(),
            value,
            lo,
            hi,
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub tool_version: String,
    pub config: ExperimentConfig,
    pub result: ExperimentResult,
    pub checks: Vec<Check>,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}
