use rayon::prelude::*;

use super::ks::{ks_distance, ks_lattice_normal, moments, normal_cdf};
use super::*;
use crate::densities::{LimitParams, LimitShape, DEFAULT_TOL};
use crate::ensembles::{sample_jacobi_spectrum, Beta, SeedSpec};
use crate::specfun::{
    bessel_count_at_jacobi_scale, hard_edge_count_complex, hard_edge_count_real, tw_reference,
};
use crate::spectra::{count_in_interval, predicted_spectrum};

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

fn replicates<T, F>(n: usize, f: F) -> Result<Vec<T>, StatsError>
where
    T: Send,
    F: Fn(u64) -> Result<T, StatsError> + Sync + Send,
{
    (0..n as u64).into_par_iter().map(f).collect()
}

fn require_replicates(cfg: &ExperimentConfig, min: usize) -> Result<(), StatsError> {
    if cfg.replicates < min {
        return Err(StatsError::InvalidConfig(format!(
            "replicates = {} but at least {min} are needed",
            cfg.replicates
        )));
    }
    Ok(())
}

fn check_counting_interval(iv: &Interval) -> Result<(), StatsError> {
    if iv.lo >= iv.hi {
        return Err(StatsError::Degenerate(format!(
            "interval {iv} has zero length, counts are identically 0"
        )));
    }
    let inside = |lo: f64, hi: f64| {
        iv.lo >= lo && iv.hi <= hi && !iv.contains(lo) && !iv.contains(hi)
    };
    if inside(0.0, 1.0) || inside(1.0, 2.0) {
        Ok(())
    } else {
        Err(StatsError::IntervalHitsAtom(*iv))
    }
}

/// Counts in `iv` of the spectrum assembled from Jacobi-path samples.
fn sample_counts(
    params: &EnsembleParams,
    iv: &Interval,
    reps: usize,
    seed_of: impl Fn(u64) -> SeedSpec + Sync + Send,
) -> Result<Vec<u32>, StatsError> {
    replicates(reps, |i| {
        let t = sample_jacobi_spectrum(params, seed_of(i))?;
        let spec = predicted_spectrum(&t, params)?;
        Ok(count_in_interval(&spec, iv) as u32)
    })
}

fn interval_of(cfg: &ExperimentConfig) -> Result<Interval, StatsError> {
    cfg.interval
        .ok_or_else(|| StatsError::InvalidConfig("an interval is required".into()))
}

fn limit_params(params: &EnsembleParams) -> Result<LimitParams, StatsError> {
    let n = params.n() as f64;
    Ok(LimitParams::new(params.p_rank() as f64 / n, params.q_rank() as f64 / n)?)
}

pub fn run_counting(cfg: &ExperimentConfig) -> Result<CountingSummary, StatsError> {
    let iv = interval_of(cfg)?;
    check_counting_interval(&iv)?;
    require_replicates(cfg, 2)?;
    let params = cfg.params;
    let counts = sample_counts(&params, &iv, cfg.replicates, |i| {
        SeedSpec::replicate(cfg.master_seed, i)
    })?;
    let xs: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let (mean, var, _) = moments(&xs);
    if !(var > 0.0) {
        return Err(StatsError::Degenerate("counts have zero variance".into()));
    }
    let sd = var.sqrt();
    let normalized: Vec<f64> = xs.iter().map(|x| (x - mean) / sd).collect();
    let ks_vs_normal = ks_distance(&normalized, normal_cdf)?;
    let ks_lattice = ks_lattice_normal(&xs, mean, sd)?;
    let shape = LimitShape::sum(limit_params(&params)?);
    let limit_mean = params.n() as f64 * shape.mass_in(&iv, DEFAULT_TOL)?;
    Ok(CountingSummary {
        counts,
        mean_count: mean,
        var_count: var,
        standard_error: sd / (xs.len() as f64).sqrt(),
        limit_mean,
        normalized_samples: normalized,
        ks_vs_normal,
        ks_lattice,
    })
}

pub fn run_variance_growth(cfg: &ExperimentConfig) -> Result<VarianceGrowthSummary, StatsError> {
    if cfg.n_ladder.len() < 4 {
        return Err(StatsError::InvalidConfig(format!(
            "variance growth needs at least 4 ladder points, got {}",
            cfg.n_ladder.len()
        )));
    }
    let iv = interval_of(cfg)?;
    if iv.lo >= iv.hi {
        return Err(StatsError::Degenerate(format!("interval {iv} has zero length")));
    }
    require_replicates(cfg, 2)?;
    let base = cfg.params;
    let (fp, fq) = (
        base.p_rank() as f64 / base.n() as f64,
        base.q_rank() as f64 / base.n() as f64,
    );
    let mut points = Vec::with_capacity(cfg.n_ladder.len());
    for (k, &n) in cfg.n_ladder.iter().enumerate() {
        let p = (fp * n as f64).round() as usize;
        let q = (fq * n as f64).round() as usize;
        let params = EnsembleParams::new(n, p, q, base.theta(), base.beta())?;
        let counts = sample_counts(&params, &iv, cfg.replicates, |i| {
            SeedSpec::new(cfg.master_seed, ((k as u64) << 32) | i)
        })?;
        let xs: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
        let (mean, var, _) = moments(&xs);
        points.push(LadderPoint {
            n,
            p,
            q,
            mean_count: mean,
            var_count: var,
            counts,
        });
    }
    let xs: Vec<f64> = points.iter().map(|pt| (pt.n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|pt| pt.var_count).collect();
    let (slope, intercept) = least_squares(&xs, &ys);
    Ok(VarianceGrowthSummary {
        points,
        slope,
        intercept,
        reference_slope: std::f64::consts::PI.powi(-2),
    })
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Mean number of Jacobi points in `[0, t²/(2p²)]`, equivalently of
/// eigenvalues of `P + Q` in `[1, 1 + t/(√2 p)]`, for each `t` in the grid.
pub fn run_hard_edge(cfg: &ExperimentConfig) -> Result<HardEdgeSummary, StatsError> {
    let params = cfg.params;
    if params.theta() != 1.0 {
        return Err(StatsError::InvalidConfig(format!(
            "the hard edge at 1 is defined for theta = 1, got {}",
            params.theta()
        )));
    }
    if cfg.t_grid.is_empty() || cfg.t_grid.iter().any(|&t| !(t >= 0.0) || !t.is_finite()) {
        return Err(StatsError::InvalidConfig(
            "t_grid must be a nonempty list of nonnegative numbers".into(),
        ));
    }
    if params.b() < 0 {
        return Err(StatsError::InvalidConfig("hard edge needs p + q <= N".into()));
    }
    require_replicates(cfg, 2)?;
    let a = params.a() as u32;
    let b = params.b() as u32;
    let p = params.p_rank() as f64;
    let thresholds: Vec<f64> = cfg.t_grid.iter().map(|t| t * t / (2.0 * p * p)).collect();
    let per_rep: Vec<Vec<u32>> = replicates(cfg.replicates, |i| {
        let pts = sample_jacobi_spectrum(&params, SeedSpec::replicate(cfg.master_seed, i))?;
        Ok(thresholds
            .iter()
            .map(|&tau| pts.iter().filter(|&&x| x <= tau).count() as u32)
            .collect())
    })?;
    let mut rows = Vec::with_capacity(cfg.t_grid.len());
    for (j, (&t, &tau)) in cfg.t_grid.iter().zip(&thresholds).enumerate() {
        let counts: Vec<u32> = per_rep.iter().map(|r| r[j]).collect();
        let xs: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
        let (mean, var, _) = moments(&xs);
        let (theory, rescaled) = match params.beta() {
            Beta::Complex => (
                hard_edge_count_complex(a, t)?,
                Some(bessel_count_at_jacobi_scale(a, t)?),
            ),
            Beta::Real => (hard_edge_count_real(a, t)?, None),
        };
        rows.push(HardEdgeRow {
            t,
            threshold: tau,
            empirical_mean: mean,
            standard_error: (var / xs.len() as f64).sqrt(),
            theory,
            rescaled_theory: rescaled,
            counts,
        });
    }
    Ok(HardEdgeSummary { a, b, rows })
}

/// Largest eigenvalue of `P + Q` against the Tracy–Widom law.
pub fn run_soft_edge(cfg: &ExperimentConfig) -> Result<EdgeSummary, StatsError> {
    let params = cfg.params;
    if params.b() <= 0 {
        return Err(StatsError::InvalidConfig(
            "the soft edge needs p + q < N strictly".into(),
        ));
    }
    if params.theta() != 1.0 {
        return Err(StatsError::InvalidConfig(format!(
            "the soft-edge experiment is defined for theta = 1, got {}",
            params.theta()
        )));
    }
    require_replicates(cfg, 2)?;
    let tw = tw_reference(params.beta().index())?;
    let raw_max: Vec<f64> = replicates(cfg.replicates, |i| {
        let pts = sample_jacobi_spectrum(&params, SeedSpec::replicate(cfg.master_seed, i))?;
        let spec = predicted_spectrum(&pts, &params)?;
        spec.max_continuous()
            .ok_or_else(|| StatsError::Degenerate("empty continuous spectrum".into()))
    })?;
    let center = 1.0 + limit_params(&params)?.mu();
    let (mean, var, skewness) = moments(&raw_max);
    if !(var > 0.0) {
        return Err(StatsError::Degenerate("largest eigenvalue has zero variance".into()));
    }
    let n23 = (params.n() as f64).powf(2.0 / 3.0);
    let sd = var.sqrt();
    let scale_fitted = sd * n23 / tw.sd();
    let scaled: Vec<f64> = raw_max
        .iter()
        .map(|x| (x - mean) / sd * tw.sd() + tw.mean)
        .collect();
    let ks_vs_tw = ks_distance(&scaled, |x| tw.cdf(x))?;
    Ok(EdgeSummary {
        raw_max,
        center,
        sample_mean: mean,
        scale_fitted,
        scaled_mean_offset: n23 * (mean - center) / scale_fitted,
        skewness,
        scaled_samples: scaled,
        ks_vs_tw,
    })
}

/// Runs the configured mode and evaluates its assertions.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, StatsError> {
    let result = match cfg.mode {
        Mode::Counting => ExperimentResult::Counting(run_counting(cfg)?),
        Mode::VarianceGrowth => ExperimentResult::VarianceGrowth(run_variance_growth(cfg)?),
        Mode::HardEdge => ExperimentResult::HardEdge(run_hard_edge(cfg)?),
        Mode::SoftEdge => ExperimentResult::SoftEdge(run_soft_edge(cfg)?),
    };
    let checks = if cfg.replicates >= MIN_REPLICATES_FOR_CHECKS {
        checks_for(cfg, &result)
    } else {
        log::warn!(
            "{} replicates is below {MIN_REPLICATES_FOR_CHECKS}; no assertions evaluated",
            cfg.replicates
        );
        Vec::new()
    };
    Ok(ExperimentReport {
        tool_version: TOOL_VERSION.to_string(),
        config: cfg.clone(),
        result,
        checks,
    })
}

fn checks_for(cfg: &ExperimentConfig, result: &ExperimentResult) -> Vec<Check> {
    let mut out = Vec::new();
    match result {
        ExperimentResult::Counting(s) => {
            out.push(Check::within("ks_vs_normal", s.ks_vs_normal, None, Some(0.05)));
            out.push(Check::within(
                "mean_minus_limit_in_se",
                (s.mean_count - s.limit_mean) / s.standard_error,
                Some(-3.0),
                Some(3.0),
            ));
        }
        ExperimentResult::VarianceGrowth(s) => {
            if cfg.params.beta() == Beta::Complex {
                out.push(Check::within(
                    "slope_over_reference",
                    s.slope / s.reference_slope,
                    Some(0.7),
                    Some(1.3),
                ));
            }
        }
        ExperimentResult::HardEdge(s) => {
            for row in &s.rows {
                let dev = (row.empirical_mean - row.theory).abs();
                out.push(Check::within(
                    format!("t={}: |empirical - theory| - 3se", row.t),
                    dev - 3.0 * row.standard_error,
                    None,
                    Some(0.0),
                ));
            }
        }
        ExperimentResult::SoftEdge(s) => {
            let bound = match cfg.params.beta() {
                Beta::Complex => 0.08,
                Beta::Real => 0.10,
            };
            out.push(Check::within("ks_vs_tw", s.ks_vs_tw, None, Some(bound)));
            let slack = 5.0 * (cfg.params.n() as f64).powf(-2.0 / 3.0);
            out.push(Check::within(
                "sample_mean",
                s.sample_mean,
                Some(s.center - slack),
                Some(s.center + slack),
            ));
            out.push(Check::within("skewness", s.skewness, None, Some(0.0)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> EnsembleParams {
        EnsembleParams::new(32, 8, 8, 1.0, Beta::Complex).unwrap()
    }

    #[test]
    fn counting_rejects_bad_intervals() {
        let base = ExperimentConfig::new(Mode::Counting, params(), 10, 1);
        let cfg = base.clone().with_interval(Interval::open(0.9, 1.1).unwrap());
        assert!(matches!(run_counting(&cfg), Err(StatsError::IntervalHitsAtom(_))));
        let cfg = base.clone().with_interval(Interval::closed(1.3, 1.3).unwrap());
        assert!(matches!(run_counting(&cfg), Err(StatsError::Degenerate(_))));
        let cfg = base.with_interval(Interval::closed(1.0, 1.5).unwrap());
        assert!(run_counting(&cfg).is_err());
    }

    #[test]
    fn ladder_needs_four_points() {
        let cfg = ExperimentConfig::new(Mode::VarianceGrowth, params(), 10, 1)
            .with_interval(Interval::open(1.2, 1.7).unwrap())
            .with_ladder(vec![64]);
        assert!(matches!(run_variance_growth(&cfg), Err(StatsError::InvalidConfig(_))));
    }

    #[test]
    fn hard_edge_at_zero() {
        let cfg = ExperimentConfig::new(Mode::HardEdge, params(), 20, 3).with_t_grid(vec![0.0]);
        let s = run_hard_edge(&cfg).unwrap();
        assert_eq!(s.rows[0].empirical_mean, 0.0);
        assert_eq!(s.rows[0].theory, 0.0);
    }

    #[test]
    fn edge_modes_check_theta() {
        let p = EnsembleParams::new(32, 8, 8, 2.0, Beta::Complex).unwrap();
        let cfg = ExperimentConfig::new(Mode::HardEdge, p, 20, 3).with_t_grid(vec![1.0]);
        assert!(run_hard_edge(&cfg).is_err());
        let p = EnsembleParams::new(32, 16, 16, 1.0, Beta::Complex).unwrap();
        assert!(run_soft_edge(&ExperimentConfig::new(Mode::SoftEdge, p, 20, 3)).is_err());
    }

    #[test]
    fn fit_is_exact_on_a_line() {
        let (m, c) = least_squares(&[1.0, 2.0, 3.0, 4.0], &[3.0, 5.0, 7.0, 9.0]);
        assert!((m - 2.0).abs() < 1e-14 && (c - 1.0).abs() < 1e-14);
    }
}
