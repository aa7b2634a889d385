use rand::Rng;
use rand_distr::StandardNormal;

use projsum::ensembles::{Beta, EnsembleParams, SeedSpec};
use projsum::spectra::Interval;
use projsum::stats::*;

fn params(n: usize, p: usize, q: usize, beta: Beta) -> EnsembleParams {
    EnsembleParams::new(n, p, q, 1.0, beta).unwrap()
}

#[test]
fn ks_of_seeded_normal_sample() {
    let mut rng = SeedSpec::new(61, 0).rng();
    let xs: Vec<f64> = (0..10_000).map(|_| rng.sample(StandardNormal)).collect();
    let d = ks_distance(&xs, normal_cdf).unwrap();
    assert!(d <= 0.02, "{d}");
    let quantiles: Vec<f64> = (1..=100).map(|i| (i as f64 - 0.5) / 100.0).collect();
    assert!(ks_distance(&quantiles, |x| x.clamp(0.0, 1.0)).unwrap() <= 0.005 + 1e-12);
    assert!(ks_distance(&[1.0; 10], normal_cdf).unwrap() >= 0.5);
    assert!(matches!(ks_distance(&[], normal_cdf), Err(StatsError::EmptySample)));
}

#[test]
fn counting_rejects_bad_intervals() {
    let pr = params(64, 16, 16, Beta::Complex);
    let run = |iv: Interval| run_counting(&ExperimentConfig::new(Mode::Counting, pr, 200, 1).with_interval(iv));
    assert!(matches!(run(Interval::closed(1.3, 1.3).unwrap()), Err(StatsError::Degenerate(_))));
    let e = run(Interval::open(0.9, 1.1).unwrap()).unwrap_err();
    assert!(e.to_string().contains("interval must avoid {0,1,2}"), "{e}");
    assert!(run(Interval::closed(1.5, 2.0).unwrap()).is_err());
    assert!(run(Interval::open(1.5, 2.0).unwrap()).is_ok());
}

#[test]
fn counting_summary_invariants_and_limit_mean() {
    let cfg = ExperimentConfig::new(Mode::Counting, params(256, 64, 64, Beta::Complex), 2000, 62)
        .with_interval(Interval::open(1.2, 1.7).unwrap());
    let s = run_counting(&cfg).unwrap();
    assert_eq!(s.normalized_samples.len(), 2000);
    assert!(s.var_count >= 0.0);
    let z = (s.mean_count - s.limit_mean) / s.standard_error;
    println!("N=256 counting: mean {:.4}, limit {:.4}, z = {z:.2}", s.mean_count, s.limit_mean);
    assert!(z.abs() <= 3.0);
    let (m, v, _) = moments(&s.normalized_samples);
    assert!(m.abs() < 1e-12 && (v - 1.0).abs() < 1e-12);
}

#[test]
fn variance_growth_preconditions_and_atom_interval() {
    let base = params(64, 8, 16, Beta::Complex);
    let atom = Interval::closed(1.0 - 1e-6, 1.0 + 1e-6).unwrap();
    let cfg = ExperimentConfig::new(Mode::VarianceGrowth, base, 200, 63)
        .with_interval(atom)
        .with_ladder(vec![64]);
    assert!(run_variance_growth(&cfg).is_err());
    let cfg = cfg.with_ladder(vec![32, 64, 128, 256]);
    let s = run_variance_growth(&cfg).unwrap();
    assert_eq!(s.points.len(), 4);
    assert!(s.slope.abs() <= 1e-12, "{}", s.slope);
}

#[test]
fn hard_edge_at_zero_is_zero() {
    let cfg = ExperimentConfig::new(Mode::HardEdge, params(64, 32, 32, Beta::Complex), 200, 64).with_t_grid(vec![0.0]);
    let s = run_hard_edge(&cfg).unwrap();
    assert_eq!(s.rows[0].empirical_mean, 0.0);
    assert_eq!(s.rows[0].theory, 0.0);
    let theta2 = EnsembleParams::new(64, 32, 32, 2.0, Beta::Complex).unwrap();
    let cfg = ExperimentConfig::new(Mode::HardEdge, theta2, 200, 64).with_t_grid(vec![0.5]);
    assert!(run_hard_edge(&cfg).is_err());
}

#[test]
fn counts_near_one_fall_short_of_naive_density_estimate() {
    let (n, p) = (256usize, 128usize);
    let t = 0.3;
    let cfg = ExperimentConfig::new(Mode::HardEdge, params(n, p, p, Beta::Complex), 4000, 65).with_t_grid(vec![t]);
    let s = run_hard_edge(&cfg).unwrap();
    // arcsine density at 1 is 1/π; the window has width t/(√2 p)
    let naive = n as f64 * t / (2f64.sqrt() * p as f64) / std::f64::consts::PI;
    let emp = s.rows[0].empirical_mean;
    println!("t=0.3: empirical {emp:.4}, naive density estimate {naive:.4}");
    assert!(emp < naive && emp <= 0.5 * naive);
}

#[test]
fn half_seed_runs_pool_to_the_full_run() {
    let pr = params(64, 32, 32, Beta::Complex);
    let mean = |reps: usize, seed: u64| {
        let cfg = ExperimentConfig::new(Mode::HardEdge, pr, reps, seed).with_t_grid(vec![1.0]);
        let row = &run_hard_edge(&cfg).unwrap().rows[0];
        (row.empirical_mean, row.standard_error)
    };
    let (full, se) = mean(4000, 66);
    let (a, _) = mean(2000, 67);
    let (b, _) = mean(2000, 68);
    let pooled = 0.5 * (a + b);
    assert!((pooled - full).abs() <= 2.0 * se * 2f64.sqrt(), "{pooled} vs {full} (se {se})");
}

#[test]
fn soft_edge_preconditions_and_center() {
    let full = EnsembleParams::new(64, 32, 32, 1.0, Beta::Complex).unwrap();
    assert!(run_soft_edge(&ExperimentConfig::new(Mode::SoftEdge, full, 200, 69)).is_err());
    let n = 256;
    let cfg = ExperimentConfig::new(Mode::SoftEdge, params(n, 64, 64, Beta::Complex), 400, 69);
    let s = run_soft_edge(&cfg).unwrap();
    assert!((s.center - (1.0 + 3f64.sqrt() / 2.0)).abs() < 1e-12);
    assert!(s.scale_fitted > 0.0);
    assert_eq!(s.scaled_samples.len(), 400);
    assert!((s.sample_mean - s.center).abs() <= 5.0 * (n as f64).powf(-2.0 / 3.0));
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let cfg = ExperimentConfig::new(Mode::Counting, params(96, 24, 24, Beta::Real), 300, 70)
        .with_interval(Interval::open(0.3, 0.8).unwrap());
    let json = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let report = pool.install(|| run_experiment(&cfg)).unwrap();
        serde_json::to_string(&report).unwrap()
    };
    let one = json(1);
    assert_eq!(one, json(3));
    assert_eq!(one, json(1));
}

#[test]
fn checks_only_appear_with_enough_replicates() {
    let cfg = ExperimentConfig::new(Mode::Counting, params(64, 16, 16, Beta::Complex), 50, 71)
        .with_interval(Interval::open(1.2, 1.7).unwrap());
    let r = run_experiment(&cfg).unwrap();
    assert!(r.checks.is_empty());
    assert!(r.passed());
}
