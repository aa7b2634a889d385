//! The acceptance checks. Each returns an [`Outcome`] carrying a verdict and
//! the measured numbers; the `acceptance` test target and `projsum selftest`
//! both run them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::densities::{
    integrate, johnstone_edge, support_jacobi, LimitParams, LimitShape, DEFAULT_TOL,
};
use crate::ensembles::{
    sample_jacobi_spectrum, sample_sum_matrix, self_adjoint_eigenvalues, Beta, EnsembleParams,
    SeedSpec,
};
use crate::specfun::{
    bessel_kernel_diag_complex, tw_reference, CdKernel, JacobiParams,
};
use crate::spectra::{inverse_map, map_jacobi_to_sum, predicted_spectrum, Interval, Spectrum};
use crate::stats::{
    ks_two_sample, run_counting, run_experiment, run_hard_edge, run_soft_edge,
    run_variance_growth, ExperimentConfig, HardEdgeSummary, Mode, StatsError,
};

/// Verdict and diagnostics of one criterion.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl Outcome {
    fn new(id: u8, title: &'static str) -> Self {
        Outcome {
            id,
            title,
            passed: true,
            details: Vec::new(),
        }
    }

    /// Records a sub-check; any failing sub-check fails the criterion.
    fn check(&mut self, ok: bool, msg: String) {
        self.passed &= ok;
        let tag = if ok { "ok" } else { "FAIL" };
        self.details.push(format!("[{tag}] {msg}"));
    }

    fn note(&mut self, msg: String) {
        self.details.push(format!("[note] {msg}"));
    }

    fn error(id: u8, title: &'static str, e: impl std::fmt::Display) -> Self {
        Outcome {
            id,
            title,
            passed: false,
            details: vec![format!("[FAIL] error: {e}")],
        }
    }

    /// `criterion N: PASS|FAIL  title`.
    pub fn headline(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("criterion {:>2}: {verdict}  {}", self.id, self.title)
    }
}

type Check = fn() -> Outcome;

/// All criteria in order, with their titles.
pub const CRITERIA: &[(u8, &str, Check)] = &[
    (1, "eigenvalue multiplicities of P+Q", criterion_1),
    (2, "direct vs Jacobi path, pooled two-sample KS", criterion_2),
    (3, "map round trip and pairing", criterion_3),
    (4, "kernel normalization and hard-edge scaling limit", criterion_4),
    (5, "complex hard-edge counts", criterion_5),
    (6, "hard-edge b-universality and a-dependence", criterion_6),
    (7, "real hard-edge counts and t-exponent", criterion_7),
    (8, "counting CLT", criterion_8),
    (9, "counting variance growth", criterion_9),
    (10, "soft edge vs Tracy-Widom", criterion_10),
    (11, "density mass and eigenvalue histogram", criterion_11),
    (12, "Johnstone edge identity", criterion_12),
    (13, "determinism", criterion_13),
];

pub fn run(id: u8) -> Option<Outcome> {
    CRITERIA.iter().find(|c| c.0 == id).map(|c| (c.2)())
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(|c| (c.2)()).collect()
}

fn params(n: usize, p: usize, q: usize, theta: f64, beta: Beta) -> EnsembleParams {
    EnsembleParams::new(n, p, q, theta, beta).expect("criterion parameters are valid")
}

pub fn criterion_1() -> Outcome {
    const TITLE: &str = "eigenvalue multiplicities of P+Q";
    let mut out = Outcome::new(1, TITLE);
    for beta in [Beta::Complex, Beta::Real] {
        let pr = params(64, 16, 24, 1.0, beta);
        let mut bad = 0;
        for i in 0..500 {
            let m = match sample_sum_matrix(&pr, SeedSpec::new(101, i)) {
                Ok(m) => m,
                Err(e) => return Outcome::error(1, TITLE, e),
            };
            let ev = match self_adjoint_eigenvalues(&m) {
                Ok(ev) => ev,
                Err(e) => return Outcome::error(1, TITLE, e),
            };
            let at_one = ev.iter().filter(|x| (*x - 1.0).abs() < 1e-8).count();
            let at_zero = ev.iter().filter(|x| x.abs() < 1e-8).count();
            if at_one != 8 || at_zero != 24 {
                bad += 1;
            }
        }
        out.check(
            bad == 0,
            format!("beta={beta}: {bad} of 500 draws without exactly 8 at 1 and 24 at 0"),
        );
    }
    out
}

fn direct_continuous(pr: &EnsembleParams, seed: SeedSpec) -> Result<Vec<f64>, StatsError> {
    let ev = self_adjoint_eigenvalues(&sample_sum_matrix(pr, seed)?)?;
    Ok(Spectrum::from_eigenvalues(&ev, pr).continuous_eigenvalues)
}

fn jacobi_continuous(pr: &EnsembleParams, seed: SeedSpec) -> Result<Vec<f64>, StatsError> {
    let t = sample_jacobi_spectrum(pr, seed)?;
    Ok(predicted_spectrum(&t, pr)?.continuous_eigenvalues)
}

/// Pooled two-sample KS between the continuous spectra of both paths.
pub fn path_agreement(pr: &EnsembleParams, seeds: u64, master: u64) -> Result<f64, StatsError> {
    let mut direct = Vec::new();
    let mut jacobi = Vec::new();
    for i in 0..seeds {
        direct.extend(direct_continuous(pr, SeedSpec::new(master, i))?);
        jacobi.extend(jacobi_continuous(pr, SeedSpec::new(master + 1, i))?);
    }
    ks_two_sample(&direct, &jacobi)
}

pub fn criterion_2() -> Outcome {
    const TITLE: &str = "direct vs Jacobi path, pooled two-sample KS";
    let mut out = Outcome::new(2, TITLE);
    match path_agreement(&params(64, 16, 24, 1.0, Beta::Complex), 2000, 202) {
        Ok(d) => out.check(d <= 0.03, format!("KS = {d:.5} (bound 0.03)")),
        Err(e) => return Outcome::error(2, TITLE, e),
    }
    out
}

pub fn criterion_3() -> Outcome {
    let mut out = Outcome::new(3, "map round trip and pairing");
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let thetas = [1.0, 2.0, 0.5, -0.5];
    let mut worst = 0.0f64;
    let mut pair_exact = true;
    for k in 0..10_000 {
        let t: f64 = rng.random();
        let theta = thetas[k % 4];
        let (lo, hi) = map_jacobi_to_sum(t, theta).expect("t in [0,1]");
        for lam in [lo, hi] {
            match inverse_map(lam, theta) {
                Ok(back) => worst = worst.max((back - t).abs()),
                Err(_) => worst = f64::INFINITY,
            }
        }
        if theta == 1.0 && lo + hi != 2.0 {
            pair_exact = false;
        }
    }
    out.check(worst <= 1e-12, format!("max |inverse(map(t)) - t| = {worst:.3e} (bound 1e-12)"));
    out.check(pair_exact, "theta=1: lambda- + lambda+ == 2 exactly".into());
    out
}

pub fn criterion_4() -> Outcome {
    const TITLE: &str = "kernel normalization and hard-edge scaling limit";
    let mut out = Outcome::new(4, TITLE);
    let unit = Interval::closed(0.0, 1.0).unwrap();
    for (n, a, b) in [(5usize, 0.0, 0.0), (10, 2.0, 3.0), (20, 1.0, 0.0)] {
        let k = CdKernel::new(JacobiParams::new(n, a, b).unwrap());
        match integrate(|x| k.diag(x).unwrap_or(f64::NAN), &unit, 1e-10) {
            Ok(m) => out.check(
                (m - n as f64).abs() <= 1e-6,
                format!("(n,a,b)=({n},{a},{b}): integral of K(x,x) = {m:.10}"),
            ),
            Err(e) => return Outcome::error(4, TITLE, e),
        }
    }
    let n = 200usize;
    let mut worst = 0.0f64;
    let mut worst_rescaled = 0.0f64;
    for a in [0u32, 1, 2] {
        for b in [0.0, 1.0] {
            let k = CdKernel::new(JacobiParams::new(n, a as f64, b).unwrap());
            for t in [0.5, 1.0, 2.0] {
                let x = t * t / (2.0 * (n * n) as f64);
                let scaled = k.diag(x).unwrap() / (2.0 * (n * n) as f64);
                let limit = bessel_kernel_diag_complex(a, t).unwrap();
                let rescaled = bessel_kernel_diag_complex(a, std::f64::consts::SQRT_2 * t).unwrap();
                worst = worst.max((scaled - limit).abs());
                worst_rescaled = worst_rescaled.max((scaled - rescaled).abs());
            }
        }
    }
    out.check(
        worst <= 0.02,
        format!("n=200 max |K(t^2/2n^2)/(2n^2) - f_a(t)| = {worst:.5} (bound 0.02)"),
    );
    out.note(format!(
        "same kernel against f_a(sqrt(2) t): max deviation {worst_rescaled:.5}"
    ));
    out
}

fn hard_edge(pr: EnsembleParams, t_grid: Vec<f64>, reps: usize, seed: u64) -> Result<HardEdgeSummary, StatsError> {
    let cfg = ExperimentConfig::new(Mode::HardEdge, pr, reps, seed).with_t_grid(t_grid);
    run_hard_edge(&cfg)
}

pub fn criterion_5() -> Outcome {
    const TITLE: &str = "complex hard-edge counts";
    let mut out = Outcome::new(5, TITLE);
    let s = match hard_edge(params(256, 128, 128, 1.0, Beta::Complex), vec![0.3, 0.6, 1.0], 20_000, 505) {
        Ok(s) => s,
        Err(e) => return Outcome::error(5, TITLE, e),
    };
    for r in &s.rows {
        let dev = (r.empirical_mean - r.theory).abs();
        out.check(
            dev <= 3.0 * r.standard_error,
            format!(
                "t={}: empirical {:.5} +- {:.5}, theory {:.5}, |diff| = {:.2} se",
                r.t,
                r.empirical_mean,
                r.standard_error,
                r.theory,
                dev / r.standard_error
            ),
        );
        if let Some(alt) = r.rescaled_theory {
            out.note(format!(
                "t={}: Bessel count at the sqrt(2)-rescaled argument {:.5}, |diff| = {:.2} se",
                r.t,
                alt,
                (r.empirical_mean - alt).abs() / r.standard_error
            ));
        }
    }
    let r = &s.rows[0];
    let lead = r.t * r.t / 2.0;
    out.check(
        r.empirical_mean >= 0.8 * lead && r.empirical_mean <= 1.2 * lead,
        format!("t=0.3: empirical / (t^2/2) = {:.4} (bounds 0.8, 1.2)", r.empirical_mean / lead),
    );
    out
}

pub fn criterion_6() -> Outcome {
    const TITLE: &str = "hard-edge b-universality and a-dependence";
    let mut out = Outcome::new(6, TITLE);
    let reps = 10_000;
    let runs = [
        ("a=0,b=0", params(256, 128, 128, 1.0, Beta::Complex)),
        ("a=0,b=5", params(261, 128, 128, 1.0, Beta::Complex)),
        ("a=2,b=0", params(256, 127, 129, 1.0, Beta::Complex)),
    ];
    let mut rows = Vec::new();
    for (k, (label, pr)) in runs.iter().enumerate() {
        match hard_edge(*pr, vec![1.0], reps, 606 + k as u64) {
            Ok(s) => {
                let r = s.rows[0].clone();
                out.note(format!(
                    "{label}: mean count at t=1 {:.5} +- {:.5}",
                    r.empirical_mean, r.standard_error
                ));
                rows.push(r);
            }
            Err(e) => return Outcome::error(6, TITLE, e),
        }
    }
    let pooled = |i: usize, j: usize| (rows[i].standard_error.powi(2) + rows[j].standard_error.powi(2)).sqrt();
    let d_b = (rows[0].empirical_mean - rows[1].empirical_mean).abs();
    out.check(
        d_b <= 3.0 * pooled(0, 1),
        format!("b=0 vs b=5: |diff| = {:.2} pooled se (bound 3)", d_b / pooled(0, 1)),
    );
    let d_a = rows[0].empirical_mean - rows[2].empirical_mean;
    out.check(
        d_a > 3.0 * pooled(0, 2),
        format!("a=0 minus a=2: {:.2} pooled se (must exceed 3)", d_a / pooled(0, 2)),
    );
    out
}

pub fn criterion_7() -> Outcome {
    const TITLE: &str = "real hard-edge counts and t-exponent";
    let mut out = Outcome::new(7, TITLE);
    let s = match hard_edge(params(256, 128, 128, 1.0, Beta::Real), vec![0.2, 0.4, 0.5, 1.0], 20_000, 707) {
        Ok(s) => s,
        Err(e) => return Outcome::error(7, TITLE, e),
    };
    for r in s.rows.iter().filter(|r| r.t == 0.5 || r.t == 1.0) {
        let dev = (r.empirical_mean - r.theory).abs();
        out.check(
            dev <= 3.0 * r.standard_error,
            format!(
                "t={}: empirical {:.5} +- {:.5}, theory {:.5}, |diff| = {:.2} se",
                r.t,
                r.empirical_mean,
                r.standard_error,
                r.theory,
                dev / r.standard_error
            ),
        );
    }
    let ratio = s.rows[1].empirical_mean / s.rows[0].empirical_mean;
    let target = 2f64.powf(1.5);
    out.check(
        ratio >= 0.8 * target && ratio <= 1.2 * target,
        format!(
            "empirical(0.4)/empirical(0.2) = {ratio:.4}, bounds [{:.4}, {:.4}]",
            0.8 * target,
            1.2 * target
        ),
    );
    out.note(format!("fitted exponent log2(ratio) = {:.3}", ratio.log2()));
    out
}

fn counting_config(n: usize, reps: usize, seed: u64) -> ExperimentConfig {
    ExperimentConfig::new(Mode::Counting, params(n, n / 4, n / 4, 1.0, Beta::Complex), reps, seed)
        .with_interval(Interval::open(1.2, 1.7).unwrap())
}

pub fn criterion_8() -> Outcome {
    const TITLE: &str = "counting CLT";
    let mut out = Outcome::new(8, TITLE);
    let cfg = ExperimentConfig::new(Mode::Counting, params(512, 128, 128, 1.0, Beta::Complex), 4000, 808)
        .with_interval(Interval::open(1.2, 1.7).unwrap());
    match run_counting(&cfg) {
        Ok(s) => {
            out.check(
                s.ks_vs_normal <= 0.05,
                format!("KS(normalized counts, Phi) = {:.4} (bound 0.05)", s.ks_vs_normal),
            );
            out.note(format!(
                "counts: mean {:.4}, var {:.4}, N x limit mass {:.4}; continuity-corrected lattice KS {:.4}",
                s.mean_count, s.var_count, s.limit_mean, s.ks_lattice
            ));
        }
        Err(e) => return Outcome::error(8, TITLE, e),
    }
    out
}

pub fn criterion_9() -> Outcome {
    const TITLE: &str = "counting variance growth";
    let mut out = Outcome::new(9, TITLE);
    let cfg = counting_config(128, 4000, 909).with_ladder(vec![128, 256, 512, 1024]);
    match run_variance_growth(&cfg) {
        Ok(s) => {
            for pt in &s.points {
                out.note(format!("N={}: var {:.4}", pt.n, pt.var_count));
            }
            let r = s.slope / s.reference_slope;
            out.check(
                (0.7..=1.3).contains(&r),
                format!("slope = {:.4} = {r:.3} x pi^-2 (bounds 0.7, 1.3)", s.slope),
            );
        }
        Err(e) => return Outcome::error(9, TITLE, e),
    }
    out
}

/// Skewness of a tabulated law, from its quantile function.
fn table_skewness(beta: u8) -> f64 {
    let tw = tw_reference(beta).expect("beta 1 or 2");
    let m = 200_000;
    let xs: Vec<f64> = (0..m).map(|i| tw.quantile((i as f64 + 0.5) / m as f64)).collect();
    crate::stats::moments(&xs).2
}

pub fn criterion_10() -> Outcome {
    const TITLE: &str = "soft edge vs Tracy-Widom";
    let mut out = Outcome::new(10, TITLE);
    for (beta, bound) in [(Beta::Complex, 0.08), (Beta::Real, 0.10)] {
        let cfg = ExperimentConfig::new(Mode::SoftEdge, params(512, 128, 128, 1.0, beta), 4000, 1010);
        let s = match run_soft_edge(&cfg) {
            Ok(s) => s,
            Err(e) => return Outcome::error(10, TITLE, e),
        };
        let slack = 5.0 * 512f64.powf(-2.0 / 3.0);
        out.check(
            (s.sample_mean - s.center).abs() <= slack,
            format!(
                "beta={beta}: mean lambda(1) = {:.5}, 1+mu = {:.5}, slack {:.5}",
                s.sample_mean, s.center, slack
            ),
        );
        out.check(
            s.ks_vs_tw <= bound,
            format!("beta={beta}: KS vs TW table = {:.4} (bound {bound})", s.ks_vs_tw),
        );
        if beta == Beta::Complex {
            out.check(s.skewness < 0.0, format!("beta=2: sample skewness {:.4} (must be < 0)", s.skewness));
        }
        out.note(format!(
            "beta={beta}: sample skewness {:.4}, skewness of the TW table {:.4}, fitted sigma {:.4}",
            s.skewness,
            table_skewness(beta.index()),
            s.scale_fitted
        ));
    }
    out
}

pub fn criterion_11() -> Outcome {
    const TITLE: &str = "density mass and eigenvalue histogram";
    let mut out = Outcome::new(11, TITLE);
    for (p, q) in [(0.5, 0.5), (0.3, 0.5), (0.25, 0.25), (0.4, 0.7)] {
        let shape = LimitShape::sum(LimitParams::new(p, q).unwrap());
        match shape.total_mass(1e-10) {
            Ok(m) => out.check((m - 1.0).abs() <= 1e-6, format!("(p,q)=({p},{q}): mass {m:.10}")),
            Err(e) => return Outcome::error(11, TITLE, e),
        }
    }
    let (n, seeds) = (256usize, 4000u64);
    let pr = params(n, 64, 64, 1.0, Beta::Complex);
    let width = 0.05;
    let bins = 40;
    let mut hist = vec![0u64; bins];
    for i in 0..seeds {
        let ev = match sample_sum_matrix(&pr, SeedSpec::new(1111, i)).and_then(|m| self_adjoint_eigenvalues(&m)) {
            Ok(ev) => ev,
            Err(e) => return Outcome::error(11, TITLE, e),
        };
        for x in ev {
            let k = ((x / width).floor().max(0.0) as usize).min(bins - 1);
            hist[k] += 1;
        }
    }
    let total = (n as u64 * seeds) as f64;
    let shape = LimitShape::sum(LimitParams::new(0.25, 0.25).unwrap());
    let mut worst = 0.0f64;
    let mut worst_at = 0.0;
    for (k, &c) in hist.iter().enumerate() {
        let (lo, hi) = (k as f64 * width, (k + 1) as f64 * width);
        if shape.atoms.iter().any(|&(x, _)| x >= lo && x <= hi) {
            continue;
        }
        let iv = Interval::closed(lo, hi).unwrap();
        let expected = match shape.mass_in(&iv, DEFAULT_TOL) {
            Ok(m) => m / width,
            Err(e) => return Outcome::error(11, TITLE, e),
        };
        let dev = (c as f64 / total / width - expected).abs();
        if dev > worst {
            worst = dev;
            worst_at = lo;
        }
    }
    out.check(
        worst <= 0.05,
        format!("{} eigenvalues: max bin error {worst:.4} at [{worst_at:.2}, {:.2}) (bound 0.05)", total, worst_at + width),
    );
    out
}

pub fn criterion_12() -> Outcome {
    let mut out = Outcome::new(12, "Johnstone edge identity");
    let mut rng = ChaCha8Rng::seed_from_u64(1212);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s = 5.0 * rng.random::<f64>();
        let t = 5.0 * rng.random::<f64>();
        let edge = support_jacobi(s, t).expect("valid rates").hi;
        worst = worst.max((johnstone_edge(s, t) - edge).abs());
    }
    out.check(worst <= 1e-12, format!("max |x_J - (c+d)| = {worst:.3e} (bound 1e-12)"));
    out
}

pub fn criterion_13() -> Outcome {
    const TITLE: &str = "determinism";
    let mut out = Outcome::new(13, TITLE);
    let configs = [
        counting_config(128, 300, 1313),
        ExperimentConfig::new(Mode::HardEdge, params(64, 32, 32, 1.0, Beta::Real), 300, 1313)
            .with_t_grid(vec![0.5, 1.0]),
        ExperimentConfig::new(Mode::SoftEdge, params(64, 16, 16, 1.0, Beta::Complex), 300, 1313),
    ];
    for cfg in configs {
        let mut outputs = Vec::new();
        for threads in [1, 3] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let json = pool.install(|| run_experiment(&cfg)).and_then(|r| {
                serde_json::to_string(&r).map_err(|e| StatsError::InvalidConfig(e.to_string()))
            });
            match json {
                Ok(j) => outputs.push(j),
                Err(e) => return Outcome::error(13, TITLE, e),
            }
        }
        outputs.push(serde_json::to_string(&run_experiment(&cfg).unwrap()).unwrap());
        let same = outputs.windows(2).all(|w| w[0] == w[1]);
        out.check(
            same,
            format!("{}: reports identical across 1 thread, 3 threads and a rerun", cfg.mode),
        );
    }
    out
}
