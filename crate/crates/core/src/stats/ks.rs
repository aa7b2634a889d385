use statrs::function::erf::erfc;

use super::StatsError;

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// `sup_x |F_n(x) − F(x)|` for the empirical CDF of `samples`.
pub fn ks_distance<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64, StatsError> {
    if samples.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    let mut i = 0;
    while i < xs.len() {
        // ties form one jump of the empirical CDF
        let mut j = i;
        while j + 1 < xs.len() && xs[j + 1] == xs[i] {
            j += 1;
        }
        let f = cdf(xs[i]);
        d = d.max((f - i as f64 / n).abs()).max(((j + 1) as f64 / n - f).abs());
        i = j + 1;
    }
    Ok(d)
}

/// Two-sample KS distance `sup_x |F_m(x) − G_n(x)|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (m, n) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / m - j as f64 / n).abs());
    }
    Ok(d)
}

/// KS distance between an integer-valued sample and the normal law with the
/// sample's mean and sd, discretised with the continuity correction
/// `P(N ≤ k) ≈ Φ((k + ½ − m)/s)`.
pub fn ks_lattice_normal(counts: &[f64], mean: f64, sd: f64) -> Result<f64, StatsError> {
    if counts.is_empty() {
        return Err(StatsError::EmptySample);
    }
    if !(sd > 0.0) {
        return Err(StatsError::Degenerate("zero variance".into()));
    }
    let lo = counts.iter().cloned().fold(f64::INFINITY, f64::min).floor() as i64;
    let hi = counts.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil() as i64;
    let n = counts.len() as f64;
    let mut d = 0.0f64;
    for k in lo - 1..=hi {
        let emp = counts.iter().filter(|&&c| c <= k as f64).count() as f64 / n;
        let model = normal_cdf((k as f64 + 0.5 - mean) / sd);
        d = d.max((emp - model).abs());
    }
    // mass beyond the observed range
    d = d.max(normal_cdf((lo as f64 - 1.5 - mean) / sd));
    Ok(d)
}

/// Mean, unbiased variance and sample skewness.
pub fn moments(xs: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m3 = xs.iter().map(|x| (x - mean).powi(3)).sum::<f64>() / n;
    let var = if xs.len() > 1 { m2 * n / (n - 1.0) } else { 0.0 };
    let skew = if m2 > 0.0 { m3 / m2.powf(1.5) } else { 0.0 };
    (mean, var, skew)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_sample_is_close() {
        let n = 200;
        // logistic CDF, inverted in closed form
        let cdf = |x: f64| 1.0 / (1.0 + (-x).exp());
        let xs: Vec<f64> = (1..=n)
            .map(|i| {
                let u = (i as f64 - 0.5) / n as f64;
                (u / (1.0 - u)).ln()
            })
            .collect();
        assert!(ks_distance(&xs, cdf).unwrap() <= 0.5 / n as f64 + 1e-12);
    }

    #[test]
    fn point_mass_is_far() {
        assert!(ks_distance(&[0.3; 50], normal_cdf).unwrap() >= 0.5);
        assert!(ks_distance(&[], normal_cdf).is_err());
    }

    #[test]
    fn two_sample_basics() {
        let a = [1.0, 2.0, 3.0];
        assert_eq!(ks_two_sample(&a, &a).unwrap(), 0.0);
        assert_eq!(ks_two_sample(&a, &[10.0, 11.0]).unwrap(), 1.0);
    }

    #[test]
    fn normal_cdf_values() {
        assert!((normal_cdf(0.0) - 0.5).abs() < 1e-16);
        let v = normal_cdf(1.959963984540054);
        assert!((v - 0.975).abs() < 1e-10, "{v}");
    }
}
