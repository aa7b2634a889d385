//! Embedded Tracy–Widom reference values.
//!
//! Quantiles were tabulated offline (`scripts/tw_table.py`) from Nyström
//! discretisations of the Airy-kernel Fredholm determinants. The first and
//! last rows pin the far tails so the interpolated CDF stays monotone.

use super::SpecfunError;

/// `(probability, quantile)` pairs, strictly increasing in both.
const TW2_QUANTILES: &[(f64, f64)] = &[
    (1.062254674e-8, -6.0),
    (0.001, -4.29223640),
    (0.0025, -4.08480051),
    (0.005, -3.91281125),
    (0.01, -3.72444595),
    (0.02, -3.51518012),
    (0.03, -3.38046592),
    (0.04, -3.27809921),
    (0.05, -3.19416673),
    (0.1, -2.90135094),
    (0.15, -2.69952366),
    (0.2, -2.53656270),
    (0.25, -2.39489868),
    (0.3, -2.26618204),
    (0.35, -2.14561543),
    (0.4, -2.03003998),
    (0.45, -1.91711778),
    (0.5, -1.80491241),
    (0.55, -1.69162743),
    (0.6, -1.57539738),
    (0.65, -1.45406349),
    (0.7, -1.32485956),
    (0.75, -1.18387290),
    (0.8, -1.02495779),
    (0.85, -0.83714418),
    (0.9, -0.59685130),
    (0.95, -0.23247447),
    (0.96, -0.12447365),
    (0.97, 0.00944779),
    (0.98, 0.18943195),
    (0.99, 0.47763605),
    (0.995, 0.74622708),
    (0.9975, 0.99922654),
    (0.999, 1.31441948),
    (0.99999700596, 3.0),
];

const TW1_QUANTILES: &[(f64, f64)] = &[
    (5.482862622e-9, -7.0),
    (0.001, -4.65419824),
    (0.0025, -4.37773184),
    (0.005, -4.14787650),
    (0.01, -3.89543267),
    (0.02, -3.61405714),
    (0.03, -3.43237699),
    (0.04, -3.29402124),
    (0.05, -3.18037998),
    (0.1, -2.78242791),
    (0.15, -2.50670150),
    (0.2, -2.28316332),
    (0.25, -2.08814834),
    (0.3, -1.91037975),
    (0.35, -1.74335382),
    (0.4, -1.58276453),
    (0.45, -1.42540029),
    (0.5, -1.26857462),
    (0.55, -1.10976697),
    (0.6, -0.94633005),
    (0.65, -0.77516934),
    (0.7, -0.59228719),
    (0.75, -0.39199433),
    (0.8, -0.16531343),
    (0.85, 0.10383803),
    (0.9, 0.45014329),
    (0.95, 0.97931605),
    (0.96, 1.13706130),
    (0.97, 1.33321348),
    (0.98, 1.59775567),
    (0.99, 2.02344928),
    (0.995, 2.42232659),
    (0.9975, 2.79979144),
    (0.999, 3.27219606),
    (0.99997712848, 5.0),
];

/// Reference distribution `F_β` of the rescaled largest eigenvalue.
#[derive(Debug, Clone, Copy)]
pub struct TwReference {
    pub beta: u8,
    pub mean: f64,
    pub variance: f64,
    quantiles: &'static [(f64, f64)],
}

impl TwReference {
    /// `(probability, quantile)` table.
    pub fn quantile_table(&self) -> &'static [(f64, f64)] {
        self.quantiles
    }

    pub fn sd(&self) -> f64 {
        self.variance.sqrt()
    }

    /// Piecewise-linear CDF through the table, clamped to 0 and 1 outside it.
    pub fn cdf(&self, x: f64) -> f64 {
        let q = self.quantiles;
        if x <= q[0].1 {
            return 0.0;
        }
        if x >= q[q.len() - 1].1 {
            return 1.0;
        }
        let i = q.partition_point(|&(_, s)| s <= x);
        let (p0, s0) = q[i - 1];
        let (p1, s1) = q[i];
        p0 + (p1 - p0) * (x - s0) / (s1 - s0)
    }

    /// Inverse of [`TwReference::cdf`] for `p` inside the tabulated range.
    pub fn quantile(&self, p: f64) -> f64 {
        let q = self.quantiles;
        let p = p.clamp(q[0].0, q[q.len() - 1].0);
        let i = q.partition_point(|&(pp, _)| pp <= p).clamp(1, q.len() - 1);
        let (p0, s0) = q[i - 1];
        let (p1, s1) = q[i];
        s0 + (s1 - s0) * (p - p0) / (p1 - p0)
    }
}

pub fn tw_reference(beta: u8) -> Result<TwReference, SpecfunError> {
    match beta {
        2 => Ok(TwReference {
            beta,
            mean: -1.7710868074,
            variance: 0.8131947928,
            quantiles: TW2_QUANTILES,
        }),
        1 => Ok(TwReference {
            beta,
            mean: -1.2065335745,
            variance: 1.6077810345,
            quantiles: TW1_QUANTILES,
        }),
        other => Err(SpecfunError::UnsupportedBeta(other)),
    }
}
