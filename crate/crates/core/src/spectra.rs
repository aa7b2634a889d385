//! The exact correspondence between Jacobi points `t ∈ [0, 1]` and the
//! eigenvalues of `P + θQ`, with bookkeeping of the deterministic atoms.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ensembles::EnsembleParams;

/// Tolerance for classifying a computed eigenvalue as an atom.
pub const ATOM_TOL: f64 = 1e-8;
const INVERSE_SLACK: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("Jacobi point {0} outside [0, 1]")]
    PointOutOfRange(f64),
    #[error("theta must be finite and nonzero, got {0}")]
    BadTheta(f64),
    #[error("eigenvalue {lambda} is not in the image of the map for theta = {theta}")]
    NotInImage { lambda: f64, theta: f64 },
    #[error("expected {expected} Jacobi points, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("p + q exceeds N, so the atom count at 0 would be negative")]
    RankExcess,
    #[error("invalid interval: lo = {lo} > hi = {hi}")]
    InvalidInterval { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, closed_lo: bool, closed_hi: bool) -> Result<Self, SpectraError> {
        if !(lo <= hi) {
            return Err(SpectraError::InvalidInterval { lo, hi });
        }
        Ok(Interval {
            lo,
            hi,
            closed_lo,
            closed_hi,
        })
    }

    /// `[lo, hi]`.
    pub fn closed(lo: f64, hi: f64) -> Result<Self, SpectraError> {
        Self::new(lo, hi, true, true)
    }

    /// `(lo, hi)`.
    pub fn open(lo: f64, hi: f64) -> Result<Self, SpectraError> {
        Self::new(lo, hi, false, false)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.closed_lo { x >= self.lo } else { x > self.lo };
        let below = if self.closed_hi { x <= self.hi } else { x < self.hi };
        above && below
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi && !(self.closed_lo && self.closed_hi)
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let l = if self.closed_lo { '[' } else { '(' };
        let r = if self.closed_hi { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Spectrum of `P + θQ`: the continuous part plus atom counts at 0 and θ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub continuous_eigenvalues: Vec<f64>,
    pub atom_at_zero: usize,
    pub atom_at_theta: usize,
    pub theta: f64,
    pub total_dim: usize,
}

impl Spectrum {
    pub fn empty(theta: f64) -> Self {
        Spectrum {
            continuous_eigenvalues: Vec::new(),
            atom_at_zero: 0,
            atom_at_theta: 0,
            theta,
            total_dim: 0,
        }
    }

    /// Splits a full eigensolve of `P + θQ` into atoms and continuous part
    /// (see [`classify_eigenvalues`]).
    pub fn from_eigenvalues(eigenvalues: &[f64], params: &EnsembleParams) -> Self {
        let mut rest = Vec::new();
        for (x, kind) in classify_eigenvalues(eigenvalues, params) {
            if kind == EigenKind::Continuous {
                rest.push(x);
            }
        }
        Spectrum {
            continuous_eigenvalues: rest,
            atom_at_zero: params.b().max(0) as usize,
            atom_at_theta: params.a(),
            theta: params.theta(),
            total_dim: eigenvalues.len(),
        }
    }

    /// Eigenvalues with their kind, ascending; atoms sit exactly at 0 and θ.
    pub fn labelled(&self) -> Vec<(f64, EigenKind)> {
        let mut v: Vec<(f64, EigenKind)> = self
            .continuous_eigenvalues
            .iter()
            .map(|&x| (x, EigenKind::Continuous))
            .collect();
        v.extend(std::iter::repeat_n((0.0, EigenKind::AtomZero), self.atom_at_zero));
        v.extend(std::iter::repeat_n((self.theta, EigenKind::AtomTheta), self.atom_at_theta));
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        v
    }

    /// Every eigenvalue with multiplicity, ascending.
    pub fn all_values(&self) -> Vec<f64> {
        let mut v = self.continuous_eigenvalues.clone();
        v.extend(std::iter::repeat_n(0.0, self.atom_at_zero));
        v.extend(std::iter::repeat_n(self.theta, self.atom_at_theta));
        v.sort_by(f64::total_cmp);
        v
    }

    /// Largest eigenvalue of the continuous part.
    pub fn max_continuous(&self) -> Option<f64> {
        self.continuous_eigenvalues.last().copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenKind {
    Continuous,
    AtomZero,
    AtomTheta,
}

impl EigenKind {
    pub fn name(self) -> &'static str {
        match self {
            EigenKind::Continuous => "continuous",
            EigenKind::AtomZero => "atom_zero",
            EigenKind::AtomTheta => "atom_theta",
        }
    }
}

/// Labels a full eigensolve of `P + θQ`, ascending.
///
/// Exactly `b` eigenvalues are booked at 0 and `a` at θ, taking those
/// nearest to each location; a warning is logged if that disagrees with
/// the [`ATOM_TOL`] window.
pub fn classify_eigenvalues(eigenvalues: &[f64], params: &EnsembleParams) -> Vec<(f64, EigenKind)> {
    let mut out: Vec<(f64, EigenKind)> = eigenvalues
        .iter()
        .map(|&x| (x, EigenKind::Continuous))
        .collect();
    let targets = [
        (0.0, params.b().max(0) as usize, EigenKind::AtomZero),
        (params.theta(), params.a(), EigenKind::AtomTheta),
    ];
    for (loc, count, kind) in targets {
        let within = out
            .iter()
            .filter(|(x, k)| *k == EigenKind::Continuous && (x - loc).abs() < ATOM_TOL)
            .count();
        if within != count {
            log::warn!(
                "{within} eigenvalues within {ATOM_TOL:e} of {loc}, expected {count}; booking the nearest {count}"
            );
        }
        let mut free: Vec<usize> = (0..out.len())
            .filter(|&i| out[i].1 == EigenKind::Continuous)
            .collect();
        free.sort_by(|&i, &j| (out[i].0 - loc).abs().total_cmp(&(out[j].0 - loc).abs()));
        for &i in free.iter().take(count) {
            out[i].1 = kind;
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn check_theta(theta: f64) -> Result<(), SpectraError> {
    if theta == 0.0 || !theta.is_finite() {
        Err(SpectraError::BadTheta(theta))
    } else {
        Ok(())
    }
}

/// `λ± = ½(1 + θ ± √((1−θ)² + 4θt))`, returned as `(smaller, larger)`.
pub fn map_jacobi_to_sum(t: f64, theta: f64) -> Result<(f64, f64), SpectraError> {
    check_theta(theta)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(SpectraError::PointOutOfRange(t));
    }
    let disc = ((1.0 - theta).powi(2) + 4.0 * theta * t).max(0.0);
    let hi = 0.5 * (1.0 + theta) + 0.5 * disc.sqrt();
    // Taking the partner from the sum makes λ− + λ+ = 1 + θ exact.
    let lo = (1.0 + theta) - hi;
    Ok((lo, hi))
}

/// `t = (λ−1)(λ−θ)/θ`.
pub fn inverse_map(lambda: f64, theta: f64) -> Result<f64, SpectraError> {
    check_theta(theta)?;
    let t = (lambda - 1.0) * (lambda - theta) / theta;
    if !(-INVERSE_SLACK..=1.0 + INVERSE_SLACK).contains(&t) {
        return Err(SpectraError::NotInImage { lambda, theta });
    }
    Ok(t.clamp(0.0, 1.0))
}

/// The spectrum of `P + θQ` implied by its `p` Jacobi points.
pub fn predicted_spectrum(points: &[f64], params: &EnsembleParams) -> Result<Spectrum, SpectraError> {
    if points.len() != params.p_rank() {
        return Err(SpectraError::LengthMismatch {
            expected: params.p_rank(),
            got: points.len(),
        });
    }
    if params.b() < 0 {
        return Err(SpectraError::RankExcess);
    }
    let mut values = Vec::with_capacity(2 * points.len());
    for &t in points {
        let (lo, hi) = map_jacobi_to_sum(t, params.theta())?;
        values.push(lo);
        values.push(hi);
    }
    values.sort_by(f64::total_cmp);
    Ok(Spectrum {
        continuous_eigenvalues: values,
        atom_at_zero: params.b() as usize,
        atom_at_theta: params.a(),
        theta: params.theta(),
        total_dim: params.n(),
    })
}

pub fn count_in_interval(spec: &Spectrum, iv: &Interval) -> usize {
    let mut count = spec
        .continuous_eigenvalues
        .iter()
        .filter(|&&x| iv.contains(x))
        .count();
    if iv.contains(0.0) {
        count += spec.atom_at_zero;
    }
    if iv.contains(spec.theta) {
        count += spec.atom_at_theta;
    }
    count
}
