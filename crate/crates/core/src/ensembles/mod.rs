//! Seeded samplers: Haar-invariant projections, the sum `P + θQ`, and the
//! equivalent Jacobi model `M = (A*A + B*B)⁻¹ A*A`.

mod field;
mod matrix;
mod sampling;
mod seed;

pub use field::Field;
pub use matrix::{eigen_residual, self_adjoint_eigenvalues, SquareMatrix};
pub use sampling::{
    jacobi_spectrum_from_gaussian, sample_gaussian_span_projection, sample_jacobi_spectrum,
    sample_sum_matrix, sample_sum_matrix_with, QMode,
};
pub use seed::SeedSpec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnsembleError {
    #[error("invalid ensemble parameters: {0}")]
    InvalidParams(String),
    #[error("rank {rank} out of range for dimension {n}")]
    RankOutOfRange { n: usize, rank: usize },
    #[error("degenerate Gaussian draw persisted after one resample")]
    Degenerate,
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("eigensolver failed to converge")]
    EigenFailure,
}

/// Field index: 1 for real symmetric, 2 for complex Hermitian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Beta {
    Real,
    Complex,
}

impl Beta {
    pub fn index(self) -> u8 {
        match self {
            Beta::Real => 1,
            Beta::Complex => 2,
        }
    }
}

impl TryFrom<u8> for Beta {
    type Error = EnsembleError;

    fn try_from(b: u8) -> Result<Self, Self::Error> {
        match b {
            1 => Ok(Beta::Real),
            2 => Ok(Beta::Complex),
            other => Err(EnsembleError::InvalidParams(format!(
                "beta must be 1 or 2, got {other}"
            ))),
        }
    }
}

impl From<Beta> for u8 {
    fn from(b: Beta) -> u8 {
        b.index()
    }
}

impl std::fmt::Display for Beta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Dimension, ranks, scalar and field of `P + θQ`.
///
/// Ranks are stored with `p ≤ q`; if the caller passed them the other way
/// round they are swapped and `swapped` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleParams {
    n: usize,
    p_rank: usize,
    q_rank: usize,
    theta: f64,
    beta: Beta,
    swapped: bool,
    allow_rank_excess: bool,
}

impl EnsembleParams {
    /// Requires `p + q ≤ N`.
    pub fn new(n: usize, p: usize, q: usize, theta: f64, beta: Beta) -> Result<Self, EnsembleError> {
        Self::build(n, p, q, theta, beta, false)
    }

    /// Like [`new`](Self::new) but permits `p + q > N`, in which case
    /// `p + q - N` eigenvalues sit at `1 + θ`.
    pub fn with_rank_excess(
        n: usize,
        p: usize,
        q: usize,
        theta: f64,
        beta: Beta,
    ) -> Result<Self, EnsembleError> {
        Self::build(n, p, q, theta, beta, true)
    }

    fn build(
        n: usize,
        p: usize,
        q: usize,
        theta: f64,
        beta: Beta,
        allow_rank_excess: bool,
    ) -> Result<Self, EnsembleError> {
        if n == 0 {
            return Err(EnsembleError::InvalidParams("N must be positive".into()));
        }
        for rank in [p, q] {
            if rank == 0 || rank > n {
                return Err(EnsembleError::RankOutOfRange { n, rank });
            }
        }
        if !theta.is_finite() || theta == 0.0 {
            return Err(EnsembleError::InvalidParams(format!(
                "theta must be finite and nonzero, got {theta}"
            )));
        }
        if p + q > n && !allow_rank_excess {
            return Err(EnsembleError::InvalidParams(format!(
                "p + q = {} exceeds N = {n}",
                p + q
            )));
        }
        let swapped = p > q;
        let (p_rank, q_rank) = if swapped { (q, p) } else { (p, q) };
        Ok(EnsembleParams {
            n,
            p_rank,
            q_rank,
            theta,
            beta,
            swapped,
            allow_rank_excess,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p_rank(&self) -> usize {
        self.p_rank
    }

    pub fn q_rank(&self) -> usize {
        self.q_rank
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }

    pub fn swapped(&self) -> bool {
        self.swapped
    }

    pub fn allows_rank_excess(&self) -> bool {
        self.allow_rank_excess
    }

    /// Multiplicity of the eigenvalue θ: `q - p`.
    pub fn a(&self) -> usize {
        self.q_rank - self.p_rank
    }

    /// `N - p - q`; negative only when rank excess is allowed.
    pub fn b(&self) -> i64 {
        self.n as i64 - self.p_rank as i64 - self.q_rank as i64
    }

    /// Jacobi weight exponents of the ensemble on `[0, 1]`.
    pub fn jacobi_exponents(&self) -> (f64, f64) {
        let (a, b) = (self.a() as f64, self.b() as f64);
        match self.beta {
            Beta::Complex => (a, b),
            Beta::Real => ((a - 1.0) / 2.0, (b - 1.0) / 2.0),
        }
    }
}
