//! Special functions: Gamma, Bessel `J_ν` of real order, orthonormal Jacobi
//! polynomials with their Christoffel–Darboux kernel, the hard-edge Bessel
//! limits and the Tracy–Widom reference tables.

mod bessel;
mod hard_edge;
mod jacobi;
mod tracy_widom;

pub use bessel::{bessel_j, gamma_fn, BesselOrder};
pub use hard_edge::{
    bessel_count_at_jacobi_scale, bessel_kernel_diag_complex, hard_edge_count_complex,
    hard_edge_count_real, hard_edge_real_leading_coefficient, hard_edge_real_terms,
    HardEdgeRealTerms,
};
pub use jacobi::{cd_kernel, jacobi_recurrence, CdKernel, JacobiParams, RecurrenceTable};
pub use tracy_widom::{tw_reference, TwReference};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("gamma function has a pole at {0}")]
    Pole(f64),
    #[error("argument {value} outside the domain of {function}")]
    Domain { function: &'static str, value: f64 },
    #[error("invalid Bessel order {0}: must be finite and either an integer or at least -1")]
    InvalidOrder(f64),
    #[error("invalid Jacobi parameters: {0}")]
    InvalidJacobi(String),
    #[error("Tracy–Widom tables exist for beta 1 and 2 only, got {0}")]
    UnsupportedBeta(u8),
    #[error("quadrature failed to converge on [{lo}, {hi}]")]
    Quadrature { lo: f64, hi: f64 },
}

impl From<crate::quad::NonConvergence> for SpecfunError {
    fn from(e: crate::quad::NonConvergence) -> Self {
        SpecfunError::Quadrature { lo: e.lo, hi: e.hi }
    }
}
