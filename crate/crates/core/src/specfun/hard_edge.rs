//! Bessel-type limits of the Jacobi ensemble at the hard edge `x = 0`, which
//! is where the eigenvalues of `P + Q` near 1 come from.

use super::{bessel_j, gamma_fn, BesselOrder, SpecfunError};
use crate::quad;

/// Internal tolerance of the counting integrals; the exposed contract is 1e-9
/// (complex) and 1e-8 (real).
const COUNT_TOL: f64 = 1e-11;

fn j(nu: f64, x: f64) -> f64 {
    bessel_j(BesselOrder::new(nu).expect("orders used here are >= -1"), x)
        .expect("x > 0 inside quadrature panels")
}

/// `J_ν(x)² − J_{ν+1}(x) J_{ν−1}(x)`.
fn bessel_pair(nu: f64, x: f64) -> f64 {
    let jn = j(nu, x);
    jn * jn - j(nu + 1.0, x) * j(nu - 1.0, x)
}

/// `½ (J_a(t)² − J_{a+1}(t) J_{a−1}(t))`; `J_{-1} = −J_1` at `a = 0`.
pub fn bessel_kernel_diag_complex(a: u32, t: f64) -> Result<f64, SpecfunError> {
    if !(t >= 0.0) {
        return Err(SpecfunError::Domain { function: "bessel_kernel_diag_complex", value: t });
    }
    let a = a as i64;
    let ja = bessel_j(BesselOrder::integer(a), t)?;
    let up = bessel_j(BesselOrder::integer(a + 1), t)?;
    let down = bessel_j(BesselOrder::integer(a - 1), t)?;
    Ok(0.5 * (ja * ja - up * down))
}

/// `∫_0^t x (J_a(x)² − J_{a+1}(x) J_{a−1}(x)) dx`.
pub fn hard_edge_count_complex(a: u32, t: f64) -> Result<f64, SpecfunError> {
    if !(t >= 0.0) {
        return Err(SpecfunError::Domain { function: "hard_edge_count_complex", value: t });
    }
    let nu = a as f64;
    Ok(quad::adaptive(&|x: f64| x * bessel_pair(nu, x), 0.0, t, COUNT_TOL)?)
}

/// Expected number of points of the `n`-point Hermitian Jacobi ensemble in
/// `[0, t²/(2n²)]` as `n → ∞`, i.e. the Bessel kernel integrated at that
/// scale: `∫_0^t x (J_a(√2 x)² − J_{a+1}(√2 x) J_{a−1}(√2 x)) dx`.
///
/// Agrees with [`hard_edge_count_complex`] to leading order `t²/2` at `a = 0`
/// and differs beyond it.
pub fn bessel_count_at_jacobi_scale(a: u32, t: f64) -> Result<f64, SpecfunError> {
    if !(t >= 0.0) {
        return Err(SpecfunError::Domain { function: "bessel_count_at_jacobi_scale", value: t });
    }
    let nu = a as f64;
    let r2 = std::f64::consts::SQRT_2;
    Ok(quad::adaptive(&|x: f64| x * bessel_pair(nu, r2 * x), 0.0, t, COUNT_TOL)?)
}

/// The two integrals making up the real-symmetric hard-edge count, with
/// `ν = (a+1)/2`:
/// `bulk = ∫_0^t x (J_ν² − J_{ν+1} J_{ν−1}) dx` and
/// `boundary = ∫_0^t J_ν(x) (1 − ∫_0^x J_ν(u) du) dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardEdgeRealTerms {
    pub bulk: f64,
    pub boundary: f64,
}

impl HardEdgeRealTerms {
    /// `bulk + boundary`, the count used throughout the crate.
    pub fn count(&self) -> f64 {
        self.bulk + self.boundary
    }

    /// `bulk − boundary`: the alternative sign of the second integral. It goes
    /// negative for small `t`.
    pub fn count_with_flipped_boundary(&self) -> f64 {
        self.bulk - self.boundary
    }
}

/// `∫_0^x J_ν(u) du = x ∫_0^1 2r J_ν(x r²) dr` on a fixed composite
/// Gauss–Legendre grid, so the result is a smooth function of `x`.
fn running_integral(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let panels = 4 + (x / 4.0).ceil() as usize;
    let width = 1.0 / panels as f64;
    let f = |r: f64| 2.0 * r * j(nu, x * r * r);
    (0..panels)
        .map(|k| quad::panel(&f, k as f64 * width, (k + 1) as f64 * width))
        .sum::<f64>()
        * x
}

pub fn hard_edge_real_terms(a: u32, t: f64) -> Result<HardEdgeRealTerms, SpecfunError> {
    if !(t >= 0.0) {
        return Err(SpecfunError::Domain { function: "hard_edge_count_real", value: t });
    }
    let nu = 0.5 * (a as f64 + 1.0);
    // x = r² removes the √x behaviour of J_{1/2} at the origin.
    let bulk = quad::adaptive(
        &|r: f64| {
            let x = r * r;
            2.0 * r * x * bessel_pair(nu, x)
        },
        0.0,
        t.sqrt(),
        COUNT_TOL,
    )?;
    let boundary = quad::adaptive(
        &|r: f64| {
            let x = r * r;
            2.0 * r * j(nu, x) * (1.0 - running_integral(nu, x))
        },
        0.0,
        t.sqrt(),
        COUNT_TOL,
    )?;
    Ok(HardEdgeRealTerms { bulk, boundary })
}

/// Real-symmetric counterpart of [`hard_edge_count_complex`]:
/// `bulk + boundary` from [`hard_edge_real_terms`].
pub fn hard_edge_count_real(a: u32, t: f64) -> Result<f64, SpecfunError> {
    Ok(hard_edge_real_terms(a, t)?.count())
}

/// Small-`t` coefficient `C` in `hard_edge_count_real(a, t) = C t^{(a+3)/2} + …`,
/// from `J_ν(x) ≈ (x/2)^ν / Γ(ν+1)` in the boundary integral:
/// `C = 2 / ((a+3) 2^{(a+1)/2} Γ((a+3)/2))`.
pub fn hard_edge_real_leading_coefficient(a: u32) -> f64 {
    let af = a as f64;
    2.0 / ((af + 3.0) * 2f64.powf(0.5 * (af + 1.0)) * gamma_fn(0.5 * (af + 3.0)).expect("positive"))
}
