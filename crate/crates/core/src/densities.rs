//! Limiting spectral shapes of `P + Q` and of the Jacobi ensemble with
//! exponents growing proportionally to the number of points, plus the
//! quadrature used to integrate them.

use std::f64::consts::PI;
use std::sync::Arc;

use thiserror::Error;

use crate::quad;
use crate::spectra::Interval;

/// Default absolute tolerance of [`integrate`].
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DensityError {
    #[error("fractional ranks must lie in (0, 1), got p = {p}, q = {q}")]
    InvalidRanks { p: f64, q: f64 },
    #[error("Jacobi growth rates must be finite and nonnegative, got s = {s}, t = {t}")]
    InvalidRates { s: f64, t: f64 },
    #[error("density has a pole at x = {0}")]
    Pole(f64),
    #[error("quadrature failed to converge on [{lo}, {hi}]")]
    Quadrature { lo: f64, hi: f64 },
}

impl From<quad::NonConvergence> for DensityError {
    fn from(e: quad::NonConvergence) -> Self {
        DensityError::Quadrature { lo: e.lo, hi: e.hi }
    }
}

/// Limiting fractional ranks `p = lim p_N/N ≤ q = lim q_N/N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitParams {
    p: f64,
    q: f64,
}

impl LimitParams {
    /// Ranks given as `p > q` are swapped.
    pub fn new(p: f64, q: f64) -> Result<Self, DensityError> {
        let inside = |x: f64| x > 0.0 && x < 1.0;
        if !inside(p) || !inside(q) {
            return Err(DensityError::InvalidRanks { p, q });
        }
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        let lp = LimitParams { p, q };
        let (a, b, c) = (lp.a(), lp.b(), lp.c());
        assert!(
            (c - (1.0 + a * a - b * b) / 2.0).abs() <= 1e-14,
            "c identity violated at p = {p}, q = {q}"
        );
        Ok(lp)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn a(&self) -> f64 {
        self.q - self.p
    }

    pub fn b(&self) -> f64 {
        1.0 - self.p - self.q
    }

    pub fn c(&self) -> f64 {
        self.p * (1.0 - self.q) + self.q * (1.0 - self.p)
    }

    /// `μ = √(q(1−p)) + √(p(1−q))`; the top of the spectrum sits at `1 + μ`.
    pub fn mu(&self) -> f64 {
        (self.q * (1.0 - self.p)).sqrt() + (self.p * (1.0 - self.q)).sqrt()
    }
}

/// Continuous support, density and atoms of a limiting measure.
#[derive(Clone)]
pub struct LimitShape {
    pub intervals: Vec<Interval>,
    pub atoms: Vec<(f64, f64)>,
    density: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for LimitShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LimitShape")
            .field("intervals", &self.intervals)
            .field("atoms", &self.atoms)
            .finish_non_exhaustive()
    }
}

impl LimitShape {
    /// The limit of the spectral measure of `P + Q`.
    pub fn sum(lp: LimitParams) -> Self {
        let (i1, i2) = support_sum(lp);
        LimitShape {
            intervals: vec![i2, i1],
            atoms: atoms_sum(lp),
            density: Arc::new(move |x| limit_density_sum(lp, x).unwrap_or(0.0)),
        }
    }

    /// The limiting level density of the Jacobi ensemble.
    pub fn jacobi(s: f64, t: f64) -> Result<Self, DensityError> {
        let iv = support_jacobi(s, t)?;
        Ok(LimitShape {
            intervals: vec![iv],
            atoms: Vec::new(),
            density: Arc::new(move |x| limit_density_jacobi(s, t, x).unwrap_or(0.0)),
        })
    }

    /// Density at `x`, 0 off the support and at poles.
    pub fn density(&self, x: f64) -> f64 {
        if self.intervals.iter().any(|iv| iv.contains(x)) {
            (self.density)(x)
        } else {
            0.0
        }
    }

    /// Continuous mass plus atom weights.
    pub fn total_mass(&self, tol: f64) -> Result<f64, DensityError> {
        let mut m: f64 = self.atoms.iter().map(|&(_, w)| w).sum();
        for iv in &self.intervals {
            m += integrate(|x| (self.density)(x), iv, tol)?;
        }
        Ok(m)
    }

    /// Limiting mass of `iv`, atoms included.
    pub fn mass_in(&self, iv: &Interval, tol: f64) -> Result<f64, DensityError> {
        let mut m: f64 = self
            .atoms
            .iter()
            .filter(|(x, _)| iv.contains(*x))
            .map(|&(_, w)| w)
            .sum();
        for s in &self.intervals {
            let lo = s.lo.max(iv.lo);
            let hi = s.hi.min(iv.hi);
            if lo < hi {
                m += integrate(|x| (self.density)(x), &Interval::closed(lo, hi).unwrap(), tol)?;
            }
        }
        Ok(m)
    }
}

/// `(I₁, I₂) = (1 + I, 1 − I)` with
/// `I = [|√(q(1−p)) − √(p(1−q))|, √(q(1−p)) + √(p(1−q))]`.
pub fn support_sum(lp: LimitParams) -> (Interval, Interval) {
    let r1 = (lp.q * (1.0 - lp.p)).sqrt();
    let r2 = (lp.p * (1.0 - lp.q)).sqrt();
    let (lo, hi) = ((r1 - r2).abs(), r1 + r2);
    (
        Interval::closed(1.0 + lo, 1.0 + hi).unwrap(),
        Interval::closed(1.0 - hi, 1.0 - lo).unwrap(),
    )
}

/// `ρ(x) = |√(−a² + 2c(x−1)² − (x−1)⁴) / (π x (x−1)(x−2))|` on the support,
/// 0 elsewhere. The raw expression changes sign at 1; the modulus is the
/// density.
pub fn limit_density_sum(lp: LimitParams, x: f64) -> Result<f64, DensityError> {
    if x == 0.0 || x == 1.0 || x == 2.0 {
        return Err(DensityError::Pole(x));
    }
    let (i1, i2) = support_sum(lp);
    if !i1.contains(x) && !i2.contains(x) {
        return Ok(0.0);
    }
    let (a, c) = (lp.a(), lp.c());
    let u2 = (x - 1.0) * (x - 1.0);
    let rad = (-a * a + 2.0 * c * u2 - u2 * u2).max(0.0);
    Ok((rad.sqrt() / (PI * x * (x - 1.0) * (x - 2.0))).abs())
}

/// Atoms `(1, |a|)`, `(0, b)` if `b > 0`, `(2, −b)` if `b < 0`.
pub fn atoms_sum(lp: LimitParams) -> Vec<(f64, f64)> {
    let (a, b) = (lp.a(), lp.b());
    let mut out = Vec::new();
    if a != 0.0 {
        out.push((1.0, a.abs()));
    }
    if b > 0.0 {
        out.push((0.0, b));
    } else if b < 0.0 {
        out.push((2.0, -b));
    }
    out
}

fn check_rates(s: f64, t: f64) -> Result<(), DensityError> {
    if s >= 0.0 && t >= 0.0 && s.is_finite() && t.is_finite() {
        Ok(())
    } else {
        Err(DensityError::InvalidRates { s, t })
    }
}

/// `(a, c, d)` of the Jacobi limit with `d = 2√((1+s)(1+t)(1+s+t)) / (2+s+t)²`.
fn jacobi_constants(s: f64, t: f64) -> (f64, f64, f64) {
    let k = 2.0 + t + s;
    let a = s / k;
    let c = 0.5 * (1.0 + (s * s - t * t) / (k * k));
    let d = 2.0 * ((1.0 + s) * (1.0 + t) * (1.0 + s + t)).sqrt() / (k * k);
    (a, c, d)
}

/// Support `[c − d, c + d]` of the Jacobi limit density.
pub fn support_jacobi(s: f64, t: f64) -> Result<Interval, DensityError> {
    check_rates(s, t)?;
    let (_, c, d) = jacobi_constants(s, t);
    Ok(Interval::closed((c - d).max(0.0), (c + d).min(1.0)).unwrap())
}

/// `ρ(x) = |(2+s+t)/(2π) · √(−a² + 2cx − x²) / (x(x−1))|` on the support.
pub fn limit_density_jacobi(s: f64, t: f64, x: f64) -> Result<f64, DensityError> {
    check_rates(s, t)?;
    if x == 0.0 || x == 1.0 {
        return Err(DensityError::Pole(x));
    }
    let iv = support_jacobi(s, t)?;
    if !iv.contains(x) {
        return Ok(0.0);
    }
    let (a, c, _) = jacobi_constants(s, t);
    let rad = (-a * a + 2.0 * c * x - x * x).max(0.0);
    Ok(((2.0 + t + s) / (2.0 * PI) * rad.sqrt() / (x * (x - 1.0))).abs())
}

/// Upper edge `(1 − cos(φ + γ))/2` with `cos φ = (t−s)/(2+s+t)` and
/// `cos γ = (t+s)/(2+s+t)`.
pub fn johnstone_edge(s: f64, t: f64) -> f64 {
    let k = 2.0 + t + s;
    let phi = ((t - s) / k).acos();
    let gamma = ((t + s) / k).acos();
    (1.0 - (phi + gamma).cos()) / 2.0
}

/// Adaptive Gauss–Legendre integral of `f` over `iv`.
///
/// Each half of the interval is mapped by `x = endpoint ± u²`, which
/// removes inverse-square-root singularities at the ends.
pub fn integrate<F: Fn(f64) -> f64>(f: F, iv: &Interval, tol: f64) -> Result<f64, DensityError> {
    let (lo, hi) = (iv.lo, iv.hi);
    if hi <= lo {
        return Ok(0.0);
    }
    let half = 0.5 * (hi - lo);
    let w = half.sqrt();
    let left = quad::adaptive(&|u: f64| 2.0 * u * f(lo + u * u), 0.0, w, 0.5 * tol)?;
    let right = quad::adaptive(&|u: f64| 2.0 * u * f(hi - u * u), 0.0, w, 0.5 * tol)?;
    Ok(left + right)
}
