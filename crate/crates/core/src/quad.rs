//! Gauss–Legendre rules and the adaptive bisection integrator shared by the
//! special-function and density modules.

use std::sync::OnceLock;

/// Points per panel of the adaptive rule.
pub const PANEL_POINTS: usize = 15;

/// Hard bisection depth limit.
pub const MAX_DEPTH: u32 = 40;

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// ascending in the node.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "a quadrature rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_POINTS))
}

/// Fixed panel estimate of `∫_lo^hi f`.
pub fn panel<F: Fn(f64) -> f64 + ?Sized>(f: &F, lo: f64, hi: f64) -> f64 {
    let (x, w) = panel_rule();
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    x.iter()
        .zip(w)
        .map(|(&xi, &wi)| wi * f(mid + half * xi))
        .sum::<f64>()
        * half
}

/// Bisection failed to reach the requested tolerance within [`MAX_DEPTH`]
/// levels on the sub-interval reported here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonConvergence {
    pub lo: f64,
    pub hi: f64,
}

/// Adaptive Gauss–Legendre quadrature by interval bisection.
///
/// A panel is accepted when the two-half estimate differs from the whole-panel
/// estimate by less than its share of `tol`.
pub fn adaptive<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64, NonConvergence> {
    if lo == hi {
        return Ok(0.0);
    }
    let whole = panel(f, lo, hi);
    recurse(f, lo, hi, whole, tol.max(f64::MIN_POSITIVE), 0)
}

fn recurse<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    lo: f64,
    hi: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, NonConvergence> {
    let mid = 0.5 * (lo + hi);
    let left = panel(f, lo, mid);
    let right = panel(f, mid, hi);
    let refined = left + right;
    // below ~1e-15 relative the comparison only measures rounding noise
    if (refined - whole).abs() <= tol.max(1e-15 * refined.abs()) {
        return Ok(refined);
    }
    if depth >= MAX_DEPTH {
        return Err(NonConvergence { lo, hi });
    }
    Ok(recurse(f, lo, mid, left, 0.5 * tol, depth + 1)?
        + recurse(f, mid, hi, right, 0.5 * tol, depth + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(PANEL_POINTS);
        // degree 2n-1 = 29 is exact
        let sum: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(28)).sum();
        assert!((sum - 2.0 / 29.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn adaptive_handles_oscillation() {
        let v = adaptive(&|x: f64| (20.0 * x).sin(), 0.0, 3.0, 1e-12).unwrap();
        let exact = (1.0 - (60.0f64).cos()) / 20.0;
        assert!((v - exact).abs() < 1e-11);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(adaptive(&|_| 1.0, 2.0, 2.0, 1e-9).unwrap(), 0.0);
    }
}
