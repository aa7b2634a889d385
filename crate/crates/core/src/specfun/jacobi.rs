use super::{gamma_fn, SpecfunError};

/// `n` points under the weight `x^a (1-x)^b` on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    n: usize,
    a_exp: f64,
    b_exp: f64,
}

impl JacobiParams {
    pub fn new(n: usize, a_exp: f64, b_exp: f64) -> Result<Self, SpecfunError> {
        if n == 0 {
            return Err(SpecfunError::InvalidJacobi("n must be positive".into()));
        }
        if !(a_exp > -1.0 && b_exp > -1.0) || !a_exp.is_finite() || !b_exp.is_finite() {
            return Err(SpecfunError::InvalidJacobi(format!(
                "weight exponents ({a_exp}, {b_exp}) must both exceed -1"
            )));
        }
        Ok(JacobiParams { n, a_exp, b_exp })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a_exp(&self) -> f64 {
        self.a_exp
    }

    pub fn b_exp(&self) -> f64 {
        self.b_exp
    }

    /// `w(x) = x^a (1-x)^b`.
    pub fn weight(&self, x: f64) -> f64 {
        x.powf(self.a_exp) * (1.0 - x).powf(self.b_exp)
    }
}

/// Three-term recurrence of the orthonormal polynomials:
/// `offdiag[k] q_{k+1}(x) = (x - diag[k]) q_k(x) - offdiag[k-1] q_{k-1}(x)`,
/// with `q_0 = 1/√norm0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    pub norm0: f64,
}

impl RecurrenceTable {
    /// Orthonormal polynomial values `q_0(x), …, q_{n-1}(x)`.
    pub fn orthonormal_values(&self, x: f64) -> Vec<f64> {
        let n = self.diag.len();
        let mut out = Vec::with_capacity(n);
        let mut prev = 0.0;
        let mut cur = 1.0 / self.norm0.sqrt();
        out.push(cur);
        for k in 0..n - 1 {
            let back = if k == 0 { 0.0 } else { self.offdiag[k - 1] * prev };
            let next = ((x - self.diag[k]) * cur - back) / self.offdiag[k];
            prev = cur;
            cur = next;
            out.push(cur);
        }
        out
    }

    /// `Σ_k q_k(x) q_k(y)` without weight factors.
    pub fn polynomial_sum(&self, x: f64, y: f64) -> f64 {
        let n = self.diag.len();
        let (mut px, mut cx) = (0.0, 1.0 / self.norm0.sqrt());
        let (mut py, mut cy) = (0.0, cx);
        let mut sum = cx * cy;
        for k in 0..n - 1 {
            let e = self.offdiag[k];
            let back = if k == 0 { 0.0 } else { self.offdiag[k - 1] };
            let nx = ((x - self.diag[k]) * cx - back * px) / e;
            let ny = ((y - self.diag[k]) * cy - back * py) / e;
            px = cx;
            cx = nx;
            py = cy;
            cy = ny;
            sum += cx * cy;
        }
        sum
    }
}

/// Recurrence coefficients of the polynomials orthonormal for
/// `x^a (1-x)^b` on `[0, 1]`, from the closed-form Jacobi coefficients on
/// `[-1, 1]` pulled back through `x = (1 - y)/2`.
pub fn jacobi_recurrence(params: &JacobiParams) -> RecurrenceTable {
    let (al, be) = (params.a_exp, params.b_exp);
    let s = al + be;
    let n = params.n;
    let diag = (0..n)
        .map(|k| {
            let alpha_y = if k == 0 {
                (be - al) / (s + 2.0)
            } else {
                let m = 2.0 * k as f64 + s;
                (be * be - al * al) / (m * (m + 2.0))
            };
            0.5 * (1.0 - alpha_y)
        })
        .collect();
    let offdiag = (1..n)
        .map(|k| {
            let kf = k as f64;
            let beta_y = if k == 1 {
                4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + s).powi(2) * (3.0 + s))
            } else {
                let m = 2.0 * kf + s;
                4.0 * kf * (kf + al) * (kf + be) * (kf + s) / (m * m * (m + 1.0) * (m - 1.0))
            };
            (0.25 * beta_y).sqrt()
        })
        .collect();
    let norm0 = gamma_fn(al + 1.0).expect("a > -1")
        * gamma_fn(be + 1.0).expect("b > -1")
        / gamma_fn(s + 2.0).expect("a + b > -2");
    RecurrenceTable { diag, offdiag, norm0 }
}

/// Christoffel–Darboux kernel `√(w(x) w(y)) Σ_{k<n} q_k(x) q_k(y)` with the
/// recurrence table cached for repeated evaluation.
#[derive(Debug, Clone)]
pub struct CdKernel {
    params: JacobiParams,
    table: RecurrenceTable,
}

impl CdKernel {
    pub fn new(params: JacobiParams) -> Self {
        CdKernel { table: jacobi_recurrence(&params), params }
    }

    pub fn params(&self) -> &JacobiParams {
        &self.params
    }

    pub fn table(&self) -> &RecurrenceTable {
        &self.table
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64, SpecfunError> {
        for v in [x, y] {
            if !(0.0..=1.0).contains(&v) {
                return Err(SpecfunError::Domain { function: "cd_kernel", value: v });
            }
        }
        let w = (self.params.weight(x) * self.params.weight(y)).sqrt();
        Ok(w * self.table.polynomial_sum(x, y))
    }

    /// Diagonal `K_n(x, x)`, the level density of the `n`-point ensemble.
    pub fn diag(&self, x: f64) -> Result<f64, SpecfunError> {
        self.eval(x, x)
    }
}

/// One-shot evaluation of the Christoffel–Darboux kernel.
pub fn cd_kernel(params: &JacobiParams, x: f64, y: f64) -> Result<f64, SpecfunError> {
    CdKernel::new(*params).eval(x, y)
}
