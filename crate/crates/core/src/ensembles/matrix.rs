use faer::{c64, Mat, Side};

use super::{EnsembleError, Field};

/// Dense self-adjoint matrix over the field chosen by β.
///
/// Constructors copy the lower triangle onto the upper one, so
/// `m[(i, j)] == conj(m[(j, i)])` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum SquareMatrix {
    Real(Mat<f64>),
    Complex(Mat<c64>),
}

pub(crate) fn hermitize<T: Field>(m: &mut Mat<T>) {
    let n = m.nrows();
    for j in 0..n {
        m[(j, j)] = T::from_f64(m[(j, j)].real_part());
        for i in j + 1..n {
            m[(j, i)] = m[(i, j)].conj_val();
        }
    }
}

impl SquareMatrix {
    /// Builds from the lower triangle of `m` (the upper one is ignored).
    pub fn from_lower_real(mut m: Mat<f64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "matrix must be square");
        hermitize(&mut m);
        SquareMatrix::Real(m)
    }

    /// Builds from the lower triangle of `m` (the upper one is ignored).
    pub fn from_lower_complex(mut m: Mat<c64>) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "matrix must be square");
        hermitize(&mut m);
        SquareMatrix::Complex(m)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        SquareMatrix::Real(Mat::from_fn(n, n, |i, j| if i == j { values[i] } else { 0.0 }))
    }

    pub fn dim(&self) -> usize {
        match self {
            SquareMatrix::Real(m) => m.nrows(),
            SquareMatrix::Complex(m) => m.nrows(),
        }
    }

    pub fn trace(&self) -> f64 {
        match self {
            SquareMatrix::Real(m) => (0..m.nrows()).map(|i| m[(i, i)]).sum(),
            SquareMatrix::Complex(m) => (0..m.nrows()).map(|i| m[(i, i)].re).sum(),
        }
    }

    /// Entry `(i, j)` as a complex number.
    pub fn entry(&self, i: usize, j: usize) -> c64 {
        match self {
            SquareMatrix::Real(m) => c64::new(m[(i, j)], 0.0),
            SquareMatrix::Complex(m) => m[(i, j)],
        }
    }

    /// `max |(M² - M)_{ij}|`.
    pub fn idempotency_defect(&self) -> f64 {
        fn defect<T: Field>(m: &Mat<T>) -> f64 {
            let sq = m * m;
            (&sq - m).norm_max()
        }
        match self {
            SquareMatrix::Real(m) => defect(m),
            SquareMatrix::Complex(m) => defect(m),
        }
    }

    /// `tr(A B)` for two self-adjoint matrices of the same field.
    pub fn trace_product(&self, other: &SquareMatrix) -> f64 {
        fn tr<T: Field>(a: &Mat<T>, b: &Mat<T>) -> f64 {
            let n = a.nrows();
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    // tr(AB) = Σ a_ij b_ji = Σ a_ij conj(b_ij)
                    s += (a[(i, j)] * b[(i, j)].conj_val()).real_part();
                }
            }
            s
        }
        match (self, other) {
            (SquareMatrix::Real(a), SquareMatrix::Real(b)) => tr(a, b),
            (SquareMatrix::Complex(a), SquareMatrix::Complex(b)) => tr(a, b),
            _ => panic!("trace_product across fields"),
        }
    }

    fn is_finite(&self) -> bool {
        match self {
            SquareMatrix::Real(m) => m.col_iter().all(|c| c.iter().all(|x| x.is_finite())),
            SquareMatrix::Complex(m) => m
                .col_iter()
                .all(|c| c.iter().all(|z| z.re.is_finite() && z.im.is_finite())),
        }
    }
}

/// All eigenvalues with multiplicity, ascending.
pub fn self_adjoint_eigenvalues(m: &SquareMatrix) -> Result<Vec<f64>, EnsembleError> {
    if !m.is_finite() {
        return Err(EnsembleError::NonFinite);
    }
    let mut ev = match m {
        SquareMatrix::Real(a) => a.self_adjoint_eigenvalues(Side::Lower),
        SquareMatrix::Complex(a) => a.self_adjoint_eigenvalues(Side::Lower),
    }
    .map_err(|_| EnsembleError::EigenFailure)?;
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// `max_i ‖M v_i − λ_i v_i‖ / ‖M‖_F` over a full eigendecomposition.
pub fn eigen_residual(m: &SquareMatrix) -> Result<f64, EnsembleError> {
    fn residual<T: Field>(a: &Mat<T>) -> Result<f64, EnsembleError> {
        let evd = a
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| EnsembleError::EigenFailure)?;
        let u = evd.U();
        let s = evd.S().column_vector();
        let av = a * u;
        let mut worst = 0.0f64;
        for k in 0..a.ncols() {
            let lambda = s[k];
            let mut norm = 0.0;
            for i in 0..a.nrows() {
                let r = av[(i, k)] - u[(i, k)] * lambda;
                norm += r.modulus().powi(2);
            }
            worst = worst.max(norm.sqrt());
        }
        let scale = a.norm_l2();
        Ok(if scale > 0.0 { worst / scale } else { worst })
    }
    if !m.is_finite() {
        return Err(EnsembleError::NonFinite);
    }
    match m {
        SquareMatrix::Real(a) => residual(a),
        SquareMatrix::Complex(a) => residual(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_exact() {
        let ev = self_adjoint_eigenvalues(&SquareMatrix::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(ev, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn swap_matrix() {
        let m = SquareMatrix::from_lower_real(Mat::from_fn(2, 2, |i, j| if i != j { 1.0 } else { 0.0 }));
        let ev = self_adjoint_eigenvalues(&m).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lower_triangle_is_mirrored() {
        let m = SquareMatrix::from_lower_complex(Mat::from_fn(3, 3, |i, j| {
            c64::new((i + 2 * j) as f64, i as f64 - j as f64)
        }));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.entry(i, j), m.entry(j, i).conj());
            }
        }
    }

    #[test]
    fn rejects_nan() {
        let m = SquareMatrix::diagonal(&[1.0, f64::NAN]);
        assert_eq!(self_adjoint_eigenvalues(&m), Err(EnsembleError::NonFinite));
    }
}
