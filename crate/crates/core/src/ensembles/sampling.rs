use faer::{c64, Mat, MatRef, Side};
use rand::Rng;

use super::matrix::hermitize;
use super::{Beta, EnsembleError, EnsembleParams, Field, SeedSpec, SquareMatrix};

const SLOT_P: u64 = 0;
const SLOT_Q: u64 = 1;
const SLOT_JACOBI: u64 = 2;

/// How `Q` is realised in [`sample_sum_matrix_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QMode {
    /// `Q = diag(1, …, 1, 0, …, 0)`; equal in law by unitary invariance.
    #[default]
    Diagonal,
    /// An independent Gaussian-span projection.
    Random,
}

fn gaussian_matrix<T: Field, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Mat<T> {
    Mat::from_fn(rows, cols, |_, _| T::gaussian(rng))
}

fn projection<T: Field, R: Rng + ?Sized>(
    n: usize,
    rank: usize,
    rng: &mut R,
) -> Result<Mat<T>, EnsembleError> {
    if rank == 0 || rank > n {
        return Err(EnsembleError::RankOutOfRange { n, rank });
    }
    if rank == n {
        return Ok(Mat::from_fn(n, n, |i, j| T::from_f64(if i == j { 1.0 } else { 0.0 })));
    }
    for _ in 0..2 {
        let g: Mat<T> = gaussian_matrix(n, rank, rng);
        let qr = g.qr();
        let r = qr.thin_R();
        let diag: Vec<f64> = (0..rank).map(|i| r[(i, i)].modulus()).collect();
        let hi = diag.iter().cloned().fold(0.0, f64::max);
        let lo = diag.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(lo > 1e-10 * hi) {
            log::warn!("rank-deficient Gaussian draw (min |R_ii| = {lo:e}), resampling");
            continue;
        }
        let y = qr.compute_thin_Q();
        let mut p = &y * y.adjoint();
        hermitize(&mut p);
        return Ok(p);
    }
    Err(EnsembleError::Degenerate)
}

/// Orthogonal projection onto the span of `rank` independent standard
/// Gaussian vectors in dimension `n`, real for β=1 and complex for β=2.
pub fn sample_gaussian_span_projection(
    n: usize,
    rank: usize,
    beta: Beta,
    seed: SeedSpec,
) -> Result<SquareMatrix, EnsembleError> {
    let mut rng = seed.substream(SLOT_P);
    Ok(match beta {
        Beta::Real => SquareMatrix::Real(projection(n, rank, &mut rng)?),
        Beta::Complex => SquareMatrix::Complex(projection(n, rank, &mut rng)?),
    })
}

pub fn sample_sum_matrix(params: &EnsembleParams, seed: SeedSpec) -> Result<SquareMatrix, EnsembleError> {
    sample_sum_matrix_with(params, seed, QMode::Diagonal)
}

pub fn sample_sum_matrix_with(
    params: &EnsembleParams,
    seed: SeedSpec,
    mode: QMode,
) -> Result<SquareMatrix, EnsembleError> {
    fn build<T: Field>(
        params: &EnsembleParams,
        seed: SeedSpec,
        mode: QMode,
    ) -> Result<Mat<T>, EnsembleError> {
        let n = params.n();
        let theta = T::from_f64(params.theta());
        let mut m: Mat<T> = projection(n, params.p_rank(), &mut seed.substream(SLOT_P))?;
        match mode {
            QMode::Diagonal => {
                for i in 0..params.q_rank() {
                    m[(i, i)] = m[(i, i)] + theta;
                }
            }
            QMode::Random => {
                let q: Mat<T> = projection(n, params.q_rank(), &mut seed.substream(SLOT_Q))?;
                for j in 0..n {
                    for i in j..n {
                        m[(i, j)] = m[(i, j)] + theta * q[(i, j)];
                    }
                }
                hermitize(&mut m);
            }
        }
        Ok(m)
    }
    Ok(match params.beta() {
        Beta::Real => SquareMatrix::Real(build(params, seed, mode)?),
        Beta::Complex => SquareMatrix::Complex(build(params, seed, mode)?),
    })
}

/// Eigenvalues of `(A*A + B*B)⁻¹ A*A`, where `A` is the top `q` rows of `g`
/// and `B` the rest, ascending and clamped to `[0, 1]`.
///
/// Computed as the spectrum of `L⁻¹ A*A L⁻*` with `g*g = L L*`, which is
/// self-adjoint and similar to `M`.
pub fn jacobi_spectrum_from_gaussian<T: Field>(
    g: MatRef<'_, T>,
    q: usize,
) -> Result<Vec<f64>, EnsembleError> {
    let a = g.subrows(0, q);
    let w1 = a.adjoint() * a;
    let s = g.adjoint() * g;
    let llt = s.llt(Side::Lower).map_err(|_| EnsembleError::Degenerate)?;
    let l = llt.L();
    let mut x = w1;
    l.solve_lower_triangular_in_place(x.as_mut());
    let mut c = x.adjoint().to_owned();
    l.solve_lower_triangular_in_place(c.as_mut());
    hermitize(&mut c);
    let mut ev = c
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| EnsembleError::EigenFailure)?;
    for v in ev.iter_mut() {
        *v = v.clamp(0.0, 1.0);
    }
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// The `p` Jacobi points of the ensemble, ascending.
pub fn sample_jacobi_spectrum(params: &EnsembleParams, seed: SeedSpec) -> Result<Vec<f64>, EnsembleError> {
    fn run<T: Field>(params: &EnsembleParams, seed: SeedSpec) -> Result<Vec<f64>, EnsembleError> {
        let mut rng = seed.substream(SLOT_JACOBI);
        for _ in 0..2 {
            let g: Mat<T> = gaussian_matrix(params.n(), params.p_rank(), &mut rng);
            match jacobi_spectrum_from_gaussian(g.as_ref(), params.q_rank()) {
                Err(EnsembleError::Degenerate) => {
                    log::warn!("singular Gram matrix in Jacobi sampler, resampling");
                }
                other => return other,
            }
        }
        Err(EnsembleError::Degenerate)
    }
    if params.b() < 0 {
        return Err(EnsembleError::InvalidParams(
            "the Jacobi model needs p + q <= N".into(),
        ));
    }
    match params.beta() {
        Beta::Real => run::<f64>(params, seed),
        Beta::Complex => run::<c64>(params, seed),
    }
}
