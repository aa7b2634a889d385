use faer::c64;
use faer::traits::ComplexField;
use rand::Rng;
use rand_distr::StandardNormal;

/// Scalar field of a sampler: `f64` for β=1, `c64` for β=2.
pub trait Field: ComplexField<Real = f64> + Copy + Send + Sync + 'static {
    /// Standard Gaussian with `E|z|² = 1`.
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self;
    fn from_f64(x: f64) -> Self;
    fn conj_val(self) -> Self;
    fn real_part(self) -> f64;
    fn modulus(self) -> f64;
}

impl Field for f64 {
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn conj_val(self) -> Self {
        self
    }

    fn real_part(self) -> f64 {
        self
    }

    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Field for c64 {
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    fn from_f64(x: f64) -> Self {
        c64::new(x, 0.0)
    }

    fn conj_val(self) -> Self {
        self.conj()
    }

    fn real_part(self) -> f64 {
        self.re
    }

    fn modulus(self) -> f64 {
        self.norm()
    }
}
