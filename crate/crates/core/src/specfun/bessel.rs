use super::SpecfunError;

/// Largest argument handled by the power series; beyond it the Miller
/// backward recurrence takes over.
const SERIES_LIMIT: f64 = 12.0;
const SERIES_TERMS: usize = 60;

/// `Γ(x)` for real `x` away from the poles at the non-positive integers.
pub fn gamma_fn(x: f64) -> Result<f64, SpecfunError> {
    if x <= 0.0 && x == x.floor() {
        return Err(SpecfunError::Pole(x));
    }
    if !x.is_finite() {
        return Err(SpecfunError::Domain { function: "gamma", value: x });
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// Order `ν` of a Bessel function of the first kind.
///
/// Any finite integer is accepted (negative integers go through
/// `J_{-m} = (-1)^m J_m`); non-integer orders must satisfy `ν ≥ -1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self, SpecfunError> {
        if !nu.is_finite() || (nu < -1.0 && nu != nu.round()) {
            return Err(SpecfunError::InvalidOrder(nu));
        }
        Ok(BesselOrder(nu))
    }

    pub fn integer(m: i64) -> Self {
        BesselOrder(m as f64)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    fn is_integer(self) -> bool {
        self.0 == self.0.round()
    }
}

/// `J_ν(x)` for `x ≥ 0`.
///
/// At `x = 0` the limit value is returned; negative non-integer orders diverge
/// there and are reported as a domain error.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64, SpecfunError> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(SpecfunError::Domain { function: "bessel_j", value: x });
    }
    let nu = order.value();
    if order.is_integer() && nu < 0.0 {
        let m = -nu;
        let sign = if (m as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * bessel_j(BesselOrder(m), x)?);
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(SpecfunError::Domain { function: "bessel_j", value: x })
        };
    }
    if x <= SERIES_LIMIT {
        Ok(series(nu, x))
    } else {
        Ok(miller(nu, x))
    }
}

/// `J_ν(x) = Σ (-1)^m (x/2)^{2m+ν} / (m! Γ(m+ν+1))`, with `ν > -1`.
fn series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = half.powf(nu) / statrs::function::gamma::gamma(nu + 1.0);
    let mut sum = term;
    for m in 1..SERIES_TERMS {
        let mf = m as f64;
        term *= q / (mf * (mf + nu));
        sum += term;
        if mf > half && term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Miller's backward recurrence normalised by the Neumann sum
/// `(x/2)^μ = Σ_k (μ+2k) Γ(μ+k)/k! · J_{μ+2k}(x)`, where `μ ∈ (-1, 1)` is the
/// fractional base of the requested order.
fn miller(nu: f64, x: f64) -> f64 {
    let (base, steps) = if nu >= 0.0 {
        (nu - nu.floor(), nu.floor() as usize)
    } else {
        (nu, 0)
    };
    let start = {
        let k = steps.max(x.ceil() as usize) + 40 + (2.0 * x.sqrt()).ceil() as usize;
        k + (k % 2)
    };
    let mut vals = vec![0.0f64; start + 2];
    vals[start] = 1e-30;
    for k in (1..=start).rev() {
        let order = base + k as f64;
        let next = 2.0 * order / x * vals[k] - vals[k + 1];
        vals[k - 1] = next;
        if next.abs() > 1e250 {
            for v in &mut vals[k - 1..] {
                *v *= 1e-250;
            }
        }
    }
    // Neumann-sum normalisation over even offsets.
    let mut coeff_gamma = statrs::function::gamma::gamma(base + 1.0); // Γ(μ+k)/k! at k = 1
    let mut norm = coeff_gamma * vals[0];
    let mut j = 1usize;
    while 2 * j <= start {
        let jf = j as f64;
        if j > 1 {
            coeff_gamma *= (base + jf - 1.0) / jf;
        }
        norm += (base + 2.0 * jf) * coeff_gamma * vals[2 * j];
        j += 1;
    }
    vals[steps] * (0.5 * x).powf(base) / norm
}
