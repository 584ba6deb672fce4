//! Seeded random variate generation.
//!
//! All streams are ChaCha8 keyed by a 64-bit seed plus a 64-bit stream id, so
//! parallel replications can draw from independent, reproducible streams.
//! Normal and Gamma variates come from `rand_distr`; the Inverse-Gaussian
//! sampler is the Michael–Schucany–Haas transformation.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Open01, StandardNormal};

use crate::error::{check_positive_f64, Result, ShrinkageError};
use crate::linalg::{Cholesky, PrecisionFactor, SymMatrix};
use crate::scalar::Real;

/// A reproducible random stream owned by one chain or replication.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self { seed, stream, inner }
    }

    /// Independent stream sharing this stream's seed.
    pub fn split(&self, stream: u64) -> Self {
        Self::with_stream(self.seed, stream)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Mixes a master seed with two indices (SplitMix64 finalizer).
pub fn derive_seed(master: u64, a: u64, b: u64) -> u64 {
    let mut z = master
        .wrapping_add(a.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(b.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
pub fn sample_std_normal(rng: &mut RngStream) -> f64 {
    StandardNormal.sample(rng)
}

/// Uniform on the open interval `(0, 1)`.
#[inline]
pub fn sample_open_uniform(rng: &mut RngStream) -> f64 {
    Open01.sample(rng)
}

/// `Gamma(shape, rate)`, mean `shape / rate`.
pub fn sample_gamma(shape: f64, rate: f64, rng: &mut RngStream) -> Result<f64> {
    check_positive_f64("gamma shape", shape)?;
    check_positive_f64("gamma rate", rate)?;
    let g = Gamma::new(shape, rate.recip()).map_err(|_| ShrinkageError::InvalidParameter {
        name: "gamma rate",
        value: rate,
        reason: "scale 1/rate is not representable",
    })?;
    Ok(g.sample(rng))
}

/// `Inverse-Gamma(shape, scale)`, drawn as `scale / Gamma(shape, 1)`.
pub fn sample_inverse_gamma(shape: f64, scale: f64, rng: &mut RngStream) -> Result<f64> {
    check_positive_f64("inverse-gamma shape", shape)?;
    check_positive_f64("inverse-gamma scale", scale)?;
    let g = sample_gamma(shape, 1.0, rng)?;
    let draw = scale / g;
    if !(draw.is_finite() && draw > 0.0) {
        return Err(ShrinkageError::InvalidParameter {
            name: "inverse-gamma draw",
            value: draw,
            reason: "draw overflowed or underflowed",
        });
    }
    Ok(draw)
}

/// Inverse-Gaussian with mean `mu` and shape `lam` (variance `mu³ / lam`).
///
/// The smaller root of the transformation is evaluated as
/// `mu * r / (1 + sqrt(1 + r))²` with `r = 4 lam / (mu ν²)`, which has no
/// cancellation at extreme parameter ratios.
pub fn sample_inverse_gaussian(mu: f64, lam: f64, rng: &mut RngStream) -> Result<f64> {
    check_positive_f64("inverse-gaussian mean", mu)?;
    check_positive_f64("inverse-gaussian shape", lam)?;
    let nu = sample_std_normal(rng);
    let y = nu * nu;
    let u = sample_open_uniform(rng);
    let x = if y == 0.0 {
        mu
    } else {
        let r = 4.0 * lam / (mu * y);
        if r.is_infinite() {
            mu
        } else {
            let root = 1.0 + (1.0 + r).sqrt();
            mu * (r / root) / root
        }
    };
    // x ≤ mu always; the reflected root mu²/x is taken with probability x/(mu + x)
    let draw = if u * (mu + x) <= mu { x } else { mu * (mu / x) };
    Ok(draw)
}

/// Student-t with `df` degrees of freedom: `Z / sqrt(χ²_df / df)`.
pub fn sample_student_t(df: f64, rng: &mut RngStream) -> Result<f64> {
    check_positive_f64("student-t df", df)?;
    let z = sample_std_normal(rng);
    let chi2 = sample_gamma(0.5 * df, 0.5, rng)?;
    Ok(z / (chi2 / df).sqrt())
}

/// Completes a draw from `N(A⁻¹b, σ² A⁻¹)` given `A = LLᵀ` and `z = L⁻¹b`.
///
/// On return `z` holds `L⁻ᵀ(z + σ w)` with `w` standard normal.
pub fn finish_mvn_draw<T: Real>(factor: &PrecisionFactor<T>, z: &mut [T], sigma: T, rng: &mut RngStream) {
    for v in z.iter_mut() {
        *v += sigma * T::lit(sample_std_normal(rng));
    }
    factor.solve_upper_in_place(z);
}

/// Draws from `N(A⁻¹b, σ² A⁻¹)` with `A` given as a dense precision matrix.
pub fn sample_mvn_precision<T: Real>(
    b: &[T],
    precision: &SymMatrix<T>,
    sigma2: T,
    rng: &mut RngStream,
) -> Result<Vec<T>> {
    crate::error::check_len("mean vector b", precision.dim(), b.len())?;
    check_positive_f64("sigma2", sigma2.as_f64())?;
    let factor = PrecisionFactor::Dense(Cholesky::factor(precision, "precision")?);
    let mut z = b.to_vec();
    factor.solve_lower_in_place(&mut z);
    finish_mvn_draw(&factor, &mut z, sigma2.sqrt(), rng);
    Ok(z)
}
