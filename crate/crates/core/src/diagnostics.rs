//! Mixing and efficiency metrics for scalar chains.
//!
//! Autocovariances use the biased `1/N` denominator. The effective sample
//! size follows Geyer's initial monotone positive sequence: autocovariances
//! are summed in adjacent pairs `Γ_m = γ_{2m} + γ_{2m+1}`, truncated at the
//! first non-positive pair and forced to be non-increasing.

use crate::error::{check_positive_f64, Result, ShrinkageError};
use crate::scalar::Real;

/// Minimum series length accepted by [`ess_univariate`].
pub const MIN_ESS_LEN: usize = 100;

struct Autocovariance<T> {
    centered: Vec<T>,
    inv_n: T,
}

impl<T: Real> Autocovariance<T> {
    fn new(series: &[T]) -> Self {
        let n = T::from_usize_lossy(series.len());
        let mean = series.iter().copied().sum::<T>() / n;
        Self {
            centered: series.iter().map(|&v| v - mean).collect(),
            inv_n: n.recip(),
        }
    }

    fn at(&self, lag: usize) -> T {
        let c = &self.centered;
        crate::scalar::dot(&c[..c.len() - lag], &c[lag..]) * self.inv_n
    }
}

/// Sample autocorrelation at `lag`.
pub fn autocorr<T: Real>(series: &[T], lag: usize) -> Result<T> {
    if series.len() < lag + 2 {
        return Err(ShrinkageError::SeriesTooShort {
            required: lag + 2,
            actual: series.len(),
        });
    }
    let acov = Autocovariance::new(series);
    let g0 = acov.at(0);
    if !(g0 > T::zero()) {
        return Err(ShrinkageError::ZeroVariance);
    }
    Ok(acov.at(lag) / g0)
}

/// Details of an effective sample size estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EssEstimate<T> {
    pub ess: T,
    /// Integrated autocorrelation time `1 + 2 Σ ρ_k` before clamping.
    pub iat: T,
    /// Lag-one autocorrelation, the first term of the truncated sum.
    pub rho1: T,
    /// Number of autocovariance pairs kept.
    pub pairs: usize,
}

pub fn ess_univariate_detail<T: Real>(series: &[T]) -> Result<EssEstimate<T>> {
    let n = series.len();
    if n < MIN_ESS_LEN {
        return Err(ShrinkageError::SeriesTooShort {
            required: MIN_ESS_LEN,
            actual: n,
        });
    }
    let acov = Autocovariance::new(series);
    let g0 = acov.at(0);
    if !(g0 > T::zero()) {
        return Err(ShrinkageError::ZeroVariance);
    }
    let g1 = acov.at(1);

    let mut sum = T::zero();
    let mut prev = T::infinity();
    let mut pairs = 0;
    let mut m = 0;
    while 2 * m + 1 < n {
        let (even, odd) = if m == 0 { (g0, g1) } else { (acov.at(2 * m), acov.at(2 * m + 1)) };
        let pair = even + odd;
        if !(pair > T::zero()) {
            break;
        }
        let pair = pair.min(prev);
        sum += pair;
        prev = pair;
        pairs += 1;
        m += 1;
    }

    let nf = T::from_usize_lossy(n);
    let iat = -T::one() + T::lit(2.0) * sum / g0;
    let ess = if iat > T::zero() && iat.is_finite() {
        (nf / iat).min(nf)
    } else {
        nf
    };
    Ok(EssEstimate {
        ess,
        iat,
        rho1: g1 / g0,
        pairs,
    })
}

/// Univariate effective sample size `N / (1 + 2 Σ ρ_k)`, clamped to `(0, N]`.
pub fn ess_univariate<T: Real>(series: &[T]) -> Result<T> {
    Ok(ess_univariate_detail(series)?.ess)
}

pub fn ess_per_second(ess: f64, wall_time_seconds: f64) -> Result<f64> {
    check_positive_f64("wall_time_seconds", wall_time_seconds)?;
    Ok(ess / wall_time_seconds)
}

/// Sample mean, standard deviation and quantiles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary<T> {
    pub mean: T,
    /// `n − 1` denominator; zero for a single value.
    pub sd: T,
    pub q025: T,
    pub median: T,
    pub q975: T,
}

/// Empirical quantile with linear interpolation between order statistics
/// (position `(n − 1) q` in the sorted sample).
pub fn quantile_sorted<T: Real>(sorted: &[T], q: f64) -> T {
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let w = T::lit(h - lo as f64);
    sorted[lo] + w * (sorted[hi] - sorted[lo])
}

pub fn summarize<T: Real>(series: &[T]) -> Result<Summary<T>> {
    if series.is_empty() {
        return Err(ShrinkageError::SeriesTooShort { required: 1, actual: 0 });
    }
    let n = T::from_usize_lossy(series.len());
    let mean = series.iter().copied().sum::<T>() / n;
    let sd = if series.len() > 1 {
        (series.iter().map(|&v| (v - mean) * (v - mean)).sum::<T>() / (n - T::one())).sqrt()
    } else {
        T::zero()
    };
    let mut sorted = series.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(Summary {
        mean,
        sd,
        q025: quantile_sorted(&sorted, 0.025),
        median: quantile_sorted(&sorted, 0.5),
        q975: quantile_sorted(&sorted, 0.975),
    })
}

/// Mixing and efficiency summary of one scalar chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsReport {
    pub rho1: f64,
    pub ess: f64,
    pub ess_per_second: f64,
    pub summary: Summary<f64>,
}

impl DiagnosticsReport {
    pub fn from_series<T: Real>(series: &[T], wall_time_seconds: f64) -> Result<Self> {
        let est = ess_univariate_detail(series)?;
        let ess = est.ess.as_f64();
        let s = summarize(series)?;
        Ok(Self {
            rho1: est.rho1.as_f64(),
            ess,
            ess_per_second: ess_per_second(ess, wall_time_seconds)?,
            summary: Summary {
                mean: s.mean.as_f64(),
                sd: s.sd.as_f64(),
                q025: s.q025.as_f64(),
                median: s.median.as_f64(),
                q975: s.q975.as_f64(),
            },
        })
    }
}

/// Monte Carlo standard error of the mean, `sd / sqrt(ESS)`.
pub fn mc_standard_error<T: Real>(series: &[T]) -> Result<T> {
    let s = summarize(series)?;
    let ess = ess_univariate(series)?;
    Ok(s.sd / ess.sqrt())
}
