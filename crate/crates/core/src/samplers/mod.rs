//! Gibbs kernels for the three shrinkage models.
//!
//! Every kernel first refreshes the latent scales given the incoming
//! `(β, σ²)`, then updates `(σ², β)`:
//!
//! * two-block (2BG): `σ² | η, Y` with `β` integrated out, then `β | σ², η, Y`;
//! * three-block (3BG): `σ² | β, η, Y` using the incoming `β`, then `β | σ², η, Y`.
//!
//! Both share one Cholesky factorization of `A_η = XᵀX + Σ_η⁻¹` per step.

mod driver;

pub use driver::{run_chain, run_chain_from, run_chains_parallel, ChainJob, ChainOutput, ModelSummary, RunConfig};

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, ShrinkageError};
use crate::linalg::{Cholesky, PrecisionFactor, SymMatrix, SymTridiagonal, TridiagCholesky};
use crate::model::{
    assemble_posterior_precision_into, conditional_sigma2_params, marginal_sigma2_from_mean,
    prior_precision, ChainState, Dataset, ModelKind, ModelSpec, Penalty, PriorPrecision,
};
use crate::rng::{finish_mvn_draw, sample_gamma, sample_inverse_gamma, sample_inverse_gaussian, RngStream};
use crate::scalar::{sq_norm, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    TwoBlock,
    ThreeBlock,
}

impl KernelKind {
    pub fn name(self) -> &'static str {
        match self {
            KernelKind::TwoBlock => "2bg",
            KernelKind::ThreeBlock => "3bg",
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelKind {
    type Err = ShrinkageError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "2bg" | "two-block" => Ok(KernelKind::TwoBlock),
            "3bg" | "three-block" => Ok(KernelKind::ThreeBlock),
            other => Err(ShrinkageError::InvalidConfig(format!(
                "unknown kernel '{other}' (expected 2bg or 3bg)"
            ))),
        }
    }
}

/// Full conditional of one inverse latent scale `1/s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LatentConditional {
    /// `1/s ~ Inverse-Gaussian(sqrt(λ²σ²/‖b‖²), λ²)`
    InverseGaussian { mean: f64, shape: f64 },
    /// Limit of the above as `‖b‖ → 0`: `1/s ~ Gamma(1/2, rate λ²/2)`.
    LimitingGamma { shape: f64, rate: f64 },
}

/// Conditional for `1/s` given the squared norm of the coefficients it scales.
pub fn latent_conditional(lambda_sq: f64, sigma2: f64, coef_sq_norm: f64) -> LatentConditional {
    let mean = (lambda_sq * sigma2 / coef_sq_norm).sqrt();
    if coef_sq_norm > 0.0 && mean.is_finite() {
        LatentConditional::InverseGaussian {
            mean,
            shape: lambda_sq,
        }
    } else {
        LatentConditional::LimitingGamma {
            shape: 0.5,
            rate: 0.5 * lambda_sq,
        }
    }
}

impl LatentConditional {
    /// Draws the latent scale `s` (the reciprocal of the conditional variate).
    pub fn sample_scale(&self, what: &'static str, index: usize, rng: &mut RngStream) -> Result<f64> {
        let inv = match *self {
            LatentConditional::InverseGaussian { mean, shape } => sample_inverse_gaussian(mean, shape, rng)?,
            LatentConditional::LimitingGamma { shape, rate } => sample_gamma(shape, rate, rng)?,
        };
        let s = inv.recip();
        if !(s.is_finite() && s > 0.0) {
            return Err(ShrinkageError::NonPositive { what, index, value: s });
        }
        Ok(s)
    }
}

/// Refreshes the latent scales of `state` from their full conditionals given `(β, σ²)`.
pub fn update_latent_scales<T: Real>(spec: &ModelSpec<T>, state: &mut ChainState<T>, rng: &mut RngStream) -> Result<()> {
    let sigma2 = state.sigma2.as_f64();
    let beta = &state.beta;
    let scales = &mut state.scales;
    match &spec.penalty {
        Penalty::GroupLasso { lambda, groups } => {
            let l2 = lambda.as_f64().powi(2);
            for k in 0..groups.num_groups() {
                let sq = sq_norm(&beta[groups.range(k)]).as_f64();
                scales.tau2[k] = T::lit(latent_conditional(l2, sigma2, sq).sample_scale("tau2", k, rng)?);
            }
        }
        Penalty::SparseGroupLasso {
            lambda1,
            lambda2,
            groups,
        } => {
            let (l1, l2) = (lambda1.as_f64().powi(2), lambda2.as_f64().powi(2));
            for k in 0..groups.num_groups() {
                let sq = sq_norm(&beta[groups.range(k)]).as_f64();
                scales.tau2[k] = T::lit(latent_conditional(l1, sigma2, sq).sample_scale("tau2", k, rng)?);
            }
            for (j, b) in beta.iter().enumerate() {
                let sq = b.as_f64().powi(2);
                scales.gamma2[j] = T::lit(latent_conditional(l2, sigma2, sq).sample_scale("gamma2", j, rng)?);
            }
        }
        Penalty::FusedLasso { lambda1, lambda2 } => {
            let (l1, l2) = (lambda1.as_f64().powi(2), lambda2.as_f64().powi(2));
            for (j, b) in beta.iter().enumerate() {
                let sq = b.as_f64().powi(2);
                scales.tau2[j] = T::lit(latent_conditional(l1, sigma2, sq).sample_scale("tau2", j, rng)?);
            }
            for j in 0..beta.len() - 1 {
                let sq = (beta[j + 1] - beta[j]).as_f64().powi(2);
                scales.omega2[j] = T::lit(latent_conditional(l2, sigma2, sq).sample_scale("omega2", j, rng)?);
            }
        }
    }
    Ok(())
}

/// Reusable buffers for one chain. Counts factorizations of `A_η`.
#[derive(Debug, Clone)]
pub struct Workspace<T> {
    precision: SymMatrix<T>,
    factor: Option<PrecisionFactor<T>>,
    z: Vec<T>,
    mean: Vec<T>,
    factorizations: u64,
}

impl<T: Real> Workspace<T> {
    pub fn new(p: usize) -> Self {
        Self {
            precision: SymMatrix::zeros(p),
            factor: None,
            z: vec![T::zero(); p],
            mean: vec![T::zero(); p],
            factorizations: 0,
        }
    }

    /// Number of posterior-precision factorizations performed so far.
    pub fn factorizations(&self) -> u64 {
        self.factorizations
    }

    fn factor(&mut self, data: &Dataset<T>, prior: &PriorPrecision<T>) -> Result<&PrecisionFactor<T>> {
        self.factorizations += 1;
        if let (true, PriorPrecision::Tridiagonal(t)) = (data.is_identity_design(), prior) {
            let shifted = SymTridiagonal {
                diag: t.diag.iter().map(|&d| d + T::one()).collect(),
                off: t.off.clone(),
            };
            self.factor = Some(PrecisionFactor::Tridiagonal(TridiagCholesky::factor(
                &shifted,
                "posterior precision A",
            )?));
        } else {
            assemble_posterior_precision_into(data, prior, &mut self.precision)?;
            match &mut self.factor {
                Some(PrecisionFactor::Dense(c)) => c.refactor(&self.precision, "posterior precision A")?,
                slot => {
                    *slot = Some(PrecisionFactor::Dense(Cholesky::factor(
                        &self.precision,
                        "posterior precision A",
                    )?))
                }
            }
        }
        Ok(self.factor.as_ref().expect("factor set above"))
    }
}

/// Updates `(σ², β)` given a fixed prior precision.
///
/// With `TwoBlock`, `σ²` is drawn from its conditional with `β` integrated out;
/// with `ThreeBlock`, it is drawn given the incoming `β`. The new `β` is then
/// drawn from `N(A⁻¹XᵀY, σ²A⁻¹)`. Calling this repeatedly with a fixed
/// `prior` samples the conjugate posterior of a frozen-scale model.
#[allow(clippy::too_many_arguments)]
pub fn draw_regression_block<T: Real>(
    kernel: KernelKind,
    data: &Dataset<T>,
    prior: &PriorPrecision<T>,
    alpha: T,
    xi: T,
    state: &mut ChainState<T>,
    ws: &mut Workspace<T>,
    rng: &mut RngStream,
) -> Result<()> {
    let three_block_params = match kernel {
        KernelKind::ThreeBlock => Some(conditional_sigma2_params(data, &state.beta, prior, alpha, xi)?),
        KernelKind::TwoBlock => None,
    };

    let mut z = std::mem::take(&mut ws.z);
    let mut mean = std::mem::take(&mut ws.mean);
    let factor = ws.factor(data, prior)?;
    z.clear();
    z.extend_from_slice(data.xty());
    factor.solve_lower_in_place(&mut z);

    let params = match three_block_params {
        Some(p) => p,
        None => {
            mean.clear();
            mean.extend_from_slice(&z);
            factor.solve_upper_in_place(&mut mean);
            marginal_sigma2_from_mean(data, prior, &mean, alpha, xi)?
        }
    };
    let sigma2 = sample_inverse_gamma(params.shape.as_f64(), params.scale.as_f64(), rng)?;
    let sigma2_t = T::lit(sigma2);
    if !(sigma2_t > T::zero() && sigma2_t.is_finite()) {
        return Err(ShrinkageError::NonPositive {
            what: "sigma2",
            index: 0,
            value: sigma2,
        });
    }
    finish_mvn_draw(factor, &mut z, T::lit(sigma2.sqrt()), rng);

    state.sigma2 = sigma2_t;
    state.beta.copy_from_slice(&z);
    ws.z = z;
    ws.mean = mean;
    Ok(())
}

/// One full Gibbs step of the given kernel for any model.
pub fn step<T: Real>(
    kernel: KernelKind,
    spec: &ModelSpec<T>,
    data: &Dataset<T>,
    state: &mut ChainState<T>,
    ws: &mut Workspace<T>,
    rng: &mut RngStream,
) -> Result<()> {
    update_latent_scales(spec, state, rng)?;
    let prior = prior_precision(spec, &state.scales)?;
    draw_regression_block(kernel, data, &prior, spec.alpha, spec.xi, state, ws, rng)
}

fn require_kind<T: Real>(spec: &ModelSpec<T>, expected: ModelKind) -> Result<()> {
    if spec.kind() != expected {
        return Err(ShrinkageError::ModelMismatch {
            expected: expected.name(),
            actual: spec.kind().name(),
        });
    }
    Ok(())
}

macro_rules! model_step {
    ($(#[$doc:meta])* $name:ident, $kernel:expr, $kind:expr) => {
        $(#[$doc])*
        pub fn $name<T: Real>(
            state: &mut ChainState<T>,
            data: &Dataset<T>,
            spec: &ModelSpec<T>,
            ws: &mut Workspace<T>,
            rng: &mut RngStream,
        ) -> Result<()> {
            require_kind(spec, $kind)?;
            step($kernel, spec, data, state, ws, rng)
        }
    };
}

model_step!(
    /// Two-block step for the Bayesian group lasso.
    step_2bg_group, KernelKind::TwoBlock, ModelKind::GroupLasso
);
model_step!(
    /// Three-block step for the Bayesian group lasso.
    step_3bg_group, KernelKind::ThreeBlock, ModelKind::GroupLasso
);
model_step!(step_2bg_sparse_group, KernelKind::TwoBlock, ModelKind::SparseGroupLasso);
model_step!(step_3bg_sparse_group, KernelKind::ThreeBlock, ModelKind::SparseGroupLasso);
model_step!(step_2bg_fused, KernelKind::TwoBlock, ModelKind::FusedLasso);
model_step!(step_3bg_fused, KernelKind::ThreeBlock, ModelKind::FusedLasso);
