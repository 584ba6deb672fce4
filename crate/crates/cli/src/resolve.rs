//! Turns parsed flags into validated model and data settings.

use shrinkage_core::simgen::{ScenarioKind, ScenarioSpec, POLY_DEGREE};
use shrinkage_core::{Dataset, GroupStructure, ModelKind, ModelSpec, Real, RunConfig};

use crate::args::{ChainArgs, ModelArgs};
use crate::error::{CliError, CliResult};

/// Penalty and σ² prior settings, independent of the scalar type.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelChoice {
    pub kind: ModelKind,
    pub lambda1: f64,
    pub lambda2: Option<f64>,
    pub alpha: f64,
    pub xi: f64,
}

impl ModelChoice {
    /// Reads λ flags; when `default_lambda` is `None` they must be given explicitly.
    pub fn from_args(m: &ModelArgs, default_lambda: Option<f64>) -> CliResult<Self> {
        let kind: ModelKind = m.model.into();
        let missing = |flag: &str| {
            CliError::Usage(format!("{kind} requires {flag} (no default regularization is assumed)"))
        };
        let (lambda1, lambda2) = match kind {
            ModelKind::GroupLasso => {
                if m.lambda1.is_some() || m.lambda2.is_some() {
                    return Err(CliError::Usage("group-lasso takes --lambda, not --lambda1/--lambda2".into()));
                }
                (m.lambda.or(default_lambda).ok_or_else(|| missing("--lambda"))?, None)
            }
            _ => {
                let l1 = m.lambda1.or(m.lambda).or(default_lambda);
                let l2 = m.lambda2.or(m.lambda).or(default_lambda);
                (
                    l1.ok_or_else(|| missing("--lambda1 (or --lambda)"))?,
                    Some(l2.ok_or_else(|| missing("--lambda2 (or --lambda)"))?),
                )
            }
        };
        if m.xi == 0.0 {
            log::debug!("xi = 0: improper prior on sigma2");
        }
        Ok(Self {
            kind,
            lambda1,
            lambda2,
            alpha: m.alpha,
            xi: m.xi,
        })
    }

    pub fn spec<T: Real>(&self, groups: Option<&GroupStructure>, p: usize) -> CliResult<ModelSpec<T>> {
        let need_groups = || {
            groups.cloned().ok_or_else(|| {
                CliError::Usage(format!("{} needs a group structure (pass --groups)", self.kind))
            })
        };
        let l1 = T::lit(self.lambda1);
        let l2 = T::lit(self.lambda2.unwrap_or(self.lambda1));
        let spec = match self.kind {
            ModelKind::GroupLasso => ModelSpec::group_lasso(l1, need_groups()?)?,
            ModelKind::SparseGroupLasso => ModelSpec::sparse_group_lasso(l1, l2, need_groups()?)?,
            ModelKind::FusedLasso => ModelSpec::fused_lasso(l1, l2)?,
        }
        .with_sigma_prior(T::lit(self.alpha), T::lit(self.xi))?;
        spec.validate(p)?;
        Ok(spec)
    }
}

pub fn run_config(c: &ChainArgs, seed: u64, store_beta: bool) -> CliResult<RunConfig> {
    let cfg = RunConfig {
        n_iter: c.iters(),
        burn_in: c.burnin,
        thin: c.thin,
        seed,
        stream: 0,
        store_beta,
    };
    cfg.validate()?;
    let kept = cfg.stored_draws();
    if kept < shrinkage_core::diagnostics::MIN_ESS_LEN {
        return Err(CliError::Usage(format!(
            "only {kept} draws kept after burn-in and thinning; diagnostics need at least {}",
            shrinkage_core::diagnostics::MIN_ESS_LEN
        )));
    }
    Ok(cfg)
}

/// Number of covariates of a simulated design from `--K` or `--p`.
pub fn scenario_p(kind: ScenarioKind, k: Option<usize>, p: Option<usize>) -> CliResult<usize> {
    match (k, p) {
        (Some(_), Some(_)) => Err(CliError::Usage("pass either --K or --p, not both".into())),
        (Some(k), None) => match kind {
            ScenarioKind::AdjacentSimilar => Err(CliError::Usage("scenario s2 takes --p, not --K".into())),
            _ => Ok(POLY_DEGREE * k),
        },
        (None, Some(p)) => Ok(p),
        (None, None) => Err(CliError::Usage(format!("scenario {kind} needs --K or --p"))),
    }
}

pub fn scenario_spec(kind: ScenarioKind, n: Option<usize>, p: usize, seed: u64) -> CliResult<ScenarioSpec> {
    let n = n.ok_or_else(|| CliError::Usage(format!("scenario {kind} needs --n")))?;
    let spec = ScenarioSpec {
        scenario: kind,
        n,
        p,
        seed,
    };
    spec.validate()?;
    Ok(spec)
}

pub fn cast_dataset<T: Real>(d: &Dataset<f64>) -> CliResult<Dataset<T>> {
    let cast = |v: &[f64]| v.iter().map(|&x| T::lit(x)).collect::<Vec<T>>();
    Ok(Dataset::new(cast(d.x()), d.n(), d.p(), cast(d.y()))?)
}
