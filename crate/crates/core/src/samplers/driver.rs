use std::time::Instant;

use rayon::prelude::*;

use super::{step, KernelKind, Workspace};
use crate::error::{Result, ShrinkageError};
use crate::model::{ChainState, Dataset, ModelKind, ModelSpec};
use crate::rng::RngStream;
use crate::scalar::Real;

/// Chain length, burn-in, thinning and seeding for one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub n_iter: usize,
    pub burn_in: usize,
    pub thin: usize,
    pub seed: u64,
    pub stream: u64,
    pub store_beta: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n_iter: 10_000,
            burn_in: 1_000,
            thin: 1,
            seed: 0,
            stream: 0,
            store_beta: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_iter == 0 {
            return Err(ShrinkageError::InvalidConfig("n_iter must be positive".into()));
        }
        if self.burn_in >= self.n_iter {
            return Err(ShrinkageError::InvalidConfig(format!(
                "burn_in ({}) must be smaller than n_iter ({})",
                self.burn_in, self.n_iter
            )));
        }
        if self.thin == 0 {
            return Err(ShrinkageError::InvalidConfig("thin must be positive".into()));
        }
        Ok(())
    }

    /// Number of draws kept: `⌊(n_iter − burn_in) / thin⌋`.
    pub fn stored_draws(&self) -> usize {
        (self.n_iter - self.burn_in) / self.thin
    }
}

/// Hyperparameters of the model a chain was run on.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSummary {
    pub kind: ModelKind,
    pub alpha: f64,
    pub xi: f64,
    pub lambda1: f64,
    pub lambda2: Option<f64>,
    pub num_groups: Option<usize>,
}

impl ModelSummary {
    pub fn of<T: Real>(spec: &ModelSpec<T>) -> Self {
        let (l1, l2) = spec.lambdas();
        Self {
            kind: spec.kind(),
            alpha: spec.alpha.as_f64(),
            xi: spec.xi.as_f64(),
            lambda1: l1.as_f64(),
            lambda2: l2.map(Real::as_f64),
            num_groups: spec.groups().map(|g| g.num_groups()),
        }
    }
}

/// Stored draws of one chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainOutput<T> {
    pub sigma2_draws: Vec<T>,
    /// Row-major `draws × p`, present when `store_beta` was set.
    pub beta_draws: Option<Vec<T>>,
    pub p: usize,
    /// Seconds spent in the iteration loop, burn-in included.
    pub wall_time_seconds: f64,
    pub kernel: KernelKind,
    pub model: ModelSummary,
    pub seed: u64,
    pub stream: u64,
    pub config: RunConfig,
    pub factorizations: u64,
    pub final_state: ChainState<T>,
}

impl<T: Real> ChainOutput<T> {
    pub fn num_draws(&self) -> usize {
        self.sigma2_draws.len()
    }

    pub fn beta_draw(&self, i: usize) -> Option<&[T]> {
        self.beta_draws
            .as_ref()
            .map(|b| &b[i * self.p..(i + 1) * self.p])
    }

    /// Draws of coefficient `j` across iterations.
    pub fn beta_component(&self, j: usize) -> Option<Vec<T>> {
        let b = self.beta_draws.as_ref()?;
        Some(b.iter().skip(j).step_by(self.p).copied().collect())
    }
}

/// Runs a chain from the default initial state (`β = 0`, `σ²` = var(y), scales = 1).
pub fn run_chain<T: Real>(
    kernel: KernelKind,
    spec: &ModelSpec<T>,
    data: &Dataset<T>,
    config: &RunConfig,
) -> Result<ChainOutput<T>> {
    run_chain_from(kernel, spec, data, config, ChainState::initial(spec, data))
}

pub fn run_chain_from<T: Real>(
    kernel: KernelKind,
    spec: &ModelSpec<T>,
    data: &Dataset<T>,
    config: &RunConfig,
    init: ChainState<T>,
) -> Result<ChainOutput<T>> {
    config.validate()?;
    spec.validate(data.p())?;
    crate::error::check_len("initial beta", data.p(), init.beta.len())?;
    let p = data.p();
    let kept = config.stored_draws();
    let mut sigma2_draws = Vec::with_capacity(kept);
    let mut beta_draws = config.store_beta.then(|| Vec::with_capacity(kept * p));

    let mut rng = RngStream::with_stream(config.seed, config.stream);
    let mut ws = Workspace::new(p);
    let mut state = init;

    let start = Instant::now();
    for it in 0..config.n_iter {
        step(kernel, spec, data, &mut state, &mut ws, &mut rng).map_err(|e| e.at_iteration(it))?;
        if let Some(index) = state.beta.iter().position(|b| !b.is_finite()) {
            return Err(ShrinkageError::NonFinite { what: "beta", index }.at_iteration(it));
        }
        if it >= config.burn_in && (it - config.burn_in + 1).is_multiple_of(config.thin) {
            sigma2_draws.push(state.sigma2);
            if let Some(b) = beta_draws.as_mut() {
                b.extend_from_slice(&state.beta);
            }
        }
    }
    let wall_time_seconds = start.elapsed().as_secs_f64();

    Ok(ChainOutput {
        sigma2_draws,
        beta_draws,
        p,
        wall_time_seconds,
        kernel,
        model: ModelSummary::of(spec),
        seed: config.seed,
        stream: config.stream,
        config: config.clone(),
        factorizations: ws.factorizations(),
        final_state: state,
    })
}

/// One chain in a batch of independent runs.
#[derive(Debug, Clone)]
pub struct ChainJob<'a, T> {
    pub kernel: KernelKind,
    pub spec: &'a ModelSpec<T>,
    pub data: &'a Dataset<T>,
    pub config: RunConfig,
}

/// Runs independent chains on the current rayon pool; results keep job order.
pub fn run_chains_parallel<T: Real>(jobs: &[ChainJob<'_, T>]) -> Vec<Result<ChainOutput<T>>> {
    jobs.par_iter()
        .map(|j| run_chain(j.kernel, j.spec, j.data, &j.config))
        .collect()
}
