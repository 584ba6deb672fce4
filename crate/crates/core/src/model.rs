//! Shrinkage model types and the deterministic constructions every sampler
//! shares: prior covariance builders, the posterior precision
//! `A = XᵀX + Σ⁻¹`, and the Inverse-Gamma parameter maps for `σ²`.

use std::fmt;

use crate::error::{check_len, check_positive_f64, Result, ShrinkageError};
use crate::linalg::{Cholesky, PrecisionFactor, SymMatrix, SymTridiagonal};
use crate::scalar::{dot, sq_norm, Real};

/// Scale parameters at or below this value are treated as degenerate.
pub const SCALE_FLOOR: f64 = 1e-300;

/// Regression data: response `y` and row-major `n × p` design `x`.
///
/// The Gram matrix `XᵀX`, `XᵀY` and `YᵀY` are computed once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    y: Vec<T>,
    x: Vec<T>,
    n: usize,
    p: usize,
    gram: SymMatrix<T>,
    xty: Vec<T>,
    yty: T,
    identity_design: bool,
}

impl<T: Real> Dataset<T> {
    pub fn new(x: Vec<T>, n: usize, p: usize, y: Vec<T>) -> Result<Self> {
        if n == 0 || p == 0 {
            return Err(ShrinkageError::InvalidConfig(format!(
                "dataset dimensions must be positive, got n = {n}, p = {p}"
            )));
        }
        check_len("response length", n, y.len())?;
        check_len("design buffer (n * p)", n * p, x.len())?;
        if let Some(index) = y.iter().position(|v| !v.is_finite()) {
            return Err(ShrinkageError::NonFinite { what: "response", index });
        }
        if let Some(index) = x.iter().position(|v| !v.is_finite()) {
            return Err(ShrinkageError::NonFinite { what: "design", index });
        }

        let mut gram = SymMatrix::zeros(p);
        for row in x.chunks_exact(p) {
            for i in 0..p {
                let ri = row[i];
                if ri == T::zero() {
                    continue;
                }
                for j in 0..=i {
                    let v = gram.get(i, j) + ri * row[j];
                    gram.set(i, j, v);
                }
            }
        }
        let mut xty = vec![T::zero(); p];
        for (row, &yi) in x.chunks_exact(p).zip(&y) {
            for (acc, &xij) in xty.iter_mut().zip(row) {
                *acc += xij * yi;
            }
        }
        let yty = sq_norm(&y);
        let identity_design = n == p
            && x.chunks_exact(p).enumerate().all(|(i, row)| {
                row.iter()
                    .enumerate()
                    .all(|(j, &v)| v == if i == j { T::one() } else { T::zero() })
            });
        Ok(Self {
            y,
            x,
            n,
            p,
            gram,
            xty,
            yty,
            identity_design,
        })
    }

    /// Builds a dataset from design rows.
    pub fn from_rows(rows: &[Vec<T>], y: Vec<T>) -> Result<Self> {
        let n = rows.len();
        let p = rows.first().map_or(0, Vec::len);
        let mut x = Vec::with_capacity(n * p);
        for row in rows {
            check_len("design row length", p, row.len())?;
            x.extend_from_slice(row);
        }
        Self::new(x, n, p, y)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn y(&self) -> &[T] {
        &self.y
    }

    /// Row-major design buffer.
    pub fn x(&self) -> &[T] {
        &self.x
    }

    pub fn x_row(&self, i: usize) -> &[T] {
        &self.x[i * self.p..(i + 1) * self.p]
    }

    pub fn gram(&self) -> &SymMatrix<T> {
        &self.gram
    }

    pub fn xty(&self) -> &[T] {
        &self.xty
    }

    pub fn yty(&self) -> T {
        self.yty
    }

    /// True when `X` is the `n × n` identity (signal-denoising data).
    pub fn is_identity_design(&self) -> bool {
        self.identity_design
    }

    /// `‖Y − Xβ‖²`, evaluated row by row.
    pub fn residual_sq_norm(&self, beta: &[T]) -> T {
        self.x
            .chunks_exact(self.p)
            .zip(&self.y)
            .map(|(row, &yi)| {
                let r = yi - dot(row, beta);
                r * r
            })
            .sum()
    }

    /// Unbiased sample variance of `y`; `None` for `n < 2`.
    pub fn response_variance(&self) -> Option<T> {
        if self.n < 2 {
            return None;
        }
        let n = T::from_usize_lossy(self.n);
        let mean = self.y.iter().copied().sum::<T>() / n;
        let ss: T = self.y.iter().map(|&v| (v - mean) * (v - mean)).sum();
        Some(ss / (n - T::one()))
    }
}

/// Consecutive groups of explanatory variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl GroupStructure {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(ShrinkageError::InvalidConfig(
                "group structure needs at least one group".into(),
            ));
        }
        if let Some(k) = sizes.iter().position(|&m| m == 0) {
            return Err(ShrinkageError::InvalidConfig(format!(
                "group {k} has size 0"
            )));
        }
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for &m in &sizes {
            offsets.push(acc);
            acc += m;
        }
        Ok(Self { sizes, offsets })
    }

    /// `k` groups of equal size `m`.
    pub fn uniform(k: usize, m: usize) -> Result<Self> {
        Self::new(vec![m; k])
    }

    pub fn num_groups(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Total number of coefficients covered.
    pub fn p(&self) -> usize {
        self.offsets.last().copied().unwrap_or(0) + self.sizes.last().copied().unwrap_or(0)
    }

    pub fn range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k] + self.sizes[k]
    }

    pub fn check_covers(&self, p: usize) -> Result<()> {
        if self.p() != p {
            return Err(ShrinkageError::InvalidConfig(format!(
                "group sizes sum {} ≠ p {}",
                self.p(),
                p
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    GroupLasso,
    SparseGroupLasso,
    FusedLasso,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::GroupLasso => "group-lasso",
            ModelKind::SparseGroupLasso => "sparse-group-lasso",
            ModelKind::FusedLasso => "fused-lasso",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shrinkage penalty and its hyperparameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Penalty<T> {
    GroupLasso {
        lambda: T,
        groups: GroupStructure,
    },
    SparseGroupLasso {
        lambda1: T,
        lambda2: T,
        groups: GroupStructure,
    },
    FusedLasso {
        lambda1: T,
        lambda2: T,
    },
}

/// A complete model: shrinkage penalty plus the `Inverse-Gamma(α, ξ)` prior on `σ²`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec<T> {
    pub penalty: Penalty<T>,
    pub alpha: T,
    pub xi: T,
}

impl<T: Real> ModelSpec<T> {
    pub fn group_lasso(lambda: T, groups: GroupStructure) -> Result<Self> {
        check_positive_f64("lambda", lambda.as_f64())?;
        Ok(Self {
            penalty: Penalty::GroupLasso { lambda, groups },
            alpha: T::zero(),
            xi: T::zero(),
        })
    }

    pub fn sparse_group_lasso(lambda1: T, lambda2: T, groups: GroupStructure) -> Result<Self> {
        check_positive_f64("lambda1", lambda1.as_f64())?;
        check_positive_f64("lambda2", lambda2.as_f64())?;
        Ok(Self {
            penalty: Penalty::SparseGroupLasso {
                lambda1,
                lambda2,
                groups,
            },
            alpha: T::zero(),
            xi: T::zero(),
        })
    }

    pub fn fused_lasso(lambda1: T, lambda2: T) -> Result<Self> {
        check_positive_f64("lambda1", lambda1.as_f64())?;
        check_positive_f64("lambda2", lambda2.as_f64())?;
        Ok(Self {
            penalty: Penalty::FusedLasso { lambda1, lambda2 },
            alpha: T::zero(),
            xi: T::zero(),
        })
    }

    /// Sets the `Inverse-Gamma(α, ξ)` hyperparameters; both must be `≥ 0`.
    pub fn with_sigma_prior(mut self, alpha: T, xi: T) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("xi", xi)] {
            if !(v.is_finite() && v >= T::zero()) {
                return Err(ShrinkageError::InvalidParameter {
                    name,
                    value: v.as_f64(),
                    reason: "must be finite and non-negative",
                });
            }
        }
        self.alpha = alpha;
        self.xi = xi;
        Ok(self)
    }

    pub fn kind(&self) -> ModelKind {
        match self.penalty {
            Penalty::GroupLasso { .. } => ModelKind::GroupLasso,
            Penalty::SparseGroupLasso { .. } => ModelKind::SparseGroupLasso,
            Penalty::FusedLasso { .. } => ModelKind::FusedLasso,
        }
    }

    pub fn groups(&self) -> Option<&GroupStructure> {
        match &self.penalty {
            Penalty::GroupLasso { groups, .. } | Penalty::SparseGroupLasso { groups, .. } => {
                Some(groups)
            }
            Penalty::FusedLasso { .. } => None,
        }
    }

    /// `(λ₁, λ₂)`; group lasso reports `(λ, None)`.
    pub fn lambdas(&self) -> (T, Option<T>) {
        match self.penalty {
            Penalty::GroupLasso { lambda, .. } => (lambda, None),
            Penalty::SparseGroupLasso {
                lambda1, lambda2, ..
            }
            | Penalty::FusedLasso { lambda1, lambda2 } => (lambda1, Some(lambda2)),
        }
    }

    /// Checks the specification against `p` coefficients.
    pub fn validate(&self, p: usize) -> Result<()> {
        match &self.penalty {
            Penalty::GroupLasso { groups, .. } | Penalty::SparseGroupLasso { groups, .. } => {
                groups.check_covers(p)
            }
            Penalty::FusedLasso { .. } if p < 2 => Err(ShrinkageError::InvalidConfig(format!(
                "fused lasso requires p ≥ 2, got p = {p}"
            ))),
            Penalty::FusedLasso { .. } => Ok(()),
        }
    }
}

/// Latent mixing variances. Unused components are empty.
#[derive(Debug, Clone, PartialEq)]
pub struct LatentScales<T> {
    /// Per group (group models) or per coefficient (fused).
    pub tau2: Vec<T>,
    /// Per coefficient, sparse group lasso only.
    pub gamma2: Vec<T>,
    /// Per successive difference, fused lasso only.
    pub omega2: Vec<T>,
}

impl<T: Real> LatentScales<T> {
    /// All scales equal to one, shaped for `spec` with `p` coefficients.
    pub fn ones(spec: &ModelSpec<T>, p: usize) -> Self {
        let one = |len| vec![T::one(); len];
        match &spec.penalty {
            Penalty::GroupLasso { groups, .. } => Self {
                tau2: one(groups.num_groups()),
                gamma2: Vec::new(),
                omega2: Vec::new(),
            },
            Penalty::SparseGroupLasso { groups, .. } => Self {
                tau2: one(groups.num_groups()),
                gamma2: one(p),
                omega2: Vec::new(),
            },
            Penalty::FusedLasso { .. } => Self {
                tau2: one(p),
                gamma2: Vec::new(),
                omega2: one(p.saturating_sub(1)),
            },
        }
    }

    pub fn check_positive(&self) -> Result<()> {
        for (what, v) in [
            ("tau2", &self.tau2),
            ("gamma2", &self.gamma2),
            ("omega2", &self.omega2),
        ] {
            check_all_positive(what, v)?;
        }
        Ok(())
    }
}

/// Current Gibbs state `(β, σ², η)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState<T> {
    pub beta: Vec<T>,
    pub sigma2: T,
    pub scales: LatentScales<T>,
}

impl<T: Real> ChainState<T> {
    /// `β = 0`, `σ²` = sample variance of `y` (1 if unavailable or zero), scales = 1.
    pub fn initial(spec: &ModelSpec<T>, data: &Dataset<T>) -> Self {
        let sigma2 = data
            .response_variance()
            .filter(|v| *v > T::zero() && v.is_finite())
            .unwrap_or_else(T::one);
        Self {
            beta: vec![T::zero(); data.p()],
            sigma2,
            scales: LatentScales::ones(spec, data.p()),
        }
    }
}

/// Diagonal matrix stored by its diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonal<T>(pub Vec<T>);

impl<T: Real> Diagonal<T> {
    pub fn entries(&self) -> &[T] {
        &self.0
    }

    pub fn inverse(&self) -> Diagonal<T> {
        Diagonal(self.0.iter().map(|v| v.recip()).collect())
    }

    pub fn to_dense(&self) -> SymMatrix<T> {
        let mut m = SymMatrix::zeros(self.0.len());
        for (i, &v) in self.0.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }
}

/// Prior precision `Σ_η⁻¹` in the structured form each model produces.
#[derive(Debug, Clone, PartialEq)]
pub enum PriorPrecision<T> {
    Diagonal(Vec<T>),
    Tridiagonal(SymTridiagonal<T>),
}

impl<T: Real> PriorPrecision<T> {
    pub fn dim(&self) -> usize {
        match self {
            PriorPrecision::Diagonal(d) => d.len(),
            PriorPrecision::Tridiagonal(t) => t.dim(),
        }
    }

    /// `βᵀ Σ⁻¹ β`
    pub fn quad_form(&self, beta: &[T]) -> T {
        match self {
            PriorPrecision::Diagonal(d) => d.iter().zip(beta).map(|(w, b)| *w * *b * *b).sum(),
            PriorPrecision::Tridiagonal(t) => t.quad_form(beta),
        }
    }

    /// Adds this matrix onto `a` in place.
    pub fn add_to(&self, a: &mut SymMatrix<T>) {
        match self {
            PriorPrecision::Diagonal(d) => {
                for (i, &v) in d.iter().enumerate() {
                    a.add_to_diag(i, v);
                }
            }
            PriorPrecision::Tridiagonal(t) => {
                for (i, &v) in t.diag.iter().enumerate() {
                    a.add_to_diag(i, v);
                }
                for (i, &v) in t.off.iter().enumerate() {
                    let cur = a.get(i + 1, i);
                    a.set(i + 1, i, cur + v);
                }
            }
        }
    }

    pub fn to_dense(&self) -> SymMatrix<T> {
        let mut m = SymMatrix::zeros(self.dim());
        self.add_to(&mut m);
        m
    }
}

fn check_all_positive<T: Real>(what: &'static str, v: &[T]) -> Result<()> {
    for (index, &x) in v.iter().enumerate() {
        if !(x.is_finite() && x > T::zero()) {
            return Err(ShrinkageError::NonPositive {
                what,
                index,
                value: x.as_f64(),
            });
        }
    }
    Ok(())
}

/// Group lasso prior covariance `D_τ`: `τ_k²` repeated `m_k` times.
pub fn build_group_cov<T: Real>(scales: &LatentScales<T>, groups: &GroupStructure) -> Result<Diagonal<T>> {
    check_len("tau2 (one per group)", groups.num_groups(), scales.tau2.len())?;
    check_all_positive("tau2", &scales.tau2)?;
    let mut d = Vec::with_capacity(groups.p());
    for (&t, &m) in scales.tau2.iter().zip(groups.sizes()) {
        d.extend(std::iter::repeat_n(t, m));
    }
    Ok(Diagonal(d))
}

/// Diagonal of `V_{τ,γ}⁻¹`: entry `j` of group `k` is `1/τ_k² + 1/γ_{k,j}²`.
pub fn sparse_group_precision_diag<T: Real>(
    scales: &LatentScales<T>,
    groups: &GroupStructure,
) -> Result<Vec<T>> {
    check_len("tau2 (one per group)", groups.num_groups(), scales.tau2.len())?;
    check_len("gamma2 (one per coefficient)", groups.p(), scales.gamma2.len())?;
    check_all_positive("tau2", &scales.tau2)?;
    check_all_positive("gamma2", &scales.gamma2)?;
    let mut out = Vec::with_capacity(groups.p());
    for k in 0..groups.num_groups() {
        let inv_tau = scales.tau2[k].recip();
        out.extend(groups.range(k).map(|j| inv_tau + scales.gamma2[j].recip()));
    }
    Ok(out)
}

/// Sparse group lasso prior covariance `V_{τ,γ}`.
pub fn build_sparse_group_cov<T: Real>(
    scales: &LatentScales<T>,
    groups: &GroupStructure,
) -> Result<Diagonal<T>> {
    Ok(Diagonal(sparse_group_precision_diag(scales, groups)?).inverse())
}

/// Fused lasso prior precision `Σ_{τ,ω}⁻¹`.
pub fn build_fused_precision<T: Real>(scales: &LatentScales<T>) -> Result<SymTridiagonal<T>> {
    let p = scales.tau2.len();
    if p < 2 {
        return Err(ShrinkageError::InvalidConfig(format!(
            "fused precision requires p ≥ 2, got p = {p}"
        )));
    }
    check_len("omega2 (p - 1 differences)", p - 1, scales.omega2.len())?;
    check_all_positive("tau2", &scales.tau2)?;
    check_all_positive("omega2", &scales.omega2)?;
    let inv_omega: Vec<T> = scales.omega2.iter().map(|w| w.recip()).collect();
    let diag = (0..p)
        .map(|j| {
            let mut d = scales.tau2[j].recip();
            if j > 0 {
                d += inv_omega[j - 1];
            }
            if j + 1 < p {
                d += inv_omega[j];
            }
            d
        })
        .collect();
    let off = inv_omega.iter().map(|&w| -w).collect();
    Ok(SymTridiagonal { diag, off })
}

/// `Σ_η⁻¹` for the model in `spec` at the given latent scales.
pub fn prior_precision<T: Real>(spec: &ModelSpec<T>, scales: &LatentScales<T>) -> Result<PriorPrecision<T>> {
    match &spec.penalty {
        Penalty::GroupLasso { groups, .. } => Ok(PriorPrecision::Diagonal(
            build_group_cov(scales, groups)?.inverse().0,
        )),
        Penalty::SparseGroupLasso { groups, .. } => Ok(PriorPrecision::Diagonal(
            sparse_group_precision_diag(scales, groups)?,
        )),
        Penalty::FusedLasso { .. } => Ok(PriorPrecision::Tridiagonal(build_fused_precision(scales)?)),
    }
}

/// `A_η = XᵀX + Σ_η⁻¹`, written into `out`.
pub fn assemble_posterior_precision_into<T: Real>(
    data: &Dataset<T>,
    prior: &PriorPrecision<T>,
    out: &mut SymMatrix<T>,
) -> Result<()> {
    check_len("prior precision dimension", data.p(), prior.dim())?;
    if out.dim() != data.p() {
        *out = SymMatrix::zeros(data.p());
    }
    out.copy_from(data.gram());
    prior.add_to(out);
    Ok(())
}

pub fn assemble_posterior_precision<T: Real>(
    data: &Dataset<T>,
    prior: &PriorPrecision<T>,
) -> Result<SymMatrix<T>> {
    let mut a = SymMatrix::zeros(data.p());
    assemble_posterior_precision_into(data, prior, &mut a)?;
    Ok(a)
}

/// Factors `A_η`, taking the tridiagonal route when `X = I` and the prior is tridiagonal.
pub fn factor_posterior_precision<T: Real>(
    data: &Dataset<T>,
    prior: &PriorPrecision<T>,
) -> Result<PrecisionFactor<T>> {
    check_len("prior precision dimension", data.p(), prior.dim())?;
    if let (true, PriorPrecision::Tridiagonal(t)) = (data.is_identity_design(), prior) {
        let shifted = SymTridiagonal {
            diag: t.diag.iter().map(|&d| d + T::one()).collect(),
            off: t.off.clone(),
        };
        return Ok(PrecisionFactor::Tridiagonal(
            crate::linalg::TridiagCholesky::factor(&shifted, "posterior precision A")?,
        ));
    }
    let a = assemble_posterior_precision(data, prior)?;
    Ok(PrecisionFactor::Dense(Cholesky::factor(&a, "posterior precision A")?))
}

/// Parameters of an `Inverse-Gamma(shape, scale)` law, density `∝ x^{-shape-1} e^{-scale/x}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvGammaParams<T> {
    pub shape: T,
    pub scale: T,
}

impl<T: Real> InvGammaParams<T> {
    /// `scale / (shape - 1)`, defined for `shape > 1`.
    pub fn mean(&self) -> Option<T> {
        (self.shape > T::one()).then(|| self.scale / (self.shape - T::one()))
    }
}

fn guard_scale<T: Real>(what: &'static str, scale: T, xi: T, reference: T) -> Result<T> {
    let v = scale.as_f64();
    if !(v > SCALE_FLOOR) || !v.is_finite() {
        return Err(ShrinkageError::DegenerateScale { what, value: v });
    }
    if xi == T::zero() && v < 1e-10 * reference.as_f64().max(SCALE_FLOOR) {
        log::warn!("{what} scale {v:e} is numerically tiny with xi = 0");
    }
    Ok(scale)
}

/// Posterior mean `A⁻¹XᵀY` from a factor of `A`.
pub fn posterior_mean_from_factor<T: Real>(data: &Dataset<T>, factor: &PrecisionFactor<T>) -> Vec<T> {
    factor.solve(data.xty())
}

/// `σ² | η, Y` (β integrated out): shape `n/2 + α`, scale `Yᵀ(I − XA⁻¹Xᵀ)Y/2 + ξ`.
///
/// The quadratic form is evaluated as `‖Y − Xμ‖² + μᵀΣ⁻¹μ` with `μ = A⁻¹XᵀY`,
/// a sum of non-negative terms.
pub fn marginal_sigma2_from_mean<T: Real>(
    data: &Dataset<T>,
    prior: &PriorPrecision<T>,
    mean: &[T],
    alpha: T,
    xi: T,
) -> Result<InvGammaParams<T>> {
    let half = T::lit(0.5);
    let quad = data.residual_sq_norm(mean) + prior.quad_form(mean);
    let scale = guard_scale("marginal sigma2", half * quad + xi, xi, data.yty())?;
    Ok(InvGammaParams {
        shape: half * T::from_usize_lossy(data.n()) + alpha,
        scale,
    })
}

pub fn marginal_sigma2_params<T: Real>(
    data: &Dataset<T>,
    prior: &PriorPrecision<T>,
    alpha: T,
    xi: T,
) -> Result<InvGammaParams<T>> {
    let factor = factor_posterior_precision(data, prior)?;
    let mean = posterior_mean_from_factor(data, &factor);
    marginal_sigma2_from_mean(data, prior, &mean, alpha, xi)
}

/// `σ² | β, η, Y`: shape `(n + p + 2α)/2`, scale `(‖Y − Xβ‖² + βᵀΣ⁻¹β + 2ξ)/2`.
pub fn conditional_sigma2_params<T: Real>(
    data: &Dataset<T>,
    beta: &[T],
    prior: &PriorPrecision<T>,
    alpha: T,
    xi: T,
) -> Result<InvGammaParams<T>> {
    check_len("beta", data.p(), beta.len())?;
    check_len("prior precision dimension", data.p(), prior.dim())?;
    let half = T::lit(0.5);
    let quad = data.residual_sq_norm(beta) + prior.quad_form(beta);
    let scale = guard_scale("conditional sigma2", half * quad + xi, xi, data.yty())?;
    let np = T::from_usize_lossy(data.n() + data.p());
    Ok(InvGammaParams {
        shape: half * np + alpha,
        scale,
    })
}

/// `β | σ², η, Y ~ N(A⁻¹XᵀY, σ² A⁻¹)`, kept in factored form.
#[derive(Debug, Clone)]
pub struct BetaConditional<T> {
    pub mean: Vec<T>,
    pub factor: PrecisionFactor<T>,
    pub sigma2: T,
}

impl<T: Real> BetaConditional<T> {
    /// Materializes `σ² A⁻¹`.
    pub fn covariance(&self) -> SymMatrix<T> {
        let p = self.factor.dim();
        let mut cov = SymMatrix::zeros(p);
        let mut e = vec![T::zero(); p];
        for j in 0..p {
            e.iter_mut().for_each(|v| *v = T::zero());
            e[j] = T::one();
            let col = self.factor.solve(&e);
            for (i, v) in col.into_iter().enumerate().skip(j) {
                cov.set(i, j, v * self.sigma2);
            }
        }
        cov
    }
}

pub fn beta_conditional_params<T: Real>(
    data: &Dataset<T>,
    prior: &PriorPrecision<T>,
    sigma2: T,
) -> Result<BetaConditional<T>> {
    check_positive_f64("sigma2", sigma2.as_f64())?;
    let factor = factor_posterior_precision(data, prior)?;
    let mean = posterior_mean_from_factor(data, &factor);
    Ok(BetaConditional {
        mean,
        factor,
        sigma2,
    })
}
