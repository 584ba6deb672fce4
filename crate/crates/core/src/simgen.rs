//! Synthetic regression datasets for benchmarking the samplers.
//!
//! * `GroupedPoly`: `K` standard normal base variables per row, each expanded
//!   into its raw powers 1..5 (one group of five columns per variable). The
//!   first `p/5` coefficients are t₂ draws.
//! * `AdjacentSimilar`: equicorrelated (ρ = 0.2) normal rows, columns
//!   standardized to mean 0 and squared norm `n`. Coefficient blocks 1 and 3
//!   of size `p/10` are `N(1, 0.1²)`.
//! * `ExtraWide` / `ExtraTall`: the `GroupedPoly` design with exactly five
//!   nonzero t₂ coefficients.
//!
//! Responses are `Y = Xβ* + ε` with standard normal `ε`.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::error::{Result, ShrinkageError};
use crate::model::{Dataset, GroupStructure};
use crate::rng::{sample_std_normal, sample_student_t, RngStream};
use crate::scalar::Real;

/// Polynomial degree of the grouped design; also its group size.
pub const POLY_DEGREE: usize = 5;
/// Nonzero coefficients in the extra wide and extra tall designs.
pub const FIXED_TRUE_COVARIATES: usize = 5;
/// Common correlation between columns of the adjacent-similar design.
pub const EQUICORRELATION: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    GroupedPoly,
    AdjacentSimilar,
    ExtraWide,
    ExtraTall,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::GroupedPoly => "s1",
            ScenarioKind::AdjacentSimilar => "s2",
            ScenarioKind::ExtraWide => "wide",
            ScenarioKind::ExtraTall => "tall",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = ShrinkageError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s1" | "grouped-poly" => Ok(ScenarioKind::GroupedPoly),
            "s2" | "adjacent-similar" => Ok(ScenarioKind::AdjacentSimilar),
            "wide" | "extra-wide" => Ok(ScenarioKind::ExtraWide),
            "tall" | "extra-tall" => Ok(ScenarioKind::ExtraTall),
            other => Err(ShrinkageError::InvalidConfig(format!(
                "unknown scenario '{other}' (expected s1, s2, wide or tall)"
            ))),
        }
    }
}

/// Test hook: `noise: false` drops `ε` so that `Y = Xβ*` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenOptions {
    pub noise: bool,
}

impl Default for GenOptions {
    fn default() -> Self {
        Self { noise: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScenarioSpec {
    pub scenario: ScenarioKind,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
}

impl ScenarioSpec {
    /// Grouped-polynomial design with `k` base variables (`p = 5k`).
    pub fn grouped_poly(n: usize, k: usize, seed: u64) -> Self {
        Self {
            scenario: ScenarioKind::GroupedPoly,
            n,
            p: POLY_DEGREE * k,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.p == 0 {
            return Err(ShrinkageError::InvalidConfig(format!(
                "scenario {} needs n ≥ 1 and p ≥ 1 (got n = {}, p = {})",
                self.scenario, self.n, self.p
            )));
        }
        let (modulus, what) = match self.scenario {
            ScenarioKind::AdjacentSimilar => (10, "10"),
            _ => (POLY_DEGREE, "5"),
        };
        if !self.p.is_multiple_of(modulus) {
            return Err(ShrinkageError::InvalidConfig(format!(
                "scenario {} needs p divisible by {what}, got {}",
                self.scenario, self.p
            )));
        }
        Ok(())
    }

    pub fn generate<T: Real>(&self) -> Result<SimulatedDataset<T>> {
        self.generate_with(GenOptions::default())
    }

    pub fn generate_with<T: Real>(&self, opts: GenOptions) -> Result<SimulatedDataset<T>> {
        self.validate()?;
        let mut rng = RngStream::new(self.seed);
        let k = self.p / POLY_DEGREE;
        match self.scenario {
            ScenarioKind::GroupedPoly => gen_scenario1_with(self.n, k, &mut rng, opts),
            ScenarioKind::AdjacentSimilar => gen_scenario2_with(self.n, self.p, &mut rng, opts),
            ScenarioKind::ExtraWide => gen_extra_wide_with(self.n, self.p, &mut rng, opts),
            ScenarioKind::ExtraTall => gen_extra_tall_with(self.n, self.p, &mut rng, opts),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedDataset<T> {
    pub dataset: Dataset<T>,
    pub beta_star: Vec<T>,
    pub groups: Option<GroupStructure>,
}

impl<T: Real> SimulatedDataset<T> {
    /// Writes `y,x1,...,xp` rows with round-trippable floats.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        let d = &self.dataset;
        write!(out, "y")?;
        for j in 1..=d.p() {
            write!(out, ",x{j}")?;
        }
        writeln!(out)?;
        for i in 0..d.n() {
            write!(out, "{}", d.y()[i].as_f64())?;
            for v in d.x_row(i) {
                write!(out, ",{}", v.as_f64())?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

fn check_dims(n: usize, p: usize) -> Result<()> {
    if n == 0 || p == 0 {
        return Err(ShrinkageError::InvalidConfig(format!(
            "need n ≥ 1 and p ≥ 1 (got n = {n}, p = {p})"
        )));
    }
    Ok(())
}

fn poly_design(n: usize, k: usize, rng: &mut RngStream) -> Vec<f64> {
    let p = POLY_DEGREE * k;
    let mut x = vec![0.0; n * p];
    for row in x.chunks_exact_mut(p) {
        for group in row.chunks_exact_mut(POLY_DEGREE) {
            let z = sample_std_normal(rng);
            let mut pow = 1.0;
            for v in group.iter_mut() {
                pow *= z;
                *v = pow;
            }
        }
    }
    x
}

fn t2_leading(p: usize, nonzero: usize, rng: &mut RngStream) -> Vec<f64> {
    let mut beta = vec![0.0; p];
    for b in beta.iter_mut().take(nonzero) {
        *b = sample_student_t(2.0, rng).expect("df = 2 is valid");
    }
    beta
}

fn finish<T: Real>(
    x: Vec<f64>,
    n: usize,
    p: usize,
    beta_star: Vec<f64>,
    groups: Option<GroupStructure>,
    rng: &mut RngStream,
    opts: GenOptions,
) -> Result<SimulatedDataset<T>> {
    let y: Vec<f64> = x
        .chunks_exact(p)
        .map(|row| {
            let mean = crate::scalar::dot(row, &beta_star);
            if opts.noise {
                mean + sample_std_normal(rng)
            } else {
                mean
            }
        })
        .collect();
    let cast = |v: Vec<f64>| v.into_iter().map(T::lit).collect::<Vec<T>>();
    Ok(SimulatedDataset {
        dataset: Dataset::new(cast(x), n, p, cast(y))?,
        beta_star: cast(beta_star),
        groups,
    })
}

fn grouped_poly<T: Real>(
    n: usize,
    k: usize,
    nonzero: usize,
    rng: &mut RngStream,
    opts: GenOptions,
) -> Result<SimulatedDataset<T>> {
    let p = POLY_DEGREE * k;
    check_dims(n, p)?;
    let x = poly_design(n, k, rng);
    let beta = t2_leading(p, nonzero.min(p), rng);
    finish(x, n, p, beta, Some(GroupStructure::uniform(k, POLY_DEGREE)?), rng, opts)
}

pub fn gen_scenario1<T: Real>(n: usize, k: usize, rng: &mut RngStream) -> Result<SimulatedDataset<T>> {
    gen_scenario1_with(n, k, rng, GenOptions::default())
}

pub fn gen_scenario1_with<T: Real>(
    n: usize,
    k: usize,
    rng: &mut RngStream,
    opts: GenOptions,
) -> Result<SimulatedDataset<T>> {
    grouped_poly(n, k, k, rng, opts)
}

fn check_multiple_of_five(p: usize) -> Result<usize> {
    if p == 0 || !p.is_multiple_of(POLY_DEGREE) {
        return Err(ShrinkageError::InvalidConfig(format!(
            "p must be a positive multiple of 5, got {p}"
        )));
    }
    Ok(p / POLY_DEGREE)
}

pub fn gen_extra_wide<T: Real>(n: usize, p: usize, rng: &mut RngStream) -> Result<SimulatedDataset<T>> {
    gen_extra_wide_with(n, p, rng, GenOptions::default())
}

pub fn gen_extra_wide_with<T: Real>(
    n: usize,
    p: usize,
    rng: &mut RngStream,
    opts: GenOptions,
) -> Result<SimulatedDataset<T>> {
    let k = check_multiple_of_five(p)?;
    grouped_poly(n, k, FIXED_TRUE_COVARIATES, rng, opts)
}

pub fn gen_extra_tall<T: Real>(n: usize, p: usize, rng: &mut RngStream) -> Result<SimulatedDataset<T>> {
    gen_extra_tall_with(n, p, rng, GenOptions::default())
}

pub fn gen_extra_tall_with<T: Real>(
    n: usize,
    p: usize,
    rng: &mut RngStream,
    opts: GenOptions,
) -> Result<SimulatedDataset<T>> {
    let k = check_multiple_of_five(p)?;
    grouped_poly(n, k, FIXED_TRUE_COVARIATES, rng, opts)
}

/// `n × p` rows from `N(0, (1−ρ)I + ρ11ᵀ)` via `√ρ z₀ + √(1−ρ) z_j`.
pub fn equicorrelated_rows(n: usize, p: usize, rho: f64, rng: &mut RngStream) -> Vec<f64> {
    let (a, b) = (rho.sqrt(), (1.0 - rho).sqrt());
    let mut x = vec![0.0; n * p];
    for row in x.chunks_exact_mut(p) {
        let z0 = sample_std_normal(rng);
        for v in row.iter_mut() {
            *v = a * z0 + b * sample_std_normal(rng);
        }
    }
    x
}

/// Centers each column of the row-major `n × p` matrix and rescales it to squared norm `n`.
pub fn standardize_columns(x: &mut [f64], n: usize, p: usize) -> Result<()> {
    crate::error::check_len("design matrix", n * p, x.len())?;
    let nf = n as f64;
    for j in 0..p {
        let col = || (0..n).map(|i| i * p + j);
        let first = x[j];
        if col().all(|idx| x[idx] == first) {
            return Err(ShrinkageError::ConstantColumn { column: j });
        }
        let mean = col().map(|idx| x[idx]).sum::<f64>() / nf;
        let ss: f64 = col().map(|idx| (x[idx] - mean).powi(2)).sum();
        let scale = (nf / ss).sqrt();
        for idx in col() {
            x[idx] = (x[idx] - mean) * scale;
        }
    }
    Ok(())
}

pub fn gen_scenario2<T: Real>(n: usize, p: usize, rng: &mut RngStream) -> Result<SimulatedDataset<T>> {
    gen_scenario2_with(n, p, rng, GenOptions::default())
}

pub fn gen_scenario2_with<T: Real>(
    n: usize,
    p: usize,
    rng: &mut RngStream,
    opts: GenOptions,
) -> Result<SimulatedDataset<T>> {
    check_dims(n, p)?;
    if !p.is_multiple_of(10) {
        return Err(ShrinkageError::InvalidConfig(format!(
            "p must be divisible by 10, got {p}"
        )));
    }
    let mut x = equicorrelated_rows(n, p, EQUICORRELATION, rng);
    standardize_columns(&mut x, n, p)?;
    let block = p / 10;
    let mut beta = vec![0.0; p];
    for j in (0..block).chain(2 * block..3 * block) {
        beta[j] = 1.0 + 0.1 * sample_std_normal(rng);
    }
    finish(x, n, p, beta, None, rng, opts)
}
