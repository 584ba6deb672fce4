use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shrinkage_core::simgen::ScenarioKind;
use shrinkage_core::{KernelKind, ModelKind};

/// Default chain length and burn-in of a comparison run.
pub const DEFAULT_ITERS: usize = 10_000;
pub const DEFAULT_BURNIN: usize = 1_000;
/// Chain length selected by `--long-run`.
pub const LONG_RUN_ITERS: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "shrinkage", version, about = "Gibbs samplers for Bayesian shrinkage regression")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one chain and write a JSON diagnostics report.
    Run(RunArgs),
    /// Run a replicated grid of simulated datasets and write per-chain and aggregate CSVs.
    Bench(BenchArgs),
    /// Generate a simulated dataset as CSV.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    GroupLasso,
    SparseGroupLasso,
    FusedLasso,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::GroupLasso => ModelKind::GroupLasso,
            ModelArg::SparseGroupLasso => ModelKind::SparseGroupLasso,
            ModelArg::FusedLasso => ModelKind::FusedLasso,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    #[value(name = "2bg")]
    TwoBlock,
    #[value(name = "3bg")]
    ThreeBlock,
}

impl From<KernelArg> for KernelKind {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::TwoBlock => KernelKind::TwoBlock,
            KernelArg::ThreeBlock => KernelKind::ThreeBlock,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    S1,
    S2,
    Wide,
    Tall,
}

impl From<ScenarioArg> for ScenarioKind {
    fn from(s: ScenarioArg) -> Self {
        match s {
            ScenarioArg::S1 => ScenarioKind::GroupedPoly,
            ScenarioArg::S2 => ScenarioKind::AdjacentSimilar,
            ScenarioArg::Wide => ScenarioKind::ExtraWide,
            ScenarioArg::Tall => ScenarioKind::ExtraTall,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    F64,
    F32,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Group lasso λ; for the two-parameter models, sets λ₁ = λ₂.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub lambda1: Option<f64>,
    #[arg(long)]
    pub lambda2: Option<f64>,
    /// Inverse-gamma shape of the σ² prior (0 gives an improper prior).
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    /// Inverse-gamma scale of the σ² prior (0 gives an improper prior).
    #[arg(long, default_value_t = 0.0)]
    pub xi: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ChainArgs {
    /// Total iterations, burn-in included [default: 10000, or 100000 with --long-run]
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BURNIN)]
    pub burnin: usize,
    #[arg(long, default_value_t = 1)]
    pub thin: usize,
    #[arg(long)]
    pub long_run: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl ChainArgs {
    pub fn iters(&self) -> usize {
        self.iters
            .unwrap_or(if self.long_run { LONG_RUN_ITERS } else { DEFAULT_ITERS })
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub kernel: KernelArg,
    /// Dataset CSV (response plus covariates).
    #[arg(long, conflicts_with = "scenario")]
    pub data: Option<PathBuf>,
    /// One-based index of the response column in --data.
    #[arg(long, default_value_t = 1)]
    pub response_col: usize,
    /// Treat --data as a response-only file with identity design.
    #[arg(long)]
    pub identity_design: bool,
    /// Group sizes, e.g. 5,5,5.
    #[arg(long)]
    pub groups: Option<String>,
    #[arg(long, value_enum, required_unless_present = "data")]
    pub scenario: Option<ScenarioArg>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Base variables of the grouped-polynomial design (p = 5K).
    #[arg(long = "K", alias = "k")]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    /// Seed of the simulated dataset [default: derived from --seed]
    #[arg(long)]
    pub data_seed: Option<u64>,
    #[command(flatten)]
    pub chain: ChainArgs,
    #[arg(long, value_enum, default_value = "f64")]
    pub precision: Precision,
    /// JSON report path [default: stdout]
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Write post-burn-in draws of σ² and β to this CSV.
    #[arg(long)]
    pub draws: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "2bg,3bg")]
    pub kernels: Vec<KernelArg>,
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long = "K", alias = "k", value_delimiter = ',', conflicts_with = "p")]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<usize>,
    /// Group sizes for group models on the adjacent-similar design, e.g. 10,10,10.
    #[arg(long)]
    pub groups: Option<String>,
    /// Replications per grid cell.
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[command(flatten)]
    pub chain: ChainArgs,
    /// Worker threads across replications.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Raw per-chain CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Aggregate per-cell CSV.
    #[arg(long)]
    pub aggregate: Option<PathBuf>,
    /// Leave timing columns empty so that repeated runs are byte-identical.
    #[arg(long)]
    pub omit_timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long = "K", alias = "k", conflicts_with = "p")]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Dataset CSV [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the true coefficients to this CSV.
    #[arg(long)]
    pub beta_out: Option<PathBuf>,
}
