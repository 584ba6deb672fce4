//! Gibbs samplers for Bayesian group, sparse group and fused lasso regression.
//!
//! All numerics are generic over [`scalar::Real`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64` or `f32`.

pub mod diagnostics;
pub mod error;
pub mod linalg;
pub mod model;
pub mod rng;
pub mod samplers;
pub mod scalar;
pub mod simgen;

pub use error::{Result, ShrinkageError};
pub use model::{ChainState, Dataset, GroupStructure, LatentScales, ModelKind, ModelSpec, Penalty};
pub use rng::RngStream;
pub use samplers::{run_chain, run_chains_parallel, ChainJob, ChainOutput, KernelKind, RunConfig};
pub use scalar::Real;

pub type Dataset64 = Dataset<f64>;
pub type Dataset32 = Dataset<f32>;
pub type ModelSpec64 = ModelSpec<f64>;
pub type ModelSpec32 = ModelSpec<f32>;
pub type ChainState64 = ChainState<f64>;
pub type ChainOutput64 = ChainOutput<f64>;
pub type ChainOutput32 = ChainOutput<f32>;
