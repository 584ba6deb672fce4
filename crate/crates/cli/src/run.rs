use std::io::Write;
use std::path::Path;

use serde::Serialize;
use shrinkage_core::diagnostics::DiagnosticsReport;
use shrinkage_core::rng::derive_seed;
use shrinkage_core::{run_chain, ChainOutput, Dataset, GroupStructure, KernelKind, Real};

use crate::args::{Precision, RunArgs};
use crate::dataset_io::{group_structure, parse_groups, read_dataset_csv, CsvOptions};
use crate::error::{CliError, CliResult};
use crate::format;
use crate::resolve::{cast_dataset, run_config, scenario_p, scenario_spec, ModelChoice};

/// Single-run diagnostics of the σ² chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub model: String,
    pub kernel: String,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
    pub iters: usize,
    pub burnin: usize,
    pub rho1: f64,
    pub ess: f64,
    pub wall_time_seconds: f64,
    pub ess_per_second: f64,
    pub sigma2_mean: f64,
    pub sigma2_q025: f64,
    pub sigma2_q975: f64,
}

impl RunReport {
    pub fn from_output<T: Real>(out: &ChainOutput<T>, n: usize) -> CliResult<Self> {
        let diag = DiagnosticsReport::from_series(&out.sigma2_draws, out.wall_time_seconds).map_err(CliError::runtime)?;
        Ok(Self {
            model: out.model.kind.name().to_string(),
            kernel: out.kernel.name().to_string(),
            n,
            p: out.p,
            seed: out.seed,
            iters: out.config.n_iter,
            burnin: out.config.burn_in,
            rho1: diag.rho1,
            ess: diag.ess,
            wall_time_seconds: out.wall_time_seconds,
            ess_per_second: diag.ess_per_second,
            sigma2_mean: diag.summary.mean,
            sigma2_q025: diag.summary.q025,
            sigma2_q975: diag.summary.q975,
        })
    }
}

struct Input {
    dataset: Dataset<f64>,
    groups: Option<GroupStructure>,
}

fn load_input(args: &RunArgs) -> CliResult<Input> {
    let groups = args.groups.as_deref().map(parse_groups).transpose()?;
    if let Some(path) = &args.data {
        if args.response_col == 0 {
            return Err(CliError::Usage("--response-col is one-based".into()));
        }
        let loaded = read_dataset_csv(
            path,
            &CsvOptions {
                response_col: args.response_col - 1,
                groups,
                identity_design: args.identity_design,
            },
        )?;
        return Ok(Input {
            dataset: loaded.dataset,
            groups: loaded.groups,
        });
    }
    let kind = args
        .scenario
        .ok_or_else(|| CliError::Usage("pass --data or --scenario".into()))?
        .into();
    let p = scenario_p(kind, args.k, args.p)?;
    let seed = args.data_seed.unwrap_or_else(|| derive_seed(args.chain.seed, 1, 0));
    let sim = scenario_spec(kind, args.n, p, seed)?.generate::<f64>()?;
    let groups = match groups {
        Some(g) => Some(group_structure(&g, p)?),
        None => sim.groups,
    };
    Ok(Input {
        dataset: sim.dataset,
        groups,
    })
}

fn write_draws<T: Real>(out: &ChainOutput<T>, path: &Path) -> CliResult<()> {
    let file = std::fs::File::create(path).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
    let mut header = vec!["draw".to_string(), "sigma2".to_string()];
    header.extend((1..=out.p).map(|j| format!("beta{j}")));
    w.write_record(&header).map_err(CliError::runtime)?;
    for i in 0..out.num_draws() {
        let mut rec = vec![i.to_string(), format::raw(out.sigma2_draws[i].as_f64())];
        if let Some(b) = out.beta_draw(i) {
            rec.extend(b.iter().map(|v| format::raw(v.as_f64())));
        }
        w.write_record(&rec).map_err(CliError::runtime)?;
    }
    w.flush().map_err(CliError::runtime)
}

fn execute<T: Real>(args: &RunArgs, input: &Input, choice: &ModelChoice) -> CliResult<RunReport> {
    let data = cast_dataset::<T>(&input.dataset)?;
    let spec = choice.spec::<T>(input.groups.as_ref(), data.p())?;
    let cfg = run_config(&args.chain, args.chain.seed, args.draws.is_some())?;
    let kernel: KernelKind = args.kernel.into();
    let out = run_chain(kernel, &spec, &data, &cfg).map_err(CliError::runtime)?;
    if let Some(path) = &args.draws {
        write_draws(&out, path)?;
    }
    RunReport::from_output(&out, data.n())
}

pub fn cmd_run(args: &RunArgs) -> CliResult<RunReport> {
    let choice = ModelChoice::from_args(&args.model, None)?;
    let input = load_input(args)?;
    let report = match args.precision {
        Precision::F64 => execute::<f64>(args, &input, &choice)?,
        Precision::F32 => execute::<f32>(args, &input, &choice)?,
    };
    let json = serde_json::to_string_pretty(&report).map_err(CliError::runtime)?;
    match &args.report {
        Some(path) => std::fs::write(path, json + "\n")
            .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{json}").map_err(CliError::runtime)?;
        }
    }
    Ok(report)
}
