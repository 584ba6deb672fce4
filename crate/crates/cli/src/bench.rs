//! Replicated benchmark grids.
//!
//! Every `(n, p)` cell gets `reps` simulated datasets; each dataset is sampled
//! once by every requested kernel. Dataset and chain seeds are derived from
//! the master seed, `n`, `p` and the replication index only, so results do not
//! depend on thread count or grid order.

use std::io::Write;

use rayon::prelude::*;
use shrinkage_core::diagnostics::DiagnosticsReport;
use shrinkage_core::rng::derive_seed;
use shrinkage_core::simgen::ScenarioKind;
use shrinkage_core::{run_chain, GroupStructure, KernelKind, RunConfig};

use crate::args::BenchArgs;
use crate::dataset_io::{group_structure, parse_groups};
use crate::error::{CliError, CliResult};
use crate::format;
use crate::resolve::{run_config, scenario_p, scenario_spec, ModelChoice};

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub model: ModelChoice,
    pub kernels: Vec<KernelKind>,
    pub scenario: ScenarioKind,
    /// `(n, p)` cells in output order.
    pub cells: Vec<(usize, usize)>,
    pub groups: Option<Vec<usize>>,
    pub reps: usize,
    /// Chain settings; the seed is replaced per replication.
    pub config: RunConfig,
    pub master_seed: u64,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchMetrics {
    pub rho1: f64,
    pub ess: f64,
    pub wall_time_seconds: f64,
    pub ess_per_second: f64,
    pub sigma2_mean: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub model: &'static str,
    pub kernel: KernelKind,
    pub scenario: ScenarioKind,
    pub n: usize,
    pub p: usize,
    pub rep: usize,
    pub seed: u64,
    pub result: Result<BenchMetrics, String>,
}

/// Seed of the dataset for replication `rep` of cell `(n, p)`.
pub fn dataset_seed(master: u64, n: usize, p: usize, rep: usize) -> u64 {
    derive_seed(derive_seed(master, n as u64, p as u64), rep as u64, 0)
}

/// Seed shared by every kernel's chain on that dataset.
pub fn chain_seed(data_seed: u64) -> u64 {
    derive_seed(data_seed, 1, 1)
}

impl BenchPlan {
    pub fn from_args(args: &BenchArgs) -> CliResult<Self> {
        let model = ModelChoice::from_args(&args.model, Some(1.0))?;
        let scenario: ScenarioKind = args.scenario.into();
        if args.reps == 0 {
            return Err(CliError::Usage("--reps must be at least 1".into()));
        }
        if args.jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        if args.kernels.is_empty() {
            return Err(CliError::Usage("--kernels must name at least one kernel".into()));
        }
        let ps: Vec<usize> = match (args.k.is_empty(), args.p.is_empty()) {
            (false, true) => args
                .k
                .iter()
                .map(|&k| scenario_p(scenario, Some(k), None))
                .collect::<CliResult<_>>()?,
            (true, false) => args.p.clone(),
            _ => return Err(CliError::Usage("pass exactly one of --K or --p".into())),
        };
        let mut cells = Vec::new();
        for &n in &args.n {
            for &p in &ps {
                scenario_spec(scenario, Some(n), p, 0)?;
                cells.push((n, p));
            }
        }
        let plan = Self {
            model,
            kernels: args.kernels.iter().map(|&k| k.into()).collect(),
            scenario,
            cells,
            groups: args.groups.as_deref().map(parse_groups).transpose()?,
            reps: args.reps,
            config: run_config(&args.chain, 0, false)?,
            master_seed: args.chain.seed,
            jobs: args.jobs,
        };
        plan.check_models()?;
        Ok(plan)
    }

    /// Validates the model against every cell before anything runs.
    fn check_models(&self) -> CliResult<()> {
        for &(n, p) in &self.cells {
            let sim = scenario_spec(self.scenario, Some(n), p, 0)?;
            let groups = self.groups_for(p, sim.scenario)?;
            self.model.spec::<f64>(groups.as_ref(), p)?;
        }
        Ok(())
    }

    fn groups_for(&self, p: usize, scenario: ScenarioKind) -> CliResult<Option<GroupStructure>> {
        match &self.groups {
            Some(g) => Ok(Some(group_structure(g, p)?)),
            None => Ok(match scenario {
                ScenarioKind::AdjacentSimilar => None,
                _ => Some(GroupStructure::uniform(p / shrinkage_core::simgen::POLY_DEGREE, 5)?),
            }),
        }
    }

    fn run_replication(&self, n: usize, p: usize, rep: usize) -> Vec<BenchRow> {
        let data_seed = dataset_seed(self.master_seed, n, p, rep);
        let seed = chain_seed(data_seed);
        let row = |kernel, result| BenchRow {
            model: self.model.kind.name(),
            kernel,
            scenario: self.scenario,
            n,
            p,
            rep,
            seed,
            result,
        };
        let prepared = scenario_spec(self.scenario, Some(n), p, data_seed)
            .and_then(|s| Ok(s.generate::<f64>()?))
            .and_then(|sim| {
                let groups = self.groups_for(p, self.scenario)?;
                let spec = self.model.spec::<f64>(groups.as_ref(), p)?;
                Ok((sim, spec))
            });
        let (sim, spec) = match prepared {
            Ok(v) => v,
            Err(e) => return self.kernels.iter().map(|&k| row(k, Err(e.to_string()))).collect(),
        };
        let cfg = RunConfig {
            seed,
            ..self.config.clone()
        };
        self.kernels
            .iter()
            .map(|&kernel| {
                let result = run_chain(kernel, &spec, &sim.dataset, &cfg)
                    .and_then(|out| {
                        let d = DiagnosticsReport::from_series(&out.sigma2_draws, out.wall_time_seconds)?;
                        Ok(BenchMetrics {
                            rho1: d.rho1,
                            ess: d.ess,
                            wall_time_seconds: out.wall_time_seconds,
                            ess_per_second: d.ess_per_second,
                            sigma2_mean: d.summary.mean,
                        })
                    })
                    .map_err(|e| e.to_string());
                if let Err(e) = &result {
                    log::warn!("n={n} p={p} rep={rep} {kernel}: {e}");
                }
                row(kernel, result)
            })
            .collect()
    }

    /// Runs the grid; rows come back ordered by cell, replication, kernel.
    pub fn run(&self) -> CliResult<Vec<BenchRow>> {
        let tasks: Vec<(usize, usize, usize)> = self
            .cells
            .iter()
            .flat_map(|&(n, p)| (0..self.reps).map(move |r| (n, p, r)))
            .collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(CliError::runtime)?;
        let rows = pool.install(|| {
            tasks
                .par_iter()
                .map(|&(n, p, r)| {
                    log::info!("n={n} p={p} rep={r}");
                    self.run_replication(n, p, r)
                })
                .collect::<Vec<_>>()
        });
        Ok(rows.into_iter().flatten().collect())
    }
}

pub const RAW_HEADER: [&str; 13] = [
    "model",
    "kernel",
    "scenario",
    "n",
    "p",
    "rep",
    "seed",
    "rho1",
    "ess",
    "wall_time_seconds",
    "ess_per_second",
    "sigma2_mean",
    "error",
];

pub fn write_raw_csv<W: Write>(rows: &[BenchRow], out: W, omit_timing: bool) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RAW_HEADER).map_err(CliError::runtime)?;
    for r in rows {
        let mut rec = vec![
            r.model.to_string(),
            r.kernel.name().to_string(),
            r.scenario.name().to_string(),
            r.n.to_string(),
            r.p.to_string(),
            r.rep.to_string(),
            r.seed.to_string(),
        ];
        match &r.result {
            Ok(m) => {
                let timing = |v: f64| if omit_timing { String::new() } else { format::raw(v) };
                rec.extend([
                    format::raw(m.rho1),
                    format::raw(m.ess),
                    timing(m.wall_time_seconds),
                    timing(m.ess_per_second),
                    format::raw(m.sigma2_mean),
                    String::new(),
                ]);
            }
            Err(e) => {
                rec.extend(std::iter::repeat_n(String::new(), 5));
                rec.push(e.clone());
            }
        }
        w.write_record(&rec).map_err(CliError::runtime)?;
    }
    w.flush().map_err(CliError::runtime)
}

/// Per-cell summary over successful replications.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub model: &'static str,
    pub kernel: KernelKind,
    pub scenario: ScenarioKind,
    pub n: usize,
    pub p: usize,
    pub reps: usize,
    pub failed: usize,
    pub rho1_mean: f64,
    pub rho1_se: f64,
    pub log10_ess_per_second_mean: f64,
    pub log10_ess_per_second_se: f64,
    pub ess_per_second_mean: f64,
}

/// Mean and standard error `sd / √R` (zero when `R = 1`).
pub fn mean_se(v: &[f64]) -> (f64, f64) {
    let r = v.len() as f64;
    let mean = v.iter().sum::<f64>() / r;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (r - 1.0);
    (mean, (var / r).sqrt())
}

pub fn aggregate(rows: &[BenchRow]) -> Vec<AggregateRow> {
    let mut keys: Vec<(KernelKind, usize, usize)> = Vec::new();
    for r in rows {
        if !keys.contains(&(r.kernel, r.n, r.p)) {
            keys.push((r.kernel, r.n, r.p));
        }
    }
    keys.sort_by_key(|&(k, n, p)| (n, p, k == KernelKind::ThreeBlock));
    keys.into_iter()
        .map(|(kernel, n, p)| {
            let cell: Vec<&BenchRow> = rows.iter().filter(|r| (r.kernel, r.n, r.p) == (kernel, n, p)).collect();
            let ok: Vec<&BenchMetrics> = cell.iter().filter_map(|r| r.result.as_ref().ok()).collect();
            let (rho1_mean, rho1_se) = mean_se(&ok.iter().map(|m| m.rho1).collect::<Vec<_>>());
            let eps: Vec<f64> = ok.iter().map(|m| m.ess_per_second).collect();
            let (l_mean, l_se) = mean_se(&eps.iter().map(|v| v.log10()).collect::<Vec<_>>());
            AggregateRow {
                model: cell[0].model,
                kernel,
                scenario: cell[0].scenario,
                n,
                p,
                reps: cell.len(),
                failed: cell.len() - ok.len(),
                rho1_mean,
                rho1_se,
                log10_ess_per_second_mean: l_mean,
                log10_ess_per_second_se: l_se,
                ess_per_second_mean: mean_se(&eps).0,
            }
        })
        .collect()
}

pub fn write_aggregate_csv<W: Write>(rows: &[AggregateRow], out: W, omit_timing: bool) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "model",
        "kernel",
        "scenario",
        "n",
        "p",
        "reps",
        "failed",
        "rho1_mean",
        "rho1_se",
        "log10_ess_per_second_mean",
        "log10_ess_per_second_se",
        "ess_per_second_mean",
    ])
    .map_err(CliError::runtime)?;
    for a in rows {
        let timing = |v: f64| if omit_timing { String::new() } else { format::short(v) };
        w.write_record([
            a.model.to_string(),
            a.kernel.name().to_string(),
            a.scenario.name().to_string(),
            a.n.to_string(),
            a.p.to_string(),
            a.reps.to_string(),
            a.failed.to_string(),
            format::short(a.rho1_mean),
            format::short(a.rho1_se),
            timing(a.log10_ess_per_second_mean),
            timing(a.log10_ess_per_second_se),
            timing(a.ess_per_second_mean),
        ])
        .map_err(CliError::runtime)?;
    }
    w.flush().map_err(CliError::runtime)
}

fn create(path: &std::path::Path) -> CliResult<std::io::BufWriter<std::fs::File>> {
    std::fs::File::create(path)
        .map(std::io::BufWriter::new)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

pub fn cmd_bench(args: &BenchArgs) -> CliResult<Vec<BenchRow>> {
    let plan = BenchPlan::from_args(args)?;
    let rows = plan.run()?;
    write_raw_csv(&rows, create(&args.out)?, args.omit_timing)?;
    if let Some(path) = &args.aggregate {
        write_aggregate_csv(&aggregate(&rows), create(path)?, args.omit_timing)?;
    }
    let failed = rows.iter().filter(|r| r.result.is_err()).count();
    if failed > 0 {
        log::warn!("{failed} of {} chains failed; see the error column", rows.len());
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn metrics(rho1: f64, eps: f64) -> Result<BenchMetrics, String> {
        Ok(BenchMetrics {
            rho1,
            ess: 100.0,
            wall_time_seconds: 100.0 / eps,
            ess_per_second: eps,
            sigma2_mean: 1.0,
        })
    }

    fn row(kernel: KernelKind, rep: usize, result: Result<BenchMetrics, String>) -> BenchRow {
        BenchRow {
            model: "group-lasso",
            kernel,
            scenario: ScenarioKind::GroupedPoly,
            n: 50,
            p: 25,
            rep,
            seed: rep as u64,
            result,
        }
    }

    #[test]
    fn aggregate_matches_hand_average() {
        let rows = vec![
            row(KernelKind::TwoBlock, 0, metrics(0.1, 10.0)),
            row(KernelKind::ThreeBlock, 0, metrics(0.5, 1.0)),
            row(KernelKind::TwoBlock, 1, metrics(0.3, 1000.0)),
            row(KernelKind::ThreeBlock, 1, Err("boom".into())),
        ];
        let agg = aggregate(&rows);
        assert_eq!(agg.len(), 2);
        let two = &agg[0];
        assert_eq!(two.kernel, KernelKind::TwoBlock);
        assert!((two.rho1_mean - 0.2).abs() < 1e-15);
        assert!((two.log10_ess_per_second_mean - 2.0).abs() < 1e-15);
        assert!((two.log10_ess_per_second_se - 1.0).abs() < 1e-15);
        let three = &agg[1];
        assert_eq!((three.reps, three.failed), (2, 1));
        assert_eq!(three.rho1_se, 0.0);
    }

    #[test]
    fn se_is_zero_only_for_single_replication() {
        assert_eq!(mean_se(&[3.0]), (3.0, 0.0));
        let (_, se) = mean_se(&[1.0, 2.0, 4.0]);
        assert!(se > 0.0);
    }

    #[test]
    fn raw_csv_marks_failures() {
        let rows = vec![row(KernelKind::TwoBlock, 0, metrics(0.25, 4.0)), row(KernelKind::ThreeBlock, 0, Err("bad, draw".into()))];
        let mut buf = Vec::new();
        write_raw_csv(&rows, &mut buf, true).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], RAW_HEADER.join(","));
        assert_eq!(lines[1], "group-lasso,2bg,s1,50,25,0,0,0.25000000000000000,100.00000000000000,,,1.0000000000000000,");
        assert_eq!(lines[2], "group-lasso,3bg,s1,50,25,0,0,,,,,,\"bad, draw\"");
    }

    #[test]
    fn seeds_depend_only_on_cell_and_replication() {
        assert_eq!(dataset_seed(7, 50, 25, 3), dataset_seed(7, 50, 25, 3));
        assert_ne!(dataset_seed(7, 50, 25, 3), dataset_seed(7, 50, 25, 4));
        assert_ne!(dataset_seed(7, 50, 25, 3), dataset_seed(7, 50, 50, 3));
        assert_ne!(dataset_seed(7, 50, 25, 3), dataset_seed(8, 50, 25, 3));
    }
}
