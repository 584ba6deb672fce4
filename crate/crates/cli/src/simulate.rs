use std::io::Write;

use shrinkage_core::simgen::SimulatedDataset;

use crate::args::SimulateArgs;
use crate::error::{CliError, CliResult};
use crate::format;
use crate::resolve::{scenario_p, scenario_spec};

pub fn cmd_simulate(args: &SimulateArgs) -> CliResult<SimulatedDataset<f64>> {
    let kind = args.scenario.into();
    let p = scenario_p(kind, args.k, args.p)?;
    let sim = scenario_spec(kind, Some(args.n), p, args.seed)?.generate::<f64>()?;
    let io_err = |e: std::io::Error| CliError::Runtime(format!("writing dataset: {e}"));
    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(io_err)?;
            sim.write_csv(std::io::BufWriter::new(file)).map_err(io_err)?;
        }
        None => sim.write_csv(std::io::stdout().lock()).map_err(io_err)?,
    }
    if let Some(path) = &args.beta_out {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path).map_err(io_err)?);
        writeln!(f, "beta_star").map_err(io_err)?;
        for b in &sim.beta_star {
            writeln!(f, "{}", format::raw(*b)).map_err(io_err)?;
        }
        f.flush().map_err(io_err)?;
    }
    if let Some(g) = &sim.groups {
        let sizes: Vec<String> = g.sizes().iter().map(|s| s.to_string()).collect();
        eprintln!("groups: {}", sizes.join(","));
    }
    Ok(sim)
}
