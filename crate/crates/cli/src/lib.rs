//! Command-line front end: dataset ingestion, single runs, replicated
//! benchmark grids and simulated data export.

pub mod args;
pub mod bench;
pub mod dataset_io;
pub mod error;
pub mod format;
pub mod resolve;
pub mod run;
pub mod simulate;

pub use error::{CliError, CliResult};

use args::{Cli, Command};

/// Executes a parsed command line.
pub fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Run(a) => run::cmd_run(a).map(drop),
        Command::Bench(a) => bench::cmd_bench(a).map(drop),
        Command::Simulate(a) => simulate::cmd_simulate(a).map(drop),
    }
}
