mod args;
mod commands;
mod config;
mod error;
mod index;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use config::PipelineConfig;
use error::{CliError, CliResult, EXIT_INTERNAL};

fn run(cli: Cli) -> CliResult<()> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.get())
            .build_global()
            .map_err(|e| CliError { code: EXIT_INTERNAL, message: format!("thread pool: {e}") })?;
    }
    let config = PipelineConfig::load(cli.config.as_deref(), std::env::vars())?;
    match cli.command {
        Command::Gen(a) => commands::gen::run(a, config),
        Command::Synth(a) => commands::synth::run(a, config),
        Command::Encode(a) => commands::encode::run(a, config),
        Command::Recon(a) => commands::recon::run(a, config),
        Command::Eval(a) => commands::eval::run(a, config),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("holopipe: {e}");
            ExitCode::from(e.code)
        }
    }
}
