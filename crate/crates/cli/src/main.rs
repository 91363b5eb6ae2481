//! `obsfreq`: batch experiment runner over the observability-frequency
//! library. One self-describing JSON config per run:
//!
//! ```text
//! obsfreq run --config spec.json [--output out.json] [--seed 7] [--format csv|json]
//! obsfreq tables --output-dir dir/
//! ```
//!
//! The config shape is documented in `schema/experiment-config.schema.json`
//! and enforced by typed parsing. Exit codes: 0 success, 2 schema
//! violation, 3 experiment error (a library module rejected the run; its
//! module name and error case are preserved in the stderr JSON object),
//! 4 I/O error. Identical config and seed produce byte-identical output.

mod commands;
mod config;
mod output;
mod tables;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{execute, uses_seed, RunFailure};
use config::{Experiment, ExperimentSpec};
use output::Format;

/// Seed used when neither `--seed` nor the config provides one.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(
    name = "obsfreq",
    version,
    about = "Runs observability-frequency experiments from JSON configs"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Execute the experiment described by a JSON config file.
    Run {
        /// Experiment config; see schema/experiment-config.schema.json.
        #[arg(long)]
        config: PathBuf,
        /// Report destination; overrides the config's output_path. Stdout
        /// when neither is given.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Seed override; config seed, then 42, when absent.
        #[arg(long)]
        seed: Option<u64>,
        /// Report format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Write the reference tables (truth table, projector diagonals,
    /// witness distributions) as JSON files.
    Tables {
        #[arg(long)]
        output_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let object = serde_json::to_string(&failure.object())
                .expect("error objects are three plain strings");
            eprintln!("{object}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), RunFailure> {
    match cli.command {
        CliCommand::Run { config, output, seed, format } => run(config, output, seed, format),
        CliCommand::Tables { output_dir } => {
            for path in tables::emit(&output_dir)? {
                println!("{}", path.display());
            }
            Ok(())
        }
    }
}

fn run(
    config_path: PathBuf,
    output_flag: Option<PathBuf>,
    seed_flag: Option<u64>,
    format: Format,
) -> Result<(), RunFailure> {
    let text = fs::read_to_string(&config_path).map_err(|e| RunFailure::Io {
        message: format!("cannot read {}: {e}", config_path.display()),
    })?;
    let spec: ExperimentSpec = serde_json::from_str(&text)
        .map_err(|e| RunFailure::Schema { message: format!("config does not parse: {e}") })?;
    let experiment =
        Experiment::from_spec(&spec).map_err(|message| RunFailure::Schema { message })?;

    let seed = seed_flag.or(spec.seed).unwrap_or(DEFAULT_SEED);
    let report = execute(&experiment, seed)?;
    let rendered = output::render(&report, uses_seed(&experiment).then_some(seed), format);

    match output_flag.or(spec.output_path) {
        Some(path) => fs::write(&path, rendered).map_err(|e| RunFailure::Io {
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{rendered}");
            std::io::stdout().flush().map_err(|e| RunFailure::Io {
                message: format!("cannot write to stdout: {e}"),
            })
        }
    }
}
