// SPDX-License-Identifier: Apache-2.0

use ckosc::checks::SuiteOptions;
use ckosc_cli::commands;
use ckosc_cli::CliError;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Damped, driven Caldirola-Kanai oscillator: classical trajectories and
/// quantum energy expectations.
#[derive(Parser)]
#[command(name = "ckosc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write one CSV row per grid point.
    Run {
        scenario: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Regenerate a built-in figure (1a, 1b, 2, 3a, 3b) as CSV + SVG.
    ReproduceFig {
        id: String,
        #[arg(short = 'd', long = "dir", default_value = ".")]
        dir: PathBuf,
    },
    /// Run the self-check suite.
    Validate {
        #[arg(long)]
        json: bool,
        /// Scale the derived frequency of the figure scenarios.
        #[arg(long, hide = true)]
        corrupt_omega: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { scenario, output } => commands::run(&scenario, &output).map(|_| ()),
        Command::ReproduceFig { id, dir } => commands::reproduce_fig(&id, &dir).map(|paths| {
            for p in paths {
                println!("{}", p.display());
            }
        }),
        Command::Validate {
            json,
            corrupt_omega,
        } => {
            let opts = SuiteOptions {
                omega_factor: corrupt_omega,
            };
            commands::validate(&mut std::io::stdout().lock(), json, &opts).map(|_| ())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    e.exit_code() as u8
}
