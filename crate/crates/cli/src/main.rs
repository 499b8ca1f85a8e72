//! plasmakit: command-line driver for the symmetry checks and the
//! plasma-model simulations.
//!
//! Exit codes: 0 all verdicts pass, 1 at least one check failed,
//! 2 usage or parse error, 3 numerical abort.

mod commands;
mod config;
mod csvout;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "plasmakit", version, about = "Plasma-model symmetry checks and simulations")]
struct Cli {
    /// Print the report document as JSON to stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Directory for report and data files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for runs with random initial data.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify generators against a system file, optionally under side
    /// conditions.
    Check {
        /// System definition file (.sys).
        #[arg(long)]
        system: PathBuf,
        /// Generator file(s) (.gen); may repeat.
        #[arg(long = "generator", required = true)]
        generators: Vec<PathBuf>,
        /// Side-condition file (.cond) with `eq: <expr> = 0` lines.
        #[arg(long)]
        conditions: Option<PathBuf>,
    },
    /// Run a bundled exact-solution residual case (or `all`).
    VerifyExact {
        #[arg(long)]
        case: String,
    },
    /// Run a solver and its acceptance diagnostics.
    Simulate {
        /// One of: hm-reduced, hm-2d, vlasov.
        #[arg(long)]
        model: String,
        /// JSON run configuration.
        #[arg(long)]
        config: PathBuf,
    },
    /// Compare a full multi-species run against its reduced counterpart.
    Reduce {
        /// JSON run configuration with at least two species.
        #[arg(long)]
        config: PathBuf,
    },
    /// List bundled cases, models and transform ids.
    ListCases,
}

/// Error carrier with the exit-code classification.
pub enum CliError {
    /// Bad input: file, grammar, config, unknown id. Exit 2.
    Usage(String),
    /// Solver blew up or hit a guard. Exit 3.
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    let outcome = match &cli.command {
        Command::Check { system, generators, conditions } => {
            commands::check::run(system, generators, conditions.as_deref())
        }
        Command::VerifyExact { case } => commands::verify::run(case),
        Command::Simulate { model, config } => {
            commands::simulate::run(model, config, cli.seed, cli.out.as_deref())
        }
        Command::Reduce { config } => commands::reduce::run(config, cli.out.as_deref()),
        Command::ListCases => {
            commands::list();
            return ExitCode::SUCCESS;
        }
    };
    match outcome {
        Ok(mut report) => {
            report.timing_ms = started.elapsed().as_millis();
            report.seed = cli.seed;
            if let Some(dir) = &cli.out {
                if let Err(e) = report.write_to(dir) {
                    eprintln!("error: cannot write report: {e}");
                    return ExitCode::from(2);
                }
            }
            if cli.json {
                println!("{}", report.to_json());
            } else {
                report.print_human();
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
