mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::Failure;

/// Vehicle ride models solved through their force-current electrical analogue.
#[derive(Parser)]
#[command(name = "mobility", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Run configuration file.
    config: PathBuf,
    /// Write the result here instead of the configured path or stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the configuration in canonical form.
    Config {
        #[command(flatten)]
        common: Common,
    },
    /// Write the analogue netlist.
    Translate {
        #[command(flatten)]
        common: Common,
        /// Expand coupled capacitor pairs into their three-capacitor form.
        #[arg(long)]
        pi: bool,
        /// Replace road voltage sources by current sources.
        #[arg(long)]
        norton: bool,
    },
    /// Solve the harmonic steady state and print node velocities.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Also print the current through every element.
        #[arg(long)]
        branch_currents: bool,
    },
    /// Compare the circuit solution with the mechanical reference solutions.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Scale one parameter on the mechanical side only, e.g. k_sd=1.1.
        #[arg(long, value_name = "KEY=FACTOR")]
        perturb: Option<String>,
        /// Relative rms tolerance (default from the config).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Solve over a range of frequencies or speeds and write CSV.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// First angular frequency [rad/s], or speed [km/h] with --speeds.
        #[arg(long)]
        from: Option<f64>,
        /// Last angular frequency [rad/s], or speed [km/h] with --speeds.
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// Read --from/--to as vehicle speeds in km/h.
        #[arg(long)]
        speeds: bool,
    },
    /// Write steady-state velocity time series as CSV.
    Timeseries {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        periods: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Config { common } => commands::run(&common.config, common.output, commands::canonical),
        Command::Translate { common, pi, norton } => {
            commands::run(&common.config, common.output, |cfg| commands::translate(cfg, pi, norton))
        }
        Command::Solve { common, branch_currents } => {
            commands::run(&common.config, common.output, |cfg| commands::solve(cfg, branch_currents))
        }
        Command::Validate { common, perturb, tolerance } => {
            commands::run(&common.config, common.output, |cfg| commands::validate(cfg, perturb.as_deref(), tolerance))
        }
        Command::Sweep { common, from, to, points, speeds } => commands::run(&common.config, common.output, |cfg| {
            commands::sweep(cfg, from, to, points, speeds)
        }),
        Command::Timeseries { common, periods, samples } => {
            commands::run(&common.config, common.output, |cfg| commands::timeseries(cfg, periods, samples))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !matches!(f, Failure::Validation(_)) {
                eprintln!("error: {f}");
            }
            ExitCode::from(f.exit_code())
        }
    }
}
