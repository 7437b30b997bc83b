//! Command-line front end: `run`, `sweep`, and `compare` over key=value
//! config files. Exit codes: 0 success, 2 config error, 3 I/O error.

use clap::{Parser, Subcommand};
use mrp_gtco::config::{load_config, ConfigFileError};
use mrp_gtco::experiment::{
    cmd_compare, cmd_run, cmd_sweep, ExperimentError, ExperimentSpec, SweepAxis,
};
use mrp_gtco::net::Protocol;
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable naming the default output directory.
const OUT_DIR_ENV: &str = "MRP_GTCO_OUT";

#[derive(Parser)]
#[command(name = "mrp-gtco", version, about = "Wireless sensor network lifetime simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Path to a key=value config file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: $MRP_GTCO_OUT, then ./results).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seeds to run, comma separated (default: the config's rng_seed).
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate the configured protocol once per seed.
    Run {
        #[command(flatten)]
        common: CommonArgs,
        /// Override the config's protocol.
        #[arg(long)]
        protocol: Option<Protocol>,
    },
    /// Sweep one parameter axis, averaging each point across seeds.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Axis to sweep: k, lambda1, or area.
        #[arg(long)]
        axis: String,
        /// Axis values, comma separated (defaults per axis).
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<String>>,
    },
    /// Run several protocols over identical seeds and topologies.
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        /// Protocols to compare; repeat the flag or give a comma list.
        #[arg(long = "protocol", value_delimiter = ',', required = true)]
        protocols: Vec<Protocol>,
    },
}

fn out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("results"))
}

fn build_spec(common: &CommonArgs) -> Result<ExperimentSpec, ExperimentError> {
    let base = load_config(&common.config).map_err(|e| match e {
        ConfigFileError::Io(io) => ExperimentError::Io(io),
        other => ExperimentError::Config(other.to_string()),
    })?;
    let seeds = common.seeds.clone().unwrap_or_else(|| vec![base.rng_seed]);
    Ok(ExperimentSpec {
        base,
        seeds,
        out_dir: out_dir(common.out.clone()),
    })
}

fn execute(cli: Cli) -> Result<(), ExperimentError> {
    match cli.command {
        Command::Run { common, protocol } => {
            let mut spec = build_spec(&common)?;
            if let Some(p) = protocol {
                spec.base.protocol = p;
            }
            let artifacts = cmd_run(&spec)?;
            for row in &artifacts.rows {
                println!(
                    "protocol={} seed={} fdn={} hdn={} ldn={}",
                    row.protocol,
                    row.seed,
                    row.summary.first_death_round.map_or(-1, |v| v as i64),
                    row.summary.half_death_round.map_or(-1, |v| v as i64),
                    row.summary.last_death_round.map_or(-1, |v| v as i64),
                );
            }
            for file in &artifacts.files {
                println!("wrote {}", file.display());
            }
        }
        Command::Sweep { common, axis, values } => {
            let spec = build_spec(&common)?;
            let axis: SweepAxis = axis.parse()?;
            let artifacts = cmd_sweep(&spec, axis, values.as_deref())?;
            for point in &artifacts.points {
                let fields: Vec<String> = point
                    .fields
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                println!("{} {}", point.label, fields.join(" "));
            }
            println!("wrote {}", artifacts.file.display());
        }
        Command::Compare { common, protocols } => {
            let spec = build_spec(&common)?;
            let artifacts = cmd_compare(&spec, &protocols)?;
            for row in &artifacts.rows {
                println!(
                    "protocol={} seed={} fdn={} hdn={} ldn={}",
                    row.protocol,
                    row.seed,
                    row.summary.first_death_round.map_or(-1, |v| v as i64),
                    row.summary.half_death_round.map_or(-1, |v| v as i64),
                    row.summary.last_death_round.map_or(-1, |v| v as i64),
                );
            }
            for file in &artifacts.files {
                println!("wrote {}", file.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ ExperimentError::Config(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e @ ExperimentError::Io(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
