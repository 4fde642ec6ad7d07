//! Command-line front end: network generation, analysis, comparison,
//! replication of reference networks and parameter sweeps.
//!
//! Results go to stdout (or files under an output prefix), diagnostics to
//! stderr; the exit code is 0 exactly when the command succeeded.

mod commands;
mod sweep;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "demograph",
    version,
    about = "Synthetic social networks from demographic and structural similarity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a network from a run config and write the artifact set
    /// (edge list, GraphML, profile table, metrics report, trace summary,
    /// degree histogram).
    Generate {
        /// Run config (TOML).
        config: PathBuf,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output path prefix; files are written as <prefix>.<kind>.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the metric suite for an edge list and print the report.
    Analyze {
        /// Edge list (tab-separated, 0-based ids).
        edges: PathBuf,
        /// Sample mean geodesics from this many sources instead of the
        /// automatic exact/sampled choice.
        #[arg(long, value_name = "K")]
        sampled_geodesics: Option<usize>,
        /// Seed for the sampled-geodesic source choice.
        #[arg(long, default_value_t = demograph::metrics::DEFAULT_GEODESIC_SEED)]
        geodesic_seed: u64,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two networks (edge lists or previously written reports);
    /// the first input is the baseline for relative deltas.
    Compare {
        baseline: PathBuf,
        candidate: PathBuf,
        /// Also write the comparison document to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replicate a reference network: load its attribute table, generate a
    /// synthetic network of the same size with those exact profiles, and
    /// compare the two.
    Replicate {
        /// Reference edge list.
        edges: PathBuf,
        /// Reference attribute table (CSV with a header naming the schema
        /// attributes).
        attributes: PathBuf,
        /// Run config providing the schema and generator parameters
        /// (params.n is overridden by the reference size).
        config: PathBuf,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output path prefix for the synthetic artifacts and comparison.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the cross product of a parameter range and seed count, one
    /// tab-separated row of parameters, metrics and generation time per run.
    Sweep {
        /// Run config (TOML).
        config: PathBuf,
        /// Parameter range, e.g. --vary triad_count=0,1,2,3,4
        #[arg(long, value_name = "NAME=V1,V2,...")]
        vary: String,
        /// Seeds per value: run i uses config seed + i.
        #[arg(long, default_value_t = 1)]
        seeds: usize,
        /// Also write the table to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { config, seed, out } => commands::generate(&config, seed, out),
        Command::Analyze {
            edges,
            sampled_geodesics,
            geodesic_seed,
            out,
        } => commands::analyze(&edges, sampled_geodesics, geodesic_seed, out),
        Command::Compare {
            baseline,
            candidate,
            out,
        } => commands::compare(&baseline, &candidate, out),
        Command::Replicate {
            edges,
            attributes,
            config,
            seed,
            out,
        } => commands::replicate(&edges, &attributes, &config, seed, out),
        Command::Sweep {
            config,
            vary,
            seeds,
            out,
        } => sweep::run(&config, &vary, seeds, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
