//! `soliton-forge`: hierarchies, spectral curves and auxiliary-spectrum flows from the command line.
// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod elliptic;
mod emit;
mod error;
mod kdv;
mod nls;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;
use soliton_forge::symmetry::identity_trial;

use emit::{json_doc, Format};
use error::{classify, CliError, Exit, EXIT_CODES};

#[derive(Parser, Debug)]
#[command(name = "soliton-forge", version, about, after_help = EXIT_CODES)]
struct Cli {
    #[command(flatten)]
    globals: Globals,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Globals {
    /// JSON scenario file; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for randomized start points and trials.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for CSV output.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// KdV hierarchy, spectral curves and flows.
    #[command(subcommand, after_help = EXIT_CODES)]
    Kdv(kdv::KdvCommand),
    /// NLS hierarchy and closure conditions.
    #[command(subcommand, after_help = EXIT_CODES)]
    Nls(nls::NlsCommand),
    /// Randomized exact check of the symmetric rational identity.
    #[command(after_help = EXIT_CODES)]
    Identity {
        /// Largest vector size (at least 2).
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u32).range(2..=64))]
        size: u32,
        #[arg(long, default_value_t = 200)]
        trials: u64,
    },
    /// Elliptic integrals, Jacobi functions and cnoidal profiles.
    #[command(subcommand, after_help = EXIT_CODES)]
    Elliptic(elliptic::EllipticCommand),
}

/// Standard output plus an optional failed-check verdict.
pub struct Report {
    pub stdout: String,
    pub failure: Option<CliError>,
}

impl Report {
    pub fn ok(stdout: String) -> Self {
        Self { stdout, failure: None }
    }
}

fn identity(size: u32, trials: u64, g: &Globals) -> anyhow::Result<Report> {
    let seed = g.seed.unwrap_or(config::DEFAULT_SEED);
    let outcomes: Vec<_> = (0..trials).into_par_iter().map(|t| identity_trial(seed, t, size as usize)).collect();
    let checks: usize = outcomes.iter().map(|o| o.checks).sum();
    let failures: usize = outcomes.iter().map(|o| o.failures).sum();
    let stdout = match g.format {
        Format::Text => format!("trials={trials} max_size={size} seed={seed} checks={checks} failures={failures}\n"),
        Format::Json => json_doc(json!({
            "trials": trials,
            "max_size": size,
            "seed": seed,
            "checks": checks,
            "failures": failures,
        })),
        other => return Err(other.unsupported("identity")),
    };
    let failure = (failures > 0).then_some(CliError::CheckFailed { failed: failures, total: checks });
    Ok(Report { stdout, failure })
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("SOLITON_FORGE_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("SOLITON_FORGE_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn dispatch(cli: &Cli) -> anyhow::Result<Report> {
    configure_threads()?;
    let g = &cli.globals;
    match &cli.command {
        Command::Kdv(cmd) => kdv::run(cmd, g).map(Report::ok),
        Command::Nls(cmd) => nls::run(cmd, g.format),
        Command::Identity { size, trials } => identity(*size, *trials, g),
        Command::Elliptic(cmd) => elliptic::run(cmd, g.format).map(Report::ok),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            print!("{}", report.stdout);
            match report.failure {
                Some(f) => {
                    eprintln!("error: {f}");
                    ExitCode::from(Exit::CheckFailed as u8)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(classify(&e) as u8)
        }
    }
}
