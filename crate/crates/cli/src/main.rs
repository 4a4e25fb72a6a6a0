//! `hallsim`: transport sweeps, plateau staircases, lattice runs,
//! edge-current profiling, and quantization reports from one flat
//! config-file format. Identical config and seed give byte-identical
//! artifacts.

mod commands;
mod config;
mod emit;
mod pool;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::OutputFormat;

#[derive(Parser)]
#[command(
    name = "hallsim",
    about = "Semiclassical Hall-regime transport simulator",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output artifact path.
    #[arg(long)]
    out: PathBuf,
    /// Serialization format of the primary artifact.
    #[arg(long, value_parser = parse_format, default_value = "csv")]
    format: OutputFormat,
    /// Override single config keys, e.g. `--set B=2.5`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Drude conductivity tensor over the configured sweep.
    Sweep(CommonArgs),
    /// Continuous and quantized Hall conductivity staircase.
    Staircase(CommonArgs),
    /// Coupled lattice evolution with per-step diagnostics.
    Simulate(CommonArgs),
    /// Edge-current profile and constraint summary of a run.
    Edge(CommonArgs),
    /// Quantization checks for one Hall-coefficient value.
    Quantize(CommonArgs),
}

fn parse_format(raw: &str) -> Result<OutputFormat, String> {
    match raw {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        _ => Err(format!("expected csv|json, got `{raw}`")),
    }
}

fn parse_overrides(raw: &[String]) -> Result<Vec<(String, String)>, String> {
    raw.iter()
        .map(|item| {
            let Some(eq) = item.find('=') else {
                return Err(format!("--set expects KEY=VALUE, got `{item}`"));
            };
            Ok((
                item[..eq].trim().to_string(),
                item[eq + 1..].trim().to_string(),
            ))
        })
        .collect()
}

fn load_config(args: &CommonArgs) -> Result<config::RunConfig, String> {
    let text = match &args.config {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        None => String::new(),
    };
    let overrides = parse_overrides(&args.set)?;
    config::parse_config(&text, &overrides).map_err(|e| e.to_string())
}

fn dispatch(command: &Command) -> Result<(), String> {
    let args = match command {
        Command::Sweep(a)
        | Command::Staircase(a)
        | Command::Simulate(a)
        | Command::Edge(a)
        | Command::Quantize(a) => a,
    };
    let cfg = load_config(args)?;
    match command {
        Command::Sweep(_) => commands::sweep::run(&cfg, &args.out, args.format),
        Command::Staircase(_) => commands::staircase::run(&cfg, &args.out, args.format),
        Command::Simulate(_) => commands::simulate::run(&cfg, &args.out, args.format),
        Command::Edge(_) => commands::edge::run(&cfg, &args.out, args.format),
        Command::Quantize(_) => commands::quantize::run(&cfg, &args.out, args.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("hallsim: {message}");
            ExitCode::FAILURE
        }
    }
}
