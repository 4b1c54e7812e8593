//! `paramag` command-line front end.

mod commands;
mod config;
mod error;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Format, RunConfig};
use error::CliError;
use output::Report;

#[derive(Debug, Parser)]
#[command(
    name = "paramag",
    version,
    about = "Pumped cavity with two magnon modes: spectra, steady states, sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML config, or a CSV/JSON file written by an earlier run.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override a config value, e.g. `--set model.G=0.5`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,

    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, global = true)]
    format: Option<FormatArg>,

    /// Worker threads for grid evaluations.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Bisection tolerance for critical pump searches, in units of κ.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Eigenvalues of the coupling matrix (full, or reduced with eig.reduced).
    Eig,
    /// Steady-state amplitudes, spin current and condition number.
    Steady,
    /// Pump enhancement factor F at model.G, or over enhance.pumps.
    Enhance,
    /// Stability grid over (Δ, G), or the critical pump G_c(Δ).
    Phase,
    /// Any metric over one or two parameter axes.
    Sweep,
    /// Eigenvalue tracks of the reduced system versus Δ.
    Tracks,
    /// Fluctuation moments and the quantum/semiclassical ratio.
    Lyapunov,
    /// Laboratory quantities converted to model rates.
    Units,
}

impl Command {
    fn run(self, cfg: &RunConfig) -> Result<Report, CliError> {
        match self {
            Command::Eig => commands::eig(cfg),
            Command::Steady => commands::steady(cfg),
            Command::Enhance => commands::enhance(cfg),
            Command::Phase => commands::phase(cfg),
            Command::Sweep => commands::sweep(cfg),
            Command::Tracks => commands::tracks(cfg),
            Command::Lyapunov => commands::lyapunov(cfg),
            Command::Units => commands::units(cfg),
        }
    }
}

/// File, then `--set` overrides, then the dedicated flags.
fn build_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut tree = config::default_tree();
    if let Some(path) = &cli.config {
        config::merge(&mut tree, config::load_tree(path)?);
    }
    for assignment in &cli.set {
        config::apply_override(&mut tree, assignment)?;
    }
    let mut cfg = config::from_tree(tree)?;
    if let Some(path) = &cli.output {
        cfg.output.path = Some(path.display().to_string());
    }
    if let Some(f) = cli.format {
        cfg.output.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    if cli.workers.is_some() {
        cfg.workers = cli.workers;
    }
    if let Some(tol) = cli.tol {
        cfg.search.tol = tol;
    }
    if cfg.workers == Some(0) {
        return Err(CliError::Config("workers must be at least 1".into()));
    }
    if cfg.search.tol.is_nan() || cfg.search.tol <= 0.0 {
        return Err(CliError::Config(format!(
            "search.tol must be positive, got {}",
            cfg.search.tol
        )));
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = build_config(cli)?;
    let report = cli.command.run(&cfg)?;
    let resolved =
        serde_json::to_value(cfg.resolved()).map_err(|e| CliError::Config(e.to_string()))?;
    let io_err = |e: io::Error| CliError::Io(e.to_string());
    match &cfg.output.path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
            report.write(&resolved, cfg.output.format, &mut w)?;
            w.flush().map_err(io_err)
        }
        None => {
            let mut w = io::stdout().lock();
            report.write(&resolved, cfg.output.format, &mut w)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::debug!("{e:?}");
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code())
        }
    }
}
