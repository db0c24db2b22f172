use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lfa_cli::commands::{cmd_describe, cmd_fit, cmd_score, cmd_sweep, cmd_synth};
use lfa_cli::config::RunConfig;
use lfa_cli::CliError;
use lfa_core::datamodel::MissingPolicy;

/// Latent factor site scoring: describe, fit, score and sweep a region-by-attribute table.
#[derive(Parser)]
#[command(name = "lfa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Subcommand)]
enum Command {
    /// Descriptive statistics of the raw attributes.
    Describe,
    /// Extract and rotate factors; write loadings, eigenvalues and scoring weights.
    Fit,
    /// Fit, then score regions at one suitability weight.
    Score {
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Fit, then count regions above each threshold over the weight grid.
    Sweep,
    /// Write a synthetic table with a planted six-factor structure.
    Synth {
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Every config key is also a flag; flags win over the file.
#[derive(Args)]
struct Global {
    /// TOML config file, or a previous run's manifest.json.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Only warnings and errors on the terminal.
    #[arg(long, global = true)]
    quiet: bool,

    /// reject | drop-region | impute-median
    #[arg(long, global = true)]
    missing: Option<MissingPolicy>,
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    #[arg(long = "max_iterations", visible_alias = "max-iterations", global = true)]
    max_iterations: Option<usize>,
    #[arg(long = "kaiser_threshold", visible_alias = "kaiser-threshold", global = true)]
    kaiser_threshold: Option<f64>,
    #[arg(long = "ridge_fallback", visible_alias = "ridge-fallback", global = true)]
    ridge_fallback: Option<bool>,
    #[arg(long = "varimax_tolerance", visible_alias = "varimax-tolerance", global = true)]
    varimax_tolerance: Option<f64>,
    #[arg(long = "varimax_max_sweeps", visible_alias = "varimax-max-sweeps", global = true)]
    varimax_max_sweeps: Option<usize>,
    /// Comma-separated 1-based factor labels, e.g. 2,1,3
    #[arg(long = "factor_order", visible_alias = "factor-order", value_delimiter = ',', global = true)]
    factor_order: Option<Vec<usize>>,
    #[arg(long, global = true)]
    composite: Option<PathBuf>,
    #[arg(long = "binary_composite", visible_alias = "binary-composite", global = true)]
    binary_composite: Option<bool>,
    #[arg(long = "balance_band", visible_alias = "balance-band", global = true)]
    balance_band: Option<f64>,
    #[arg(long = "bias_band", visible_alias = "bias-band", global = true)]
    bias_band: Option<f64>,
    #[arg(long = "alpha_start", visible_alias = "alpha-start", global = true)]
    alpha_start: Option<f64>,
    #[arg(long = "alpha_stop", visible_alias = "alpha-stop", global = true)]
    alpha_stop: Option<f64>,
    #[arg(long = "alpha_step", visible_alias = "alpha-step", global = true)]
    alpha_step: Option<f64>,
    /// Comma-separated, strictly ascending.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, global = true)]
    thetas: Option<Vec<f64>>,
    #[arg(long = "top_k", visible_alias = "top-k", global = true)]
    top_k: Option<usize>,
    #[arg(long = "top_v", visible_alias = "top-v", global = true)]
    top_v: Option<usize>,
    #[arg(long = "synth_regions", visible_alias = "synth-regions", global = true)]
    synth_regions: Option<usize>,
    #[arg(long = "synth_noise", visible_alias = "synth-noise", global = true)]
    synth_noise: Option<f64>,
}

macro_rules! overlay {
    ($cfg:ident, $g:ident, $($field:ident),+) => {
        $(if let Some(v) = $g.$field.clone() { $cfg.$field = v; })+
    };
}

fn resolve(g: &Global) -> Result<RunConfig, CliError> {
    let mut cfg = match &g.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if g.input.is_some() {
        cfg.input = g.input.clone();
    }
    if g.composite.is_some() {
        cfg.composite = g.composite.clone();
    }
    if g.factor_order.is_some() {
        cfg.factor_order = g.factor_order.clone();
    }
    overlay!(
        cfg, g, out, missing, epsilon, max_iterations, kaiser_threshold, ridge_fallback,
        varimax_tolerance, varimax_max_sweeps, binary_composite, balance_band, bias_band,
        alpha_start, alpha_stop, alpha_step, thetas, top_k, top_v, synth_regions, synth_noise
    );
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = resolve(&cli.global)?;
    let quiet = cli.global.quiet;
    match cli.command {
        Command::Describe => cmd_describe(cfg, quiet),
        Command::Fit => cmd_fit(cfg, quiet),
        Command::Score { alpha } => {
            if let Some(a) = alpha {
                cfg.alpha = a;
            }
            cmd_score(cfg, quiet)
        }
        Command::Sweep => cmd_sweep(cfg, quiet),
        Command::Synth { seed } => {
            if let Some(s) = seed {
                cfg.seed = s;
            }
            cmd_synth(cfg, quiet).map(|_| ())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
