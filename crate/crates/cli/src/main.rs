//! `coupled-array`: evaluate, optimize and sweep movable linear arrays with
//! mutual coupling, and regenerate the reference tables and figures.

mod commands;
mod config;
mod exit;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{OptimizeRequest, ReproduceRequest, Target};
use config::{overlay, parse_angles, parse_list, RunConfig};
use exit::Failure;

/// Comma lists parsed in one go; the alias keeps clap from treating them as repeated flags.
type Values = Vec<f64>;

/// Worker-count override; 0 or unset means one worker per core.
const THREADS_ENV: &str = "COUPLED_ARRAY_THREADS";

#[derive(Parser)]
#[command(name = "coupled-array", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Directivity and optimal excitation of a given array.
    Eval(EvalArgs),
    /// Optimize antenna positions for one direction.
    Optimize(OptimizeArgs),
    /// Sweep θ over algorithms and apertures.
    Sweep(SweepArgs),
    /// Regenerate a reference table or figure.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct Shared {
    /// TOML run configuration; flags override its values.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Wavelength in meters [default: 0.3].
    #[arg(long, value_name = "M")]
    wavelength: Option<f64>,
    /// Output directory [default: .].
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    shared: Shared,
    /// Comma-separated antenna positions in meters.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    positions: Option<Values>,
    /// Angle from the array axis in degrees [default: 90].
    #[arg(long)]
    theta: Option<f64>,
    /// Minimum spacing in wavelengths [default: 0.1].
    #[arg(long)]
    d_min: Option<f64>,
    /// Maximum spacing in wavelengths [default: none].
    #[arg(long)]
    d_max: Option<f64>,
    /// Evaluate even if the spacing limits are violated.
    #[arg(long)]
    allow_infeasible: bool,
}

#[derive(Args)]
struct Knobs {
    /// Number of antennas [default: 5].
    #[arg(short = 'n', long)]
    n_antennas: Option<usize>,
    /// Minimum spacing in wavelengths [default: 0.1].
    #[arg(long)]
    d_min: Option<f64>,
    /// Grid step in wavelengths [default: 0.05].
    #[arg(long)]
    d_g: Option<f64>,
    /// Gradient iterations T [default: 5; 30 for gd].
    #[arg(short = 'T', long)]
    iterations: Option<usize>,
    /// Initial step size [default: 1].
    #[arg(long)]
    alpha0: Option<f64>,
    /// Step-size floor [default: 1e-3].
    #[arg(long, alias = "eps")]
    epsilon: Option<f64>,
    /// Exhaustive-search evaluation budget [default: 50000000].
    #[arg(long)]
    es_budget: Option<u64>,
    /// Record wall time in the wall_ms column (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    shared: Shared,
    #[command(flatten)]
    knobs: Knobs,
    /// gs, gd, gsgd, es or ulah.
    #[arg(long)]
    algo: Option<String>,
    /// Angle from the array axis in degrees [default: 90].
    #[arg(long)]
    theta: Option<f64>,
    /// Maximum spacing in wavelengths [default: N-1].
    #[arg(long)]
    d_max: Option<f64>,
    /// Also write the per-iteration trace to this CSV file.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    shared: Shared,
    #[command(flatten)]
    knobs: Knobs,
    /// Angles in degrees: `a,b,c` or `start:stop:step` [default: 0:90:1].
    #[arg(long, value_parser = parse_angles)]
    thetas: Option<Values>,
    /// Comma-separated algorithms [default: gsgd,ulah].
    #[arg(long, value_delimiter = ',')]
    algorithms: Option<Vec<String>>,
    /// Comma-separated d_max values in wavelengths [default: (N-1)/2, N-1, 2(N-1)].
    #[arg(long, value_parser = parse_list)]
    apertures: Option<Values>,
    /// Gradient iterations for the gd baseline [default: 30].
    #[arg(long)]
    gd_iterations: Option<usize>,
    /// Comma-separated output formats: csv, svg [default: both].
    #[arg(long, value_delimiter = ',')]
    formats: Option<Vec<String>>,
}

#[derive(Args)]
struct ReproduceArgs {
    target: Target,
    #[command(flatten)]
    shared: Shared,
    /// Add exhaustive search to the fig3/fig4 sweeps (slow).
    #[arg(long)]
    with_es: bool,
    /// Exhaustive-search evaluation budget [default: 50000000].
    #[arg(long)]
    es_budget: Option<u64>,
    /// Record wall time in the wall_ms column.
    #[arg(long)]
    timing: bool,
}

impl Shared {
    fn flags(&self) -> RunConfig {
        RunConfig {
            wavelength_m: self.wavelength,
            output_dir: self.out_dir.clone(),
            ..RunConfig::default()
        }
    }

    fn resolve(&self, flags: RunConfig) -> Result<RunConfig, Failure> {
        let file = RunConfig::load(self.config.as_deref())?;
        Ok(overlay(file, flags))
    }
}

impl Knobs {
    fn apply(&self, cfg: RunConfig) -> RunConfig {
        RunConfig {
            n_antennas: self.n_antennas,
            d_min: self.d_min,
            d_g: self.d_g,
            iterations: self.iterations,
            alpha0: self.alpha0,
            epsilon: self.epsilon,
            es_budget: self.es_budget,
            ..cfg
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("{THREADS_ENV} must be a non-negative integer, got `{value}`")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::usage(format!("cannot size the worker pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Eval(a) => {
            let flags = RunConfig {
                positions: a.positions.clone(),
                theta: a.theta,
                d_min: a.d_min,
                d_max: a.d_max,
                ..a.shared.flags()
            };
            commands::eval(&a.shared.resolve(flags)?, a.allow_infeasible)
        }
        Command::Optimize(a) => {
            let flags = RunConfig {
                algorithm: a.algo.clone(),
                theta: a.theta,
                d_max: a.d_max,
                ..a.knobs.apply(a.shared.flags())
            };
            let cfg = a.shared.resolve(flags)?;
            let name = cfg
                .algorithm
                .clone()
                .ok_or_else(|| Failure::usage("optimize needs --algo"))?;
            let algorithm = config::parse_algorithms(&[name])?[0];
            let req = OptimizeRequest {
                algorithm,
                trace: a.trace,
                timing: a.knobs.timing,
            };
            commands::optimize(&cfg, &req)
        }
        Command::Sweep(a) => {
            let flags = RunConfig {
                thetas: a.thetas.clone(),
                algorithms: a.algorithms.clone(),
                apertures: a.apertures.clone(),
                gd_iterations: a.gd_iterations,
                formats: a.formats.clone(),
                ..a.knobs.apply(a.shared.flags())
            };
            commands::sweep(&a.shared.resolve(flags)?, a.knobs.timing)
        }
        Command::Reproduce(a) => {
            let flags = RunConfig {
                es_budget: a.es_budget,
                ..a.shared.flags()
            };
            let req = ReproduceRequest {
                target: a.target,
                with_es: a.with_es,
                timing: a.timing,
            };
            commands::reproduce(&a.shared.resolve(flags)?, &req)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code)
        }
    }
}
