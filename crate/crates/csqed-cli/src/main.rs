//! `csqed`: entanglement dynamics of two static atoms coupled to the
//! electromagnetic vacuum of a cosmic-string spacetime.
//!
//! Subcommands: `coefficients` (response tensors and dissipator scalars),
//! `evolve` (single trajectory CSV), `sweep` (one trajectory per swept
//! parameter value), `figures` (canned curve families). Exit codes:
//! 0 success, 2 configuration error, 3 convergence failure, 4 physicality
//! violation.

mod commands;
mod config;
mod figures;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use csqed::{
    DynamicsError, EvolutionSettings, KossakowskiError, ResponseError, SummationControl,
};

use config::Overrides;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("physicality violation: {0}")]
    Physicality(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Convergence(_) => 3,
            CliError::Physicality(_) => 4,
            CliError::Io(_) => 1,
        }
    }

    /// Tag an error with the sweep point it came from.
    fn at_sweep_point(self, value: Option<f64>) -> Self {
        let Some(value) = value else { return self };
        match self {
            CliError::Config(m) => CliError::Config(format!("sweep point {value}: {m}")),
            CliError::Convergence(m) => CliError::Convergence(format!("sweep point {value}: {m}")),
            CliError::Physicality(m) => CliError::Physicality(format!("sweep point {value}: {m}")),
            io @ CliError::Io(_) => io,
        }
    }
}

impl From<ResponseError> for CliError {
    fn from(e: ResponseError) -> Self {
        match e {
            ResponseError::SumNotConverged { .. } | ResponseError::Quadrature { .. } => {
                CliError::Convergence(e.to_string())
            }
            ResponseError::InvalidGeometry(_) | ResponseError::InvalidControl(_) => {
                CliError::Config(e.to_string())
            }
        }
    }
}

impl From<KossakowskiError> for CliError {
    fn from(e: KossakowskiError) -> Self {
        match e {
            KossakowskiError::Response(inner) => inner.into(),
            KossakowskiError::PositivityViolated { .. } => CliError::Physicality(e.to_string()),
            KossakowskiError::NotUnit { .. } | KossakowskiError::NotFinite { .. } => {
                CliError::Config(e.to_string())
            }
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::PositivityViolation { .. } => CliError::Physicality(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "csqed",
    version,
    about = "Two-atom entanglement dynamics in cosmic-string spacetime"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for sweeps and figure families (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(flatten)]
    overrides: OverrideArgs,
}

/// Command-line overrides mirroring the config keys.
#[derive(Args, Debug, Default)]
struct OverrideArgs {
    #[arg(long, global = true, help_heading = "Config overrides")]
    nu: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    omega_r: Option<f64>,
    #[arg(long = "omega-l", global = true, help_heading = "Config overrides")]
    omega_l: Option<f64>,
    /// Atom-1 dipole, e.g. "1,0,0"
    #[arg(long, global = true, help_heading = "Config overrides")]
    d1: Option<String>,
    /// Atom-2 dipole, e.g. "0,1,0"
    #[arg(long, global = true, help_heading = "Config overrides")]
    d2: Option<String>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    werner_p: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    t_max: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    dt: Option<f64>,
    /// Integration method: exact | rk4
    #[arg(long, global = true, help_heading = "Config overrides")]
    method: Option<String>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    n_max: Option<u32>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    term_tol: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    quad_points: Option<usize>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    quad_tol: Option<f64>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    sweep_param: Option<String>,
    #[arg(long, global = true, help_heading = "Config overrides")]
    sweep_values: Option<String>,
}

impl OverrideArgs {
    fn to_overrides(&self) -> Overrides {
        Overrides {
            nu: self.nu,
            omega_r: self.omega_r,
            omega_l: self.omega_l,
            d1: self.d1.clone(),
            d2: self.d2.clone(),
            werner_p: self.werner_p,
            t_max: self.t_max,
            dt: self.dt,
            method: self.method.clone(),
            n_max: self.n_max,
            term_tol: self.term_tol,
            quad_points: self.quad_points,
            quad_tol: self.quad_tol,
            sweep_param: self.sweep_param.clone(),
            sweep_values: self.sweep_values.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate response tensors and dissipator coefficients
    Coefficients {
        #[arg(long)]
        config: PathBuf,
        /// Output CSV (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve one scenario and write the trajectory CSV
    Evolve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evolve every sweep point, one trajectory CSV per value
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        outdir: PathBuf,
    },
    /// Emit the canned figure curve families
    Figures {
        /// Figure id: 1, 2a, 2b, 3a, 3b, 4a, 4b or 5
        #[arg(long)]
        id: String,
        #[arg(long)]
        outdir: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let overrides = cli.overrides.to_overrides();
    match &cli.command {
        Command::Coefficients { config, out } => {
            let scenario = config::load_scenario(config, &overrides)?;
            commands::run_coefficients(&scenario, out.as_deref())
        }
        Command::Evolve { config, out } => {
            let scenario = config::load_scenario(config, &overrides)?;
            commands::run_evolve(&scenario, out)
        }
        Command::Sweep { config, outdir } => {
            let scenario = config::load_scenario(config, &overrides)?;
            commands::run_sweep(&scenario, outdir)
        }
        Command::Figures { id, outdir } => {
            // Figures take the numeric and evolution overrides but pin their
            // own geometry and polarizations.
            let defaults = SummationControl::default();
            let numerics = SummationControl::new(
                overrides.n_max.unwrap_or(defaults.n_max()),
                overrides.term_tol.unwrap_or(defaults.term_tol()),
                overrides.quad_points.unwrap_or(defaults.quad_points()),
                overrides.quad_tol.unwrap_or(defaults.quad_tol()),
            )
            .map_err(|e| CliError::Config(e.to_string()))?;
            let ev_defaults = EvolutionSettings::default();
            let evolution = EvolutionSettings::new(
                overrides.t_max.unwrap_or(ev_defaults.t_max),
                overrides.dt.unwrap_or(ev_defaults.dt),
                ev_defaults.method,
            )
            .map_err(|e| CliError::Config(e.to_string()))?;
            figures::run_figure(id, outdir, &numerics, &evolution)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: cannot size worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
