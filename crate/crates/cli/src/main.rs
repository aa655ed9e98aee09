//! `casimir-lab`: thermal Casimir forces between real metals from the command line.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use casimir_core::CasimirError;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "casimir-lab", version, about, args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Force at one or more separations.
    Force(Common),
    /// Force over a range of separations.
    Sweep(Common),
    /// Correction factors for the aluminium reference tables (1: plates, 2: sphere).
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[command(flatten)]
        common: Common,
    },
    /// Zero-frequency behaviour of the scattering problem for a material.
    Limits(Common),
    /// Force averaged over a rough surface profile.
    Roughness(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    Plates,
    Sphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MaterialArg {
    Plasma,
    Ideal,
    Dielectric,
    Drude,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    #[value(name = "lowT", alias = "lowt")]
    LowT,
    #[value(name = "highT", alias = "hight")]
    HighT,
    Numeric,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    Csv,
    Json,
}

/// Options shared by every subcommand so one config file serves them all.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// key=value file; flags on the command line take precedence.
    #[arg(long, value_name = "FILE")]
    pub config: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "plates")]
    pub geometry: GeometryArg,
    /// Separation(s) in μm, comma separated.
    #[arg(long, value_delimiter = ',', value_name = "UM")]
    pub separation: Vec<f64>,
    /// start:stop:count[:log|linear], separations in μm.
    #[arg(long, value_name = "SPEC")]
    pub sweep: Option<String>,
    /// Kelvin.
    #[arg(long, default_value_t = casimir_core::quantities::DEFAULT_TEMPERATURE)]
    pub temperature: f64,
    #[arg(long, value_enum, default_value = "plasma")]
    pub material: MaterialArg,
    #[arg(long, value_name = "EV", default_value_t = casimir_core::quantities::ALUMINIUM_PLASMA_EV)]
    pub plasma_frequency_ev: f64,
    #[arg(long, value_name = "EV")]
    pub gamma_ev: Option<f64>,
    #[arg(long)]
    pub eps0: Option<f64>,
    /// Sphere radius in μm.
    #[arg(long, value_name = "UM")]
    pub radius_um: Option<f64>,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    /// Highest power of δ₀/a kept in the perturbative forms.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=2))]
    pub order: u8,
    /// flat | two-point:<A_nm> | sinusoid:<A_nm>:<period_um>[:<phase_rad>] | grid file path.
    #[arg(long)]
    pub profile: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    pub output: OutputArg,
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    /// Transverse wavenumber for `limits`, in 1/μm.
    #[arg(long, value_name = "PER_UM", default_value_t = 1.0)]
    pub k_perp: f64,
}

/// Invalid invocation detected after argument parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<CasimirError>() {
        Some(CasimirError::Config(_)) => 2,
        Some(CasimirError::NonConvergence { .. }) => 4,
        Some(_) => 3,
        None => 1,
    }
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("CASIMIR_LAB_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| {
            usage(format!(
                "CASIMIR_LAB_THREADS must be a positive integer, got `{v}`"
            ))
        })?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run() -> anyhow::Result<()> {
    let argv = config::merge_config(std::env::args_os().collect())?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    init_threads()?;
    let text = match cli.command {
        Command::Force(c) => commands::force(&c, false)?,
        Command::Sweep(c) => commands::force(&c, true)?,
        Command::Table { which, common } => commands::table(which, &common)?,
        Command::Limits(c) => commands::limits(&c)?,
        Command::Roughness(c) => commands::roughness(&c)?,
    };
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
