use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use periwave::commands;
use periwave::config::{IntegratorTag, KGrid, RunConfig};
use periwave::CliError;

#[derive(Parser)]
#[command(name = "periwave", version, about = "Periodic traveling waves: profiles, spectra, stability checks, evolution")]
struct Cli {
    /// JSON run configuration; command-line flags take precedence over its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a profile and write <output>.json and <output>.csv
    Construct(#[command(flatten)] WaveArgs),
    /// Low spectrum of the linearized operator, as JSON
    Spectrum {
        #[command(flatten)]
        wave: WaveArgs,
        /// Galerkin truncation (modes |m| ≤ N_t)
        #[arg(long = "Nt")]
        nt: Option<usize>,
    },
    /// θ over a k-grid and a list of periods, as CSV
    Theta(#[command(flatten)] SweepArgs),
    /// Hypothesis report over a k-grid, as CSV
    Verify {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long = "Nt")]
        nt: Option<usize>,
        /// base step of the k-derivatives
        #[arg(long)]
        h: Option<f64>,
    },
    /// Perturb a profile and evolve it, writing the ρ/drift trace as CSV
    Evolve(EvolveArgs),
    /// Recompute a published table and compare
    Reproduce {
        /// mkdv_theta, mbbm_theta_table1 or mbbm_phi_psi_table2
        #[arg(long)]
        table: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: Option<String>,
    /// Gardner quadratic coefficient (default 1)
    #[arg(long)]
    a: Option<f64>,
    /// Gardner cubic coefficient (default 1)
    #[arg(long)]
    b: Option<f64>,
    /// ILW depth (default 1)
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Args)]
struct WaveArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long = "L")]
    period: Option<f64>,
    /// grid size, a power of two
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, conflicts_with_all = ["k_start", "k_stop", "k_count"])]
    k: Option<f64>,
    #[arg(long, requires_all = ["k_stop", "k_count"])]
    k_start: Option<f64>,
    #[arg(long, requires_all = ["k_start", "k_count"])]
    k_stop: Option<f64>,
    #[arg(long, requires_all = ["k_start", "k_stop"])]
    k_count: Option<usize>,
    /// one period, or several separated by commas
    #[arg(long = "L", value_delimiter = ',')]
    periods: Vec<f64>,
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    wave: WaveArgs,
    /// sup-norm amplitude of the perturbation
    #[arg(long)]
    amplitude: Option<f64>,
    /// Fourier mode of a cosine perturbation
    #[arg(long, conflicts_with = "seed")]
    mode: Option<u32>,
    /// seed of a random perturbation (modes 1..=8)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    dt: Option<f64>,
    /// horizon in time units
    #[arg(long = "T", conflicts_with = "travel_periods")]
    horizon: Option<f64>,
    /// horizon in units of L/|c| (default 10)
    #[arg(long)]
    travel_periods: Option<f64>,
    /// exponential_rk4 or implicit_midpoint
    #[arg(long, value_parser = parse_integrator)]
    integrator: Option<IntegratorTag>,
    /// disable the 2/3 rule
    #[arg(long)]
    no_dealias: bool,
    #[arg(long)]
    record_every: Option<usize>,
    /// write the final state as a profile document
    #[arg(long)]
    snapshot: Option<PathBuf>,
}

fn parse_integrator(s: &str) -> Result<IntegratorTag, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|_| format!("unknown integrator {s:?}; expected exponential_rk4 or implicit_midpoint"))
}

impl FamilyArgs {
    fn into_config(self) -> RunConfig {
        RunConfig { family: self.family, a: self.a, b: self.b, delta: self.delta, ..Default::default() }
    }
}

impl WaveArgs {
    fn into_config(self) -> RunConfig {
        RunConfig { k: self.k, period: self.period, n: self.n, output: self.output, ..self.family.into_config() }
    }
}

impl SweepArgs {
    fn into_config(self) -> RunConfig {
        let k_grid = match (self.k_start, self.k_stop, self.k_count) {
            (Some(start), Some(stop), Some(count)) => Some(KGrid { start, stop, count }),
            _ => None,
        };
        let (period, periods) = match self.periods.len() {
            0 => (None, None),
            1 => (Some(self.periods[0]), None),
            _ => (None, Some(self.periods)),
        };
        RunConfig {
            k: self.k,
            k_grid,
            period,
            periods,
            n: self.n,
            output: self.output,
            ..self.family.into_config()
        }
    }
}

type Handler = fn(&RunConfig) -> Result<u8, CliError>;

fn run(cli: Cli) -> Result<u8, CliError> {
    let file = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let (flags, cmd): (RunConfig, Handler) = match cli.command {
        Command::Construct(w) => (w.into_config(), commands::construct_cmd),
        Command::Spectrum { wave, nt } => (RunConfig { nt, ..wave.into_config() }, commands::spectrum_cmd),
        Command::Theta(s) => (s.into_config(), commands::theta_cmd),
        Command::Verify { sweep, nt, h } => (RunConfig { nt, h, ..sweep.into_config() }, commands::verify_cmd),
        Command::Evolve(e) => (
            RunConfig {
                amplitude: e.amplitude,
                mode: e.mode,
                seed: e.seed,
                dt: e.dt,
                horizon: e.horizon,
                travel_periods: e.travel_periods,
                integrator: e.integrator,
                dealias: e.no_dealias.then_some(false),
                record_every: e.record_every,
                snapshot: e.snapshot,
                ..e.wave.into_config()
            },
            commands::evolve_cmd,
        ),
        Command::Reproduce { table, output } => (RunConfig { table, output, ..Default::default() }, commands::reproduce_cmd),
    };
    let cfg = file.overlay(flags);
    cfg.validate()?;
    cmd(&cfg)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
