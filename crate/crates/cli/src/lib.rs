//! Command-line front end and live session service.
//!
//! `simulate` runs a scenario headless and exports its trace, `serve` streams
//! live sessions over WebSocket, and `balance` / `report` drive the study kit.

mod config_file;
pub mod serve;
mod simulate;
mod study;

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use coriolis_core::rotframe::FrictionParams;
use coriolis_core::scenario::{ScenarioConfig, ScenarioKind, Vantage};
use coriolis_core::Vec3;

pub use config_file::ConfigFile;
pub use serve::{router, serve, ServeOptions};
pub use simulate::{simulate, SimulateSummary};
pub use study::{balance, report};

/// Failure of a subcommand, mapped onto the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad flag, flag value or config entry (exit 2).
    Usage(String),
    /// Unreadable input or unwritable output (exit 1).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Parser)]
#[command(
    name = "coriolis",
    version,
    about = "Rotating-frame simulator: batch runs, live service and study tools"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a scenario headless, print a summary and optionally export the trace.
    Simulate(SimulateArgs),
    /// Serve live sessions over WebSocket at /ws.
    Serve(ServeArgs),
    /// Split a roster into groups with matching GPA mean and variance.
    Balance(BalanceArgs),
    /// Balance a scored roster and report control/experimental score changes.
    Report(ReportArgs),
}

/// Comma-separated vector `X,Y,Z` (a missing z is 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VecArg(pub Vec3);

impl FromStr for VecArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(format!("expected X,Y[,Z], got {s:?}"));
        }
        let mut c = [0.0; 3];
        for (slot, p) in c.iter_mut().zip(&parts) {
            *slot = p
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| format!("not a finite number: {p:?}"))?;
        }
        Ok(VecArg(Vec3::from(c)))
    }
}

/// Scenario settings shared by `simulate` and `serve`.
#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioFlags {
    /// ball | glider
    #[arg(long)]
    pub scenario: Option<ScenarioKind>,
    /// Disc spin rate, rad/s (positive is counterclockwise).
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Kinetic friction coefficient (ball only).
    #[arg(long = "mu-k")]
    pub mu_k: Option<f64>,
    /// Static friction coefficient (ball only); defaults to at least mu-k.
    #[arg(long = "mu-s")]
    pub mu_s: Option<f64>,
    /// Body mass, kg.
    #[arg(long)]
    pub mass: Option<f64>,
    /// Integration step, s.
    #[arg(long)]
    pub dt: Option<f64>,
    /// rotating | inertial
    #[arg(long)]
    pub vantage: Option<Vantage>,
}

pub(crate) const SCENARIO_KEYS: [&str; 7] =
    ["scenario", "omega", "mu-k", "mu-s", "mass", "dt", "vantage"];

impl ScenarioFlags {
    /// Merge flags over the config file over the scenario defaults.
    pub fn resolve(
        &self,
        file: &ConfigFile,
        fallback: Option<ScenarioKind>,
    ) -> Result<ScenarioConfig, CliError> {
        let kind = file
            .or(self.scenario, "scenario")?
            .or(fallback)
            .ok_or_else(|| {
                CliError::Usage("missing required flag --scenario <ball|glider>".into())
            })?;
        let mut cfg = ScenarioConfig::for_kind(kind);
        if let Some(w) = file.or(self.omega, "omega")? {
            cfg.omega0 = w;
        }
        if let Some(m) = file.or(self.mass, "mass")? {
            cfg.mass = m;
        }
        if let Some(dt) = file.or(self.dt, "dt")? {
            cfg.dt = dt;
        }
        if let Some(v) = file.or(self.vantage, "vantage")? {
            cfg.vantage = v;
        }
        let mu_k = file.or(self.mu_k, "mu-k")?;
        let mu_s = file.or(self.mu_s, "mu-s")?;
        if mu_k.is_some() || mu_s.is_some() {
            let f = cfg.friction;
            let mu_k = mu_k.unwrap_or(f.mu_k);
            // A lone kinetic value drags the static default up with it.
            let mu_s = mu_s.unwrap_or(f.mu_s.max(mu_k));
            cfg.friction =
                FrictionParams::new(mu_s, mu_k).map_err(|e| CliError::Usage(e.to_string()))?;
        }
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scenario: ScenarioFlags,
    /// Simulated time, s.
    #[arg(long)]
    pub duration: Option<f64>,
    /// Launch impulse X,Y,Z in N·s; defaults to 1 m/s along +x.
    #[arg(long, allow_negative_numbers = true)]
    pub impulse: Option<VecArg>,
    /// Record every Nth step (0 records nothing).
    #[arg(long)]
    pub stride: Option<u32>,
    /// Write the recorded trace as CSV.
    #[arg(long)]
    pub export: Option<PathBuf>,
    /// Drive the body from a tick,x,y,z device script through the coupling.
    #[arg(long = "device-script")]
    pub device_script: Option<PathBuf>,
    /// key=value file with any of the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    #[command(flatten)]
    pub scenario: ScenarioFlags,
    /// Listening port; falls back to $PORT, then the config file, then 8080.
    #[arg(long, env = "PORT")]
    pub port: Option<u16>,
    /// Address to bind (default 127.0.0.1).
    #[arg(long)]
    pub host: Option<String>,
    /// State messages per second.
    #[arg(long)]
    pub publish_hz: Option<f64>,
    /// Directory of static assets served at /.
    #[arg(long = "static")]
    pub static_dir: Option<PathBuf>,
    /// key=value file with any of the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct BalanceArgs {
    /// Roster CSV: id,gpa[,quiz_score]
    #[arg(long)]
    pub roster: PathBuf,
    /// Number of groups.
    #[arg(long, default_value_t = 4)]
    pub groups: usize,
    /// Weight of the variance term in the balance objective.
    #[arg(long, default_value_t = 1.0)]
    pub variance_weight: f64,
    /// Local-search restarts for rosters too large to search exhaustively.
    #[arg(long, default_value_t = 32)]
    pub restarts: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub balance: BalanceArgs,
    /// Pairs file: pair_id,control,experimental,independent_variable.
    /// Defaults to the four standard comparisons.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
}

pub(crate) fn load_config(path: Option<&PathBuf>) -> Result<ConfigFile, CliError> {
    path.map_or_else(|| Ok(ConfigFile::default()), |p| ConfigFile::load(p))
}
