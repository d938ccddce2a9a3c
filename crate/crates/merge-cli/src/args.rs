//! Command-line surface of the `merge-opt` binary.
//!
//! Three subcommands share one numeric vocabulary: `--L` (control-zone
//! length, m), `--T` (transit horizon, s), `--v0` (entry speed, m/s), and
//! the box limits `--vmin`/`--vmax` (m/s) and `--umin`/`--umax` (m/s²).
//! Limits default to effectively unbounded values so a plain
//! `solve --L 200 --T 10 --v0 13.4` studies the box-free optimum.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Effectively unbounded speed cap / control magnitude used when a limit
/// flag is omitted. Large enough that no realistic instance activates it,
/// small enough to survive squaring without overflow.
pub const UNBOUNDED: f64 = 1e9;

#[derive(Debug, Parser)]
#[command(
    name = "merge-opt",
    version,
    about = "Energy-minimal control-zone trajectories and merge scheduling"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one control-zone transit and print the optimal trajectory.
    Solve(SolveArgs),
    /// Plan every vehicle in a scenario file and write per-vehicle results.
    Simulate(SimulateArgs),
    /// Emit plot data comparing box-free, single-bound, and final profiles.
    Figure(FigureArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Control-zone length L (m).
    #[arg(long = "L", value_name = "M", allow_hyphen_values = true)]
    pub length: f64,

    /// Transit horizon T (s): the zone must be covered in exactly this time.
    #[arg(long = "T", value_name = "S", allow_hyphen_values = true)]
    pub horizon: f64,

    /// Entry speed v0 (m/s).
    #[arg(long = "v0", value_name = "MPS", allow_hyphen_values = true)]
    pub entry_speed: f64,

    /// Speed floor (m/s).
    #[arg(long, value_name = "MPS", default_value_t = 0.0, allow_hyphen_values = true)]
    pub vmin: f64,

    /// Speed cap (m/s).
    #[arg(long, value_name = "MPS", default_value_t = UNBOUNDED, allow_hyphen_values = true)]
    pub vmax: f64,

    /// Control floor (m/s², negative for braking).
    #[arg(long, value_name = "MPS2", default_value_t = -UNBOUNDED, allow_hyphen_values = true)]
    pub umin: f64,

    /// Control cap (m/s²).
    #[arg(long, value_name = "MPS2", default_value_t = UNBOUNDED, allow_hyphen_values = true)]
    pub umax: f64,

    /// Re-derive the cost on a discretized grid and print the relative gap.
    #[arg(long)]
    pub verify: bool,

    /// Write sampled trajectory rows (t, p, v, u, arc kind) to this path.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,

    /// Sampling step (s) for --csv rows and the --verify grid.
    #[arg(long, value_name = "S", default_value_t = 0.01)]
    pub resolution: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Scenario description (TOML).
    #[arg(long, value_name = "PATH")]
    pub scenario: PathBuf,

    /// Directory for per-vehicle CSVs, summary.csv, and violations.csv.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,

    /// Re-derive each plan's cost on a discretized grid and print the gaps.
    #[arg(long)]
    pub verify: bool,

    /// Sampling step (s) for the per-vehicle trajectory CSVs.
    #[arg(long, value_name = "S", default_value_t = 0.01)]
    pub resolution: f64,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Bundled instance id (`paper-1` or `paper-2`); alternative to flags.
    #[arg(long = "scenario-id", value_name = "ID")]
    pub scenario_id: Option<String>,

    /// Control-zone length L (m).
    #[arg(long = "L", value_name = "M", allow_hyphen_values = true)]
    pub length: Option<f64>,

    /// Transit horizon T (s).
    #[arg(long = "T", value_name = "S", allow_hyphen_values = true)]
    pub horizon: Option<f64>,

    /// Entry speed v0 (m/s).
    #[arg(long = "v0", value_name = "MPS", allow_hyphen_values = true)]
    pub entry_speed: Option<f64>,

    /// Speed floor (m/s).
    #[arg(long, value_name = "MPS", default_value_t = 0.0, allow_hyphen_values = true)]
    pub vmin: f64,

    /// Speed cap (m/s).
    #[arg(long, value_name = "MPS", default_value_t = UNBOUNDED, allow_hyphen_values = true)]
    pub vmax: f64,

    /// Control floor (m/s², negative for braking).
    #[arg(long, value_name = "MPS2", default_value_t = -UNBOUNDED, allow_hyphen_values = true)]
    pub umin: f64,

    /// Control cap (m/s²).
    #[arg(long, value_name = "MPS2", default_value_t = UNBOUNDED, allow_hyphen_values = true)]
    pub umax: f64,

    /// Write three-column (t, series, value) plot data to this path.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Sampling step (s) for the plot-data rows.
    #[arg(long, value_name = "S", default_value_t = 0.02)]
    pub resolution: f64,
}
