//! Library backing the `merge-opt` binary.
//!
//! Each subcommand is a plain function from parsed arguments to a
//! [`CmdOutcome`] carrying the exact stdout/stderr text and the process
//! exit code, so integration tests can drive the commands without spawning
//! processes and the binary shell in `main.rs` stays trivial.
//!
//! Exit codes are a total function of the input class:
//!
//! | code | meaning                                                    |
//! |------|------------------------------------------------------------|
//! | 0    | success                                                    |
//! | 1    | internal error (a bug, not a property of the input)        |
//! | 2    | invalid flags, malformed scenario file, or unwritable path |
//! | 3    | infeasible instance or vehicle                             |
//! | 4    | `--verify` found a cost gap above tolerance                |
//! | 5    | committed schedule violates a safety check                 |

mod args;
mod figure_cmd;
mod simulate_cmd;
mod solve_cmd;

pub use args::{Cli, Command, FigureArgs, SimulateArgs, SolveArgs, UNBOUNDED};
pub use figure_cmd::{
    paper_instance, run_figure, PUBLISHED_SPEED_JUNCTION_S, SERIES_FINAL, SERIES_FREE,
};
pub use simulate_cmd::run_simulate;
pub use solve_cmd::{run_solve, VERIFY_COST_REL_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_VERIFY_GAP: i32 = 4;
pub const EXIT_UNSAFE: i32 = 5;

/// Everything a finished command hands back to the process shell.
#[derive(Debug)]
pub struct CmdOutcome {
    /// Text for stdout (reports, tables); already newline-terminated.
    pub stdout: String,
    /// Text for stderr (diagnostics); empty on clean success.
    pub stderr: String,
    /// Process exit code, one of the `EXIT_*` constants.
    pub exit_code: i32,
}

impl CmdOutcome {
    pub fn ok(stdout: String) -> Self {
        CmdOutcome { stdout, stderr: String::new(), exit_code: EXIT_OK }
    }
}

/// A command abandoned partway: diagnostics plus the exit code, along with
/// whatever stdout had been produced before the failure.
#[derive(Debug)]
pub struct CliFailure {
    pub stdout: String,
    pub message: String,
    pub exit_code: i32,
}

impl CliFailure {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliFailure { stdout: String::new(), message: message.into(), exit_code: EXIT_INVALID }
    }

    fn into_outcome(self) -> CmdOutcome {
        let mut message = self.message;
        if !message.ends_with('\n') {
            message.push('\n');
        }
        CmdOutcome { stdout: self.stdout, stderr: message, exit_code: self.exit_code }
    }
}

impl From<trajectory_core::Error> for CliFailure {
    fn from(e: trajectory_core::Error) -> Self {
        use trajectory_core::Error;
        let exit_code = match &e {
            Error::InvalidInput(_) | Error::OutsideWindow { .. } => EXIT_INVALID,
            Error::Infeasible(_) => EXIT_INFEASIBLE,
            // Inconsistent constructions and non-convergence mean a bug on
            // feasible input, not a property of the instance; keep them
            // distinct from the infeasible class.
            Error::InconsistentCase(_) | Error::EmptyFeasibleSet(_) | Error::NonConverged(_) => {
                EXIT_INTERNAL
            }
        };
        CliFailure { stdout: String::new(), message: e.to_string(), exit_code }
    }
}

impl From<std::io::Error> for CliFailure {
    fn from(e: std::io::Error) -> Self {
        CliFailure::invalid(format!("i/o error: {e}"))
    }
}

pub type CmdResult = std::result::Result<CmdOutcome, CliFailure>;

/// Runs the parsed command line to completion and folds failures into the
/// outcome, so callers only ever see stdout/stderr text and an exit code.
pub fn execute(cli: Cli) -> CmdOutcome {
    let result = match cli.command {
        Command::Solve(args) => run_solve(&args),
        Command::Simulate(args) => run_simulate(&args),
        Command::Figure(args) => run_figure(&args),
    };
    result.unwrap_or_else(CliFailure::into_outcome)
}

/// Grid-step count covering `horizon` at the requested sampling step.
pub(crate) fn grid_steps(horizon: f64, resolution: f64) -> usize {
    ((horizon / resolution).round() as usize).max(1)
}
