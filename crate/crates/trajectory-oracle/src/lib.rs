//! Independent numeric references for energy-minimal transit trajectories.
//!
//! Two routes to the optimum that share no formulas with any closed-form
//! solver:
//!
//! - [`solve_numeric`] transcribes the problem onto a uniform control grid
//!   and solves the resulting convex program with an augmented-Lagrangian
//!   projected-gradient method;
//! - [`junction_grid_search`] brute-forces arc junction times over a fixed
//!   candidate grid, assembling each candidate profile from boundary data
//!   alone.
//!
//! Both are slow and simple on purpose. Their value is agreement: when a
//! fast analytic solution matches the transcription cost and the scanned
//! junctions, all three are almost certainly right, because their failure
//! modes are unrelated.

mod grid_search;
mod transcription;

pub use grid_search::{junction_grid_search, JunctionEstimate, BOUND_SLACK, GRID_RESOLUTION};
pub use transcription::{
    solve_numeric, NumericSolution, TranscriptionGrid, KKT_TOL, MAX_INNER_ITERATIONS,
    POSITION_TOL_REL, SPEED_TOL,
};
