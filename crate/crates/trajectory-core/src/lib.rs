//! Core types for energy-minimal double-integrator trajectories.
//!
//! A vehicle transits a control zone of known length in a fixed horizon,
//! minimizing `∫ u²/2 dt` subject to speed and acceleration boxes. The
//! optimal profile is a short sequence of polynomial arcs; this crate holds
//! the shared vocabulary for the solvers, the numerical oracle, and the
//! coordination layer built on top:
//!
//! - [`BoundaryConditions`], [`Limits`]: problem data.
//! - [`PolyArc`], [`PiecewiseTrajectory`]: the solution representation,
//!   with exact evaluation, closed-form cost, and CSV serialization.
//! - [`CostateProfile`]: adjoint variables and constraint multipliers for
//!   optimality validation.
//! - [`reachable_envelope`], [`min_transit_time`], [`max_transit_time`]:
//!   feasibility gate and transit-time bounds.

mod costate;
mod envelope;
mod error;
mod fmt;
mod trajectory;
mod types;

pub use costate::{Affine, CostatePiece, CostateProfile};
pub use envelope::{is_reachable, max_transit_time, min_transit_time, reachable_envelope};
pub use error::{Error, Result};
pub use fmt::csv_float;
pub use trajectory::{
    cost_from_csv_rows, parse_trajectory_csv, single_arc_trajectory, PiecewiseTrajectory,
    CONTINUITY_TOL,
};
pub use types::{ArcKind, BoundaryConditions, ConstraintCase, Limits, PolyArc, TIME_TOL};
