//! Deterministic signal-free merging coordination on closed-form solves.
//!
//! A stream of vehicles approaches one merging zone along conflicting
//! lanes. A coordinator assigns each vehicle a merging time in strict
//! arrival order — never earlier than its own preference, its lane
//! predecessor's spacing, or any conflicting occupancy — and each vehicle
//! then follows
//! the energy-minimal trajectory for its assigned horizon. Safety is
//! audited, not assumed: sampled rear-end gaps and pairwise occupancy
//! intersections are reported as data.

mod plan;
mod report;
mod safety;
mod scenario;

pub use plan::{plan_vehicles, VehiclePlan, MAX_REPAIR_STEPS, REPAIR_STEP_S};
pub use report::{run, SimulationReport};
pub use safety::{
    check_lateral, check_rear_end, first_rear_end_conflict, LateralViolation, RearEndViolation,
    SAFETY_SAMPLE_DT,
};
pub use scenario::{
    ScenarioConfig, VehicleArrival, DEFAULT_LATERAL_EPSILON_S, DEFAULT_STANDSTILL_GAP_M,
    DEFAULT_TIME_HEADWAY_S,
};
