//! End-to-end simulation runs and their aggregated outcome.

use trajectory_core::{ConstraintCase, Result};

use crate::plan::{plan_vehicles, VehiclePlan};
use crate::safety::{
    check_lateral, check_rear_end, LateralViolation, RearEndViolation, SAFETY_SAMPLE_DT,
};
use crate::scenario::ScenarioConfig;

/// Everything a simulation run produces. Construction is deterministic:
/// the same configuration yields an identical report, field for field.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    /// Committed plans in crossing (arrival) order.
    pub plans: Vec<VehiclePlan>,
    /// Sum of per-vehicle energies `∫ u²/2 dt`.
    pub total_cost: f64,
    /// Plan count per constraint case, in canonical case order; zero
    /// counts included so the shape never varies.
    pub case_counts: Vec<(ConstraintCase, usize)>,
    /// Sampled spacing shortfalls (empty for a safe schedule).
    pub rear_end: Vec<RearEndViolation>,
    /// Merging-zone occupancy overlaps (empty for a safe schedule).
    pub lateral: Vec<LateralViolation>,
}

impl SimulationReport {
    /// True when both violation lists are empty.
    pub fn is_safe(&self) -> bool {
        self.rear_end.is_empty() && self.lateral.is_empty()
    }
}

/// Plans every vehicle, audits the schedule, and aggregates the outcome.
///
/// Errors only on infeasible vehicles (naming them); safety findings are
/// data in the report, not errors.
pub fn run(config: &ScenarioConfig) -> Result<SimulationReport> {
    let plans = plan_vehicles(config)?;
    let rear_end =
        check_rear_end(&plans, config.standstill_gap_m, config.time_headway_s, SAFETY_SAMPLE_DT);
    let lateral = check_lateral(&plans, |a, b| config.conflicting(a, b));
    let total_cost = plans.iter().map(VehiclePlan::cost).sum();
    let case_counts = ConstraintCase::ALL
        .iter()
        .map(|&case| (case, plans.iter().filter(|p| p.case() == case).count()))
        .collect();
    Ok(SimulationReport { plans, total_cost, case_counts, rear_end, lateral })
}
