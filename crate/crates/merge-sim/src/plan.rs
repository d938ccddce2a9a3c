//! Merging-time assignment and per-vehicle planning.
//!
//! Vehicles are processed strictly in arrival order (FIFO). Each vehicle's
//! merging time starts from its own preference — a constant-speed cruise,
//! or the scenario's transit-time demand — and is pushed later until it
//! clears three hurdles: the same-lane predecessor's crossing plus a
//! speed-dependent headway, every conflicting vehicle's merging-zone exit
//! plus the lateral separation, and the vehicle's own reachability window.
//! A sampled spacing check then repairs any residual rear-end conflict by
//! delaying the crossing in fixed steps; delay is the only control knob, so
//! assignment never reorders vehicles.

use trajectory_core::{
    max_transit_time, min_transit_time, BoundaryConditions, ConstraintCase, CostateProfile, Error,
    Limits, PiecewiseTrajectory, Result,
};
use trajectory_solver::solve;

use crate::safety::{first_rear_end_conflict, SAFETY_SAMPLE_DT};
use crate::scenario::{ScenarioConfig, VehicleArrival};

/// Delay step (s) used by the rear-end repair loop.
pub const REPAIR_STEP_S: f64 = 0.25;

/// Cap on repair steps per vehicle; at [`REPAIR_STEP_S`] this allows a
/// minute of added delay before the planner gives up and lets the safety
/// report carry the residual violation.
pub const MAX_REPAIR_STEPS: usize = 240;

/// One vehicle's committed plan through the control and merging zones.
#[derive(Debug, Clone, PartialEq)]
pub struct VehiclePlan {
    /// Vehicle id from the scenario.
    pub id: String,
    /// Lane label from the scenario.
    pub lane: String,
    /// Boundary data of the control-zone transit (`tm` is the merging time).
    pub bc: BoundaryConditions,
    /// Actuation limits the plan was solved under.
    pub lim: Limits,
    /// The energy-minimal control-zone trajectory.
    pub traj: PiecewiseTrajectory,
    /// Adjoints of the trajectory, kept for optimality audits.
    pub profile: CostateProfile,
    /// Merging-zone exit time (s): the zone is crossed at the exit speed,
    /// so `t_f = tm + S / v(tm)`.
    pub t_f: f64,
}

impl VehiclePlan {
    /// Builds a plan from a solved trajectory, deriving the merging-zone
    /// exit time. Errors when the trajectory exits the control zone at a
    /// standstill, which the constant-speed crossing model cannot carry
    /// through the merging zone.
    pub fn new(
        id: String,
        lane: String,
        bc: BoundaryConditions,
        lim: Limits,
        merging_zone_size_m: f64,
        traj: PiecewiseTrajectory,
        profile: CostateProfile,
    ) -> Result<Self> {
        let v_exit = traj.terminal_speed();
        if v_exit <= 1e-9 {
            return Err(Error::Infeasible(format!(
                "vehicle {id}: exits the control zone at a standstill and cannot \
                 cross the merging zone"
            )));
        }
        let t_f = bc.tm + merging_zone_size_m / v_exit;
        Ok(Self { id, lane, bc, lim, traj, profile, t_f })
    }

    /// Merging-zone occupancy `[tm, t_f)`.
    pub fn occupancy(&self) -> (f64, f64) {
        (self.bc.tm, self.t_f)
    }

    /// Constraint case of the committed trajectory.
    pub fn case(&self) -> ConstraintCase {
        self.traj.case()
    }

    /// Energy of the committed trajectory.
    pub fn cost(&self) -> f64 {
        self.traj.cost()
    }

    /// Position (m along the lane) at any time, total over all of time:
    /// inside the transit window it follows the trajectory; outside it the
    /// vehicle is extrapolated at the nearest boundary speed. The forward
    /// extrapolation is the crossing model (constant exit speed); the
    /// backward one extends the approach cruise upstream of the zone.
    pub fn position_at(&self, t: f64) -> f64 {
        if t < self.bc.t0 {
            self.bc.p0 - self.bc.v0 * (self.bc.t0 - t)
        } else if t > self.bc.tm {
            self.bc.pm + self.traj.terminal_speed() * (t - self.bc.tm)
        } else {
            let (p, _, _) = self.traj.eval(t).expect("t inside the transit window");
            p
        }
    }

    /// Speed (m/s) at any time, extrapolated like [`Self::position_at`].
    pub fn speed_at(&self, t: f64) -> f64 {
        if t < self.bc.t0 {
            self.bc.v0
        } else if t > self.bc.tm {
            self.traj.terminal_speed()
        } else {
            let (_, v, _) = self.traj.eval(t).expect("t inside the transit window");
            v
        }
    }
}

/// Solves one vehicle for a given merging time.
fn solve_for(
    arrival: &VehicleArrival,
    tm: f64,
    config: &ScenarioConfig,
    lim: &Limits,
) -> Result<VehiclePlan> {
    let bc = BoundaryConditions::new(
        arrival.arrival_time_s,
        tm,
        0.0,
        config.control_zone_length_m,
        arrival.arrival_speed_mps,
    )?;
    let (traj, profile) = solve(&bc, lim)?;
    VehiclePlan::new(
        arrival.id.clone(),
        arrival.lane.clone(),
        bc,
        *lim,
        config.merging_zone_size_m,
        traj,
        profile,
    )
}

/// Assigns merging times in arrival order and solves every vehicle.
///
/// Errors with [`Error::Infeasible`] naming the vehicle whose required
/// delay exceeds its reachability window (a positive speed floor bounds how
/// long a transit can take) or whose transit-time demand is below the
/// minimum feasible transit.
pub fn plan_vehicles(config: &ScenarioConfig) -> Result<Vec<VehiclePlan>> {
    config.validate()?;
    let lim = config.limits()?;
    let l = config.control_zone_length_m;
    let mut plans: Vec<VehiclePlan> = Vec::with_capacity(config.vehicles.len());

    for arrival in &config.vehicles {
        let t0 = arrival.arrival_time_s;
        let v0 = arrival.arrival_speed_mps;
        let min_t = min_transit_time(l, v0, &lim);
        let max_t = max_transit_time(l, v0, &lim);

        let preferred = match arrival.target_transit_time_s {
            Some(target) => {
                if target <= min_t {
                    return Err(Error::Infeasible(format!(
                        "vehicle {}: transit-time demand {target} s is at or below the \
                         minimum feasible transit {min_t} s",
                        arrival.id
                    )));
                }
                target
            }
            None => l / v0,
        };
        let mut tm = t0 + preferred;

        if let Some(pred) = plans.iter().rev().find(|p| p.lane == arrival.lane) {
            // Time headway at the crossing: the spacing rule δ = d0 + h·v
            // translated into time at the predecessor's exit speed.
            let v_exit = pred.traj.terminal_speed();
            tm = tm.max(pred.bc.tm + config.time_headway_s + config.standstill_gap_m / v_exit);
        }
        for p in plans.iter().filter(|p| config.conflicting(&p.lane, &arrival.lane)) {
            tm = tm.max(p.t_f + config.lateral_epsilon_s);
        }

        let infeasible_delay = |tm: f64| -> Result<()> {
            if let Some(max_t) = max_t {
                // The window edge itself is excluded: the boundary profile
                // (brake hard, then crawl at the floor) admits no interior
                // optimum for the solver to return.
                if tm - t0 > max_t - 1e-9 {
                    return Err(Error::Infeasible(format!(
                        "vehicle {}: needs to cross at {tm} s but can stretch its \
                         transit only to {} s under the speed floor",
                        arrival.id,
                        t0 + max_t
                    )));
                }
            }
            Ok(())
        };

        infeasible_delay(tm)?;
        let mut plan = solve_for(arrival, tm, config, &lim)?;

        // Sampled spacing repair against the same-lane predecessor. Delay
        // only ever increases the gap (the follower falls further behind),
        // so the loop terminates unless the entry state itself violates.
        if let Some(pred) = plans.iter().rev().find(|p| p.lane == arrival.lane) {
            let mut steps = 0;
            while steps < MAX_REPAIR_STEPS
                && first_rear_end_conflict(
                    pred,
                    &plan,
                    config.standstill_gap_m,
                    config.time_headway_s,
                    SAFETY_SAMPLE_DT,
                )
                .is_some()
            {
                tm += REPAIR_STEP_S;
                infeasible_delay(tm)?;
                plan = solve_for(arrival, tm, config, &lim)?;
                steps += 1;
            }
        }

        plans.push(plan);
    }
    Ok(plans)
}
