//! Spacing and merging-zone occupancy checks.
//!
//! Both checks are report builders, not gates: they return whatever
//! violations they find and leave acting on them to the caller. The
//! rear-end rule samples the speed-dependent gap `δ(t) = d0 + h·v(t)`
//! against the actual inter-vehicle distance; the lateral rule intersects
//! merging-zone occupancy intervals of conflicting lanes, treating them as
//! half-open so back-to-back schedules are legal.

use crate::plan::VehiclePlan;

/// Sampling resolution (s) for the rear-end gap check.
pub const SAFETY_SAMPLE_DT: f64 = 1e-2;

/// Comparison slack (m) so gaps driven exactly onto the requirement by the
/// planner do not flap between safe and violating.
const GAP_SLACK_M: f64 = 1e-9;

/// A sampled spacing shortfall between same-lane vehicles.
#[derive(Debug, Clone, PartialEq)]
pub struct RearEndViolation {
    /// Trailing vehicle (the one owing the gap).
    pub follower: String,
    /// Vehicle immediately ahead in the lane.
    pub leader: String,
    /// First sampled time (s) the gap falls short.
    pub t_s: f64,
    /// Actual gap (m) at that time.
    pub gap_m: f64,
    /// Required gap `d0 + h·v` (m) at that time.
    pub required_m: f64,
}

/// An overlap between conflicting merging-zone occupancies.
#[derive(Debug, Clone, PartialEq)]
pub struct LateralViolation {
    /// Vehicle that enters the merging zone first.
    pub first: String,
    /// Conflicting vehicle whose occupancy overlaps it.
    pub second: String,
    /// Overlap window start (s).
    pub overlap_start_s: f64,
    /// Overlap window end (s).
    pub overlap_end_s: f64,
}

/// First sampled spacing violation of `follower` against `leader`, if any.
///
/// Samples the follower's control-zone residency `[t0, tm]` at `dt` plus
/// the exact endpoint; the leader's motion is extrapolated at constant
/// speed once it leaves its own transit window.
pub fn first_rear_end_conflict(
    leader: &VehiclePlan,
    follower: &VehiclePlan,
    standstill_gap_m: f64,
    time_headway_s: f64,
    dt: f64,
) -> Option<RearEndViolation> {
    let (start, end) = (follower.bc.t0, follower.bc.tm);
    let steps = ((end - start) / dt).ceil().max(1.0) as usize;
    for k in 0..=steps {
        let t = if k == steps { end } else { start + k as f64 * dt };
        let gap = leader.position_at(t) - follower.position_at(t);
        let required = standstill_gap_m + time_headway_s * follower.speed_at(t);
        if gap + GAP_SLACK_M < required {
            return Some(RearEndViolation {
                follower: follower.id.clone(),
                leader: leader.id.clone(),
                t_s: t,
                gap_m: gap,
                required_m: required,
            });
        }
    }
    None
}

/// Checks every same-lane consecutive pair, in plan order, and reports the
/// first violation of each offending pair. Plans are expected in crossing
/// order per lane, which the planner's FIFO assignment guarantees; spacing
/// against the immediate predecessor implies spacing against everyone
/// further ahead.
pub fn check_rear_end(
    plans: &[VehiclePlan],
    standstill_gap_m: f64,
    time_headway_s: f64,
    dt: f64,
) -> Vec<RearEndViolation> {
    let mut violations = Vec::new();
    for (i, follower) in plans.iter().enumerate() {
        let leader = plans[..i].iter().rev().find(|p| p.lane == follower.lane);
        if let Some(leader) = leader {
            if let Some(v) =
                first_rear_end_conflict(leader, follower, standstill_gap_m, time_headway_s, dt)
            {
                violations.push(v);
            }
        }
    }
    violations
}

/// Reports every overlapping pair of merging-zone occupancies among
/// conflicting lanes. Occupancies are half-open `[tm, t_f)`, so an exit
/// that coincides with the next entry is legal.
pub fn check_lateral<F>(plans: &[VehiclePlan], conflicting: F) -> Vec<LateralViolation>
where
    F: Fn(&str, &str) -> bool,
{
    let mut violations = Vec::new();
    for (i, a) in plans.iter().enumerate() {
        for b in &plans[i + 1..] {
            if !conflicting(&a.lane, &b.lane) {
                continue;
            }
            let (a_start, a_end) = a.occupancy();
            let (b_start, b_end) = b.occupancy();
            let start = a_start.max(b_start);
            let end = a_end.min(b_end);
            if start < end {
                let (first, second) =
                    if a_start <= b_start { (a, b) } else { (b, a) };
                violations.push(LateralViolation {
                    first: first.id.clone(),
                    second: second.id.clone(),
                    overlap_start_s: start,
                    overlap_end_s: end,
                });
            }
        }
    }
    violations
}
