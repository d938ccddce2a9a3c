//! Reachable-distance envelope and transit-time bounds.
//!
//! Over a fixed horizon the farthest a vehicle can travel is the
//! bang(umax)-then-cruise(vmax) profile; the shortest distance mirrors it
//! with (umin, vmin). A terminal position is feasible exactly when the
//! required distance lies between the two. The same profiles inverted give
//! the earliest and latest horizons able to cover a fixed distance, which
//! the coordination layer uses to bound merging-time assignment.
//!
//! All functions assume `vmin <= v0 <= vmax` (a vehicle enters inside its
//! speed box); ramp durations are clamped at zero so boundary entries
//! degrade gracefully.

use crate::types::{BoundaryConditions, Limits};

/// Distance covered by ramping from `v0` to `v_bound` at constant `u`
/// (saturating at the horizon `t_total`), then cruising at `v_bound`.
fn ramp_then_cruise_distance(v0: f64, v_bound: f64, u: f64, t_total: f64) -> f64 {
    let ramp = ((v_bound - v0) / u).max(0.0);
    if ramp >= t_total {
        v0 * t_total + 0.5 * u * t_total * t_total
    } else {
        v0 * ramp + 0.5 * u * ramp * ramp + v_bound * (t_total - ramp)
    }
}

/// Reachable distance range `(min, max)` over the horizon of `bc`.
///
/// Feasible instances satisfy `min <= pm - p0 <= max` (inclusive: the
/// boundary profiles themselves are admissible).
pub fn reachable_envelope(bc: &BoundaryConditions, lim: &Limits) -> (f64, f64) {
    let t = bc.horizon();
    let d_max = ramp_then_cruise_distance(bc.v0, lim.vmax, lim.umax, t);
    let d_min = ramp_then_cruise_distance(bc.v0, lim.vmin, lim.umin, t);
    (d_min, d_max)
}

/// True when the required distance lies inside the reachable envelope.
pub fn is_reachable(bc: &BoundaryConditions, lim: &Limits) -> bool {
    let (lo, hi) = reachable_envelope(bc, lim);
    let l = bc.distance();
    lo <= l && l <= hi
}

/// Earliest horizon (s) able to cover `distance` starting at `v0`: full
/// acceleration to `vmax`, then cruise.
pub fn min_transit_time(distance: f64, v0: f64, lim: &Limits) -> f64 {
    let ramp = ((lim.vmax - v0) / lim.umax).max(0.0);
    let d_ramp = v0 * ramp + 0.5 * lim.umax * ramp * ramp;
    if d_ramp >= distance {
        // Covered while still accelerating: positive root of
        // umax t²/2 + v0 t = distance.
        (-v0 + (v0 * v0 + 2.0 * lim.umax * distance).sqrt()) / lim.umax
    } else {
        ramp + (distance - d_ramp) / lim.vmax
    }
}

/// Latest horizon (s) able to cover `distance` starting at `v0`: full
/// braking to `vmin`, then cruise. `None` when the vehicle can stop short of
/// the target (`vmin = 0`), making the transit time unbounded.
pub fn max_transit_time(distance: f64, v0: f64, lim: &Limits) -> Option<f64> {
    let ramp = ((lim.vmin - v0) / lim.umin).max(0.0);
    let d_ramp = v0 * ramp + 0.5 * lim.umin * ramp * ramp;
    if d_ramp >= distance {
        // Covered while still braking: the earlier root of
        // umin t²/2 + v0 t = distance.
        let disc = v0 * v0 + 2.0 * lim.umin * distance;
        Some((-v0 + disc.max(0.0).sqrt()) / lim.umin)
    } else if lim.vmin > 0.0 {
        Some(ramp + (distance - d_ramp) / lim.vmin)
    } else {
        None
    }
}
