//! Junction location by exhaustive scan.
//!
//! Each constrained trajectory family has a fixed arc layout: a saturated
//! control arc and/or a bound-speed cruise joined by polynomial pieces. The
//! only unknowns are the junction times. This module brute-forces them:
//! candidate junctions are laid on a uniform grid, each candidate profile is
//! assembled from boundary data alone (Hermite fits and one analytically
//! minimized free tail), infeasible candidates are filtered against the
//! speed and control boxes, and the cheapest survivor wins.
//!
//! Nothing here assumes stationarity conditions at the junctions — no
//! tangency, no control continuity. Those properties are supposed to
//! *emerge* at the scan minimum, which is what makes the estimate a useful
//! independent check on closed-form junction formulas.

use rayon::prelude::*;
use trajectory_core::{BoundaryConditions, ConstraintCase, Error, Limits, Result};

/// Candidate junction spacing (s). Scan answers are exact to one step.
pub const GRID_RESOLUTION: f64 = 1e-3;

/// Slack (native units) when filtering candidates against the speed and
/// control boxes, so that profiles touching a bound are not rejected for
/// rounding. Kept just above f64 arithmetic noise: around a junction the
/// bound overshoot grows only quadratically with the scan offset, so a
/// looser slack would admit several grid steps of overshoot and bias the
/// located junction.
pub const BOUND_SLACK: f64 = 1e-9;

/// Scan result: junction times and the cost of the winning profile.
#[derive(Debug, Clone, PartialEq)]
pub struct JunctionEstimate {
    /// Junction times (absolute, s), in trajectory order.
    pub junctions: Vec<f64>,
    /// Energy of the winning candidate profile.
    pub cost: f64,
}

/// Local coefficients `(a, b)` of the cubic arc `u(s) = a s + b` that
/// starts at speed `v_start`, gains `dv` speed, and covers `disp` metres
/// over `dur` seconds. Two conditions, two coefficients: the fit is exact.
fn fit_cubic(dur: f64, v_start: f64, dv: f64, disp: f64) -> (f64, f64) {
    let net = disp - v_start * dur;
    let a = 6.0 * (dv * dur - 2.0 * net) / (dur * dur * dur);
    let b = (dv - 0.5 * a * dur * dur) / dur;
    (a, b)
}

/// Energy `∫ u²/2` of a local cubic arc over `[0, dur]`.
fn cubic_cost(a: f64, b: f64, dur: f64) -> f64 {
    0.5 * (a * a * dur * dur * dur / 3.0 + a * b * dur * dur + b * b * dur)
}

/// True when the local cubic arc stays inside the slack-widened boxes.
/// Control is affine (endpoints suffice); speed is quadratic (endpoints
/// plus its single stationary point).
fn cubic_within_bounds(a: f64, b: f64, v_start: f64, dur: f64, lim: &Limits) -> bool {
    let u_end = a * dur + b;
    if b < lim.umin - BOUND_SLACK
        || b > lim.umax + BOUND_SLACK
        || u_end < lim.umin - BOUND_SLACK
        || u_end > lim.umax + BOUND_SLACK
    {
        return false;
    }
    let v_end = v_start + b * dur + 0.5 * a * dur * dur;
    let (mut v_lo, mut v_hi) = if v_start <= v_end { (v_start, v_end) } else { (v_end, v_start) };
    if a != 0.0 {
        let s_crit = -b / a;
        if s_crit > 0.0 && s_crit < dur {
            let v_crit = v_start + b * s_crit + 0.5 * a * s_crit * s_crit;
            v_lo = v_lo.min(v_crit);
            v_hi = v_hi.max(v_crit);
        }
    }
    v_lo >= lim.vmin - BOUND_SLACK && v_hi <= lim.vmax + BOUND_SLACK
}

/// Estimates junction times for the arc layout of `case` by exhaustive
/// scan at [`GRID_RESOLUTION`].
///
/// Junctions are reported in absolute time. One-junction cases scan a
/// single axis; the two-junction cases scan all ordered pairs (rows in
/// parallel). Errors with [`Error::EmptyFeasibleSet`] when no candidate
/// satisfies the boxes — which is also how a globally infeasible instance
/// shows up — and with [`Error::InvalidInput`] for the unconstrained case,
/// which has no junctions to locate.
pub fn junction_grid_search(
    bc: &BoundaryConditions,
    lim: &Limits,
    case: ConstraintCase,
) -> Result<JunctionEstimate> {
    match case {
        ConstraintCase::Unconstrained => Err(Error::InvalidInput(
            "unconstrained trajectories have no junctions to locate".into(),
        )),
        ConstraintCase::VmaxOnly => speed_cruise_scan(bc, lim, lim.vmax),
        ConstraintCase::VminOnly => speed_cruise_scan(bc, lim, lim.vmin),
        ConstraintCase::UmaxOnly => control_lead_scan(bc, lim, lim.umax),
        ConstraintCase::UminOnly => control_lead_scan(bc, lim, lim.umin),
        ConstraintCase::UmaxAndVmax => control_speed_scan(bc, lim, lim.umax, lim.vmax),
        ConstraintCase::UminAndVmin => control_speed_scan(bc, lim, lim.umin, lim.vmin),
    }
}

/// Layout: cubic from the start state to speed `v_cruise` at the junction,
/// then cruise at `v_cruise` to the horizon. One junction.
fn speed_cruise_scan(bc: &BoundaryConditions, lim: &Limits, v_cruise: f64) -> Result<JunctionEstimate> {
    let t_total = bc.horizon();
    let l = bc.distance();
    let steps = (t_total / GRID_RESOLUTION).floor() as usize;
    let mut best: Option<(f64, f64)> = None;
    for k in 1..steps {
        let tau = k as f64 * GRID_RESOLUTION;
        // The cruise tail pins the displacement the leading cubic must cover.
        let disp = l - v_cruise * (t_total - tau);
        let (a, b) = fit_cubic(tau, bc.v0, v_cruise - bc.v0, disp);
        if !cubic_within_bounds(a, b, bc.v0, tau, lim) {
            continue;
        }
        let cost = cubic_cost(a, b, tau);
        if best.map_or(true, |(c, _)| cost < c) {
            best = Some((cost, tau));
        }
    }
    let (cost, tau) = best.ok_or_else(|| {
        Error::EmptyFeasibleSet(format!(
            "no in-bounds ramp-and-cruise profile at {v_cruise} m/s on a {GRID_RESOLUTION} s grid"
        ))
    })?;
    Ok(JunctionEstimate { junctions: vec![bc.t0 + tau], cost })
}

/// Layout: saturated control `u_lead` up to the junction, then a free
/// cubic tail to the terminal position with free terminal speed. One
/// junction; the tail is minimized analytically, not scanned.
fn control_lead_scan(bc: &BoundaryConditions, lim: &Limits, u_lead: f64) -> Result<JunctionEstimate> {
    let t_total = bc.horizon();
    let l = bc.distance();
    let steps = (t_total / GRID_RESOLUTION).floor() as usize;
    let mut best: Option<(f64, f64)> = None;
    for k in 1..steps {
        let tau_c = k as f64 * GRID_RESOLUTION;
        let v_c = bc.v0 + u_lead * tau_c;
        if v_c < lim.vmin - BOUND_SLACK || v_c > lim.vmax + BOUND_SLACK {
            continue;
        }
        let lead_disp = bc.v0 * tau_c + 0.5 * u_lead * tau_c * tau_c;
        let theta = t_total - tau_c;
        let r = l - lead_disp;
        // Cheapest cubic tail covering r with free terminal speed: setting
        // the constrained-minimization stationarity to zero gives
        // a = 3 (v_c θ - r)/θ³ and b = -a θ, i.e. the control decays
        // linearly to zero at the horizon.
        let a_tail = 3.0 * (v_c * theta - r) / (theta * theta * theta);
        let b_tail = -a_tail * theta;
        if !cubic_within_bounds(a_tail, b_tail, v_c, theta, lim) {
            continue;
        }
        let cost = 0.5 * u_lead * u_lead * tau_c + cubic_cost(a_tail, b_tail, theta);
        if best.map_or(true, |(c, _)| cost < c) {
            best = Some((cost, tau_c));
        }
    }
    let (cost, tau_c) = best.ok_or_else(|| {
        Error::EmptyFeasibleSet(format!(
            "no in-bounds saturated-lead profile at {u_lead} m/s² on a {GRID_RESOLUTION} s grid"
        ))
    })?;
    Ok(JunctionEstimate { junctions: vec![bc.t0 + tau_c], cost })
}

/// Layout: saturated control `u_lead` up to the first junction, a cubic
/// bridge to speed `v_cruise` at the second junction, then cruise to the
/// horizon. Two junctions, scanned as ordered pairs; rows run in parallel.
fn control_speed_scan(
    bc: &BoundaryConditions,
    lim: &Limits,
    u_lead: f64,
    v_cruise: f64,
) -> Result<JunctionEstimate> {
    let t_total = bc.horizon();
    let l = bc.distance();
    let steps = (t_total / GRID_RESOLUTION).floor() as usize;
    let bc = *bc;
    let lim = *lim;
    let best = (1..steps.saturating_sub(1))
        .into_par_iter()
        .filter_map(move |kc| {
            let tau_c = kc as f64 * GRID_RESOLUTION;
            let v_c = bc.v0 + u_lead * tau_c;
            if v_c < lim.vmin - BOUND_SLACK || v_c > lim.vmax + BOUND_SLACK {
                return None;
            }
            let lead_disp = bc.v0 * tau_c + 0.5 * u_lead * tau_c * tau_c;
            let lead_cost = 0.5 * u_lead * u_lead * tau_c;
            let mut row_best: Option<(f64, usize)> = None;
            for ks in (kc + 1)..steps {
                let tau_s = ks as f64 * GRID_RESOLUTION;
                let dur = tau_s - tau_c;
                let disp_mid = (l - v_cruise * (t_total - tau_s)) - lead_disp;
                let (a, b) = fit_cubic(dur, v_c, v_cruise - v_c, disp_mid);
                if !cubic_within_bounds(a, b, v_c, dur, &lim) {
                    continue;
                }
                let cost = lead_cost + cubic_cost(a, b, dur);
                if row_best.map_or(true, |(c, _)| cost < c) {
                    row_best = Some((cost, ks));
                }
            }
            row_best.map(|(cost, ks)| (cost, kc, ks))
        })
        // Total order (cost, then indices) keeps the reduction deterministic
        // regardless of rayon's split points.
        .min_by(|x, y| {
            x.0.partial_cmp(&y.0)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| (x.1, x.2).cmp(&(y.1, y.2)))
        });
    let (cost, kc, ks) = best.ok_or_else(|| {
        Error::EmptyFeasibleSet(format!(
            "no in-bounds saturate-bridge-cruise profile ({u_lead} m/s², {v_cruise} m/s) \
             on a {GRID_RESOLUTION} s grid"
        ))
    })?;
    Ok(JunctionEstimate {
        junctions: vec![
            bc.t0 + kc as f64 * GRID_RESOLUTION,
            bc.t0 + ks as f64 * GRID_RESOLUTION,
        ],
        cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(l: f64, t: f64, v0: f64) -> BoundaryConditions {
        BoundaryConditions::new(0.0, t, 0.0, l, v0).unwrap()
    }

    #[test]
    fn unconstrained_request_is_rejected() {
        let lim = Limits::new(0.0, 40.0, -5.0, 5.0).unwrap();
        let err = junction_grid_search(&bc(200.0, 10.0, 13.4), &lim, ConstraintCase::Unconstrained);
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn ramp_to_fast_cruise_junction_is_found() {
        // 210 m in 10 s from 16 m/s with vmax = 22: the tangential ramp
        // meets the cruise at exactly 5 s with energy 2 (vmax-v0)²/(3 τ) = 4.8.
        let lim = Limits::new(0.0, 22.0, -5.0, 5.0).unwrap();
        let est = junction_grid_search(&bc(210.0, 10.0, 16.0), &lim, ConstraintCase::VmaxOnly)
            .unwrap();
        assert_eq!(est.junctions.len(), 1);
        assert!((est.junctions[0] - 5.0).abs() <= GRID_RESOLUTION + 1e-9, "{:?}", est.junctions);
        assert!((est.cost - 4.8).abs() <= 5e-3, "cost {}", est.cost);
    }

    #[test]
    fn ramp_to_slow_cruise_junction_is_found() {
        // 180 m in 10 s from 26 m/s with vmin = 15: junction at 90/11 s.
        let lim = Limits::new(15.0, 40.0, -3.0, 5.0).unwrap();
        let est = junction_grid_search(&bc(180.0, 10.0, 26.0), &lim, ConstraintCase::VminOnly)
            .unwrap();
        let expected = 90.0 / 11.0;
        assert!((est.junctions[0] - expected).abs() <= 1.5e-3, "{:?}", est.junctions);
        let expected_cost = 2.0 * 11.0 * 11.0 / (3.0 * expected);
        assert!((est.cost - expected_cost).abs() <= 1e-2, "cost {}", est.cost);
    }

    #[test]
    fn saturated_acceleration_junction_is_found() {
        // 200 m in 10 s from 13.4 m/s with umax = 1.35 and a loose speed
        // box: the saturated lead ends at 10 - sqrt(20/3) ≈ 7.418 s.
        let lim = Limits::new(0.0, 40.0, -5.0, 1.35).unwrap();
        let est = junction_grid_search(&bc(200.0, 10.0, 13.4), &lim, ConstraintCase::UmaxOnly)
            .unwrap();
        assert!((est.junctions[0] - 7.418011).abs() <= 1.5e-3, "{:?}", est.junctions);
        assert!((est.cost - 7.543941).abs() <= 5e-3, "cost {}", est.cost);
    }

    #[test]
    fn saturated_braking_junction_is_found() {
        // 170 m in 10 s from 22 m/s with umin = -1.2: lead ends at
        // 10 - sqrt(50) ≈ 2.9289 s.
        let lim = Limits::new(0.0, 40.0, -1.2, 5.0).unwrap();
        let est = junction_grid_search(&bc(170.0, 10.0, 22.0), &lim, ConstraintCase::UminOnly)
            .unwrap();
        assert!((est.junctions[0] - 2.928932).abs() <= 1.5e-3, "{:?}", est.junctions);
    }

    #[test]
    fn saturate_bridge_cruise_pair_is_found() {
        // 195 m in 10 s from 13.4 m/s with umax = 1.35 and vmax = 23. The
        // ramp-and-cruise envelope covers 195.8667 m, so the bridge spans
        // Δ = sqrt(24 (195.8667 - 195)/1.35) ≈ 3.9253 s centred on the
        // pure-ramp bound crossing at (23 - 13.4)/1.35 ≈ 7.1111 s.
        let lim = Limits::new(0.0, 23.0, -5.0, 1.35).unwrap();
        let est = junction_grid_search(&bc(195.0, 10.0, 13.4), &lim, ConstraintCase::UmaxAndVmax)
            .unwrap();
        assert_eq!(est.junctions.len(), 2);
        assert!((est.junctions[0] - 5.148466).abs() <= 2e-3, "{:?}", est.junctions);
        assert!((est.junctions[1] - 9.073756).abs() <= 2e-3, "{:?}", est.junctions);
        assert!((est.cost - 5.883849).abs() <= 5e-3, "cost {}", est.cost);
    }

    #[test]
    fn brake_bridge_slow_cruise_pair_is_found() {
        // 177 m in 10 s from 26 m/s with umin = -2 and vmin = 14: envelope
        // minimum is 176 m, bridge spans sqrt(12) s centred on 6 s.
        let lim = Limits::new(14.0, 40.0, -2.0, 5.0).unwrap();
        let est = junction_grid_search(&bc(177.0, 10.0, 26.0), &lim, ConstraintCase::UminAndVmin)
            .unwrap();
        assert!((est.junctions[0] - 4.267949).abs() <= 2e-3, "{:?}", est.junctions);
        assert!((est.junctions[1] - 7.732051).abs() <= 2e-3, "{:?}", est.junctions);
        assert!((est.cost - 10.845299).abs() <= 5e-3, "cost {}", est.cost);
    }

    #[test]
    fn out_of_reach_distance_yields_empty_feasible_set() {
        // 200 m in 10 s from 13.4 m/s cannot be covered under vmax = 22,
        // umax = 1.8 (envelope tops out at ≈ 199.46 m): every candidate
        // violates a box.
        let lim = Limits::new(0.0, 22.0, -1.8, 1.8).unwrap();
        let err = junction_grid_search(&bc(200.0, 10.0, 13.4), &lim, ConstraintCase::VmaxOnly);
        assert!(matches!(err, Err(Error::EmptyFeasibleSet(_))));
    }
}
