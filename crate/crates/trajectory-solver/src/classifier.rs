//! Decides which speed and acceleration bounds bind over the horizon.
//!
//! The box-free optimum has a monotone speed profile, so at most one side of
//! the speed box — and the matching side of the control box — can ever bind:
//! the max side (`vmax`, `umax`) when the vehicle must speed up
//! (`v0 < L/T`), the min side (`vmin`, `umin`) when it must slow down. Each
//! single bound binds on one side of a horizon threshold; ties count as
//! binding. When one bound binds, the other side of the pair is re-tested on
//! the constrained profile itself (the coupled checks below), because a bound
//! that is slack against the box-free optimum can still bind once the first
//! bound reshapes the profile.

use trajectory_core::{is_reachable, BoundaryConditions, ConstraintCase, Error, Limits, Result};

use crate::junctions::{junction_umax, junction_umin, junction_vmax, junction_vmin};
use crate::unconstrained::FLAT_REL_TOL;

/// Which side of the speed/acceleration boxes can possibly bind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExclusionSide {
    /// `v0 < L/T`: only `vmax`/`umax` can bind.
    MaxSide,
    /// `v0 > L/T`: only `vmin`/`umin` can bind.
    MinSide,
    /// `v0·T = L` within [`FLAT_REL_TOL`]: the cruise binds nothing.
    Neither,
}

/// Determines the binding side from the sign of `v0·T − L`.
pub fn exclusion_side(bc: &BoundaryConditions) -> ExclusionSide {
    let gap = bc.v0 * bc.horizon() - bc.distance();
    if gap.abs() <= FLAT_REL_TOL * bc.distance().abs() {
        ExclusionSide::Neither
    } else if gap < 0.0 {
        ExclusionSide::MaxSide
    } else {
        ExclusionSide::MinSide
    }
}

/// Horizon thresholds at which each bound starts to bind.
///
/// Max-side bounds bind for short horizons (`T ≤ threshold`), min-side bounds
/// for long ones (`T ≥ threshold`); see the `*_active` predicates for the
/// exact comparisons. All four are positive; `tm_umin` is `+∞` when no
/// horizon makes `umin` bind (see [`umin_active`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActivationThresholds {
    /// `vmax` binds iff `T ≤ tm_vmax = 3L/(v0 + 2·vmax)`.
    pub tm_vmax: f64,
    /// `umax` binds iff `T ≤ tm_umax = (−3v0 + √(9v0² + 12·umax·L))/(2·umax)`.
    pub tm_umax: f64,
    /// `vmin` binds iff `T ≥ tm_vmin = 3L/(v0 + 2·vmin)`.
    pub tm_vmin: f64,
    /// `umin` binds iff `tm_umin ≤ T` and `T` stays below the far root of the
    /// same quadratic; `+∞` when the discriminant is negative.
    pub tm_umin: f64,
}

/// Computes all four activation thresholds for one instance.
pub fn activation_thresholds(bc: &BoundaryConditions, lim: &Limits) -> ActivationThresholds {
    let l = bc.distance();
    let (lo, _) = umin_window(bc, lim);
    ActivationThresholds {
        tm_vmax: 3.0 * l / (bc.v0 + 2.0 * lim.vmax),
        tm_umax: control_root(bc.v0, lim.umax, l),
        tm_vmin: 3.0 * l / (bc.v0 + 2.0 * lim.vmin),
        tm_umin: lo,
    }
}

/// Near root of `umax·T² + 3·v0·T − 3L = 0`, the horizon at which the
/// box-free initial control equals the bound.
fn control_root(v0: f64, u_b: f64, l: f64) -> f64 {
    (-3.0 * v0 + (9.0 * v0 * v0 + 12.0 * u_b * l).sqrt()) / (2.0 * u_b)
}

/// Horizon window `[lo, hi]` on which `umin` binds, or `(+∞, +∞)` when the
/// box-free initial control never reaches `umin` for any horizon.
fn umin_window(bc: &BoundaryConditions, lim: &Limits) -> (f64, f64) {
    let l = bc.distance();
    let disc = 9.0 * bc.v0 * bc.v0 + 12.0 * lim.umin * l;
    if disc < 0.0 {
        return (f64::INFINITY, f64::INFINITY);
    }
    let root = disc.sqrt();
    // umin < 0 flips the division, so the "+√" root is the smaller horizon.
    ((-3.0 * bc.v0 + root) / (2.0 * lim.umin), (-3.0 * bc.v0 - root) / (2.0 * lim.umin))
}

/// True when `vmax` binds: `T ≤ 3L/(v0 + 2·vmax)`, equivalently when the
/// box-free terminal speed reaches `vmax`. Meaningful on the max side only.
pub fn vmax_active(bc: &BoundaryConditions, lim: &Limits) -> bool {
    bc.horizon() <= 3.0 * bc.distance() / (bc.v0 + 2.0 * lim.vmax)
}

/// True when `umax` binds: `T ≤ (−3v0 + √(9v0² + 12·umax·L))/(2·umax)`,
/// equivalently when the box-free initial control reaches `umax`.
/// Meaningful on the max side only.
pub fn umax_active(bc: &BoundaryConditions, lim: &Limits) -> bool {
    bc.horizon() <= control_root(bc.v0, lim.umax, bc.distance())
}

/// True when `vmin` binds: `T ≥ 3L/(v0 + 2·vmin)`, equivalently when the
/// box-free terminal speed falls to `vmin`. Meaningful on the min side only.
pub fn vmin_active(bc: &BoundaryConditions, lim: &Limits) -> bool {
    bc.horizon() >= 3.0 * bc.distance() / (bc.v0 + 2.0 * lim.vmin)
}

/// True when `umin` binds. Unlike the max side this is a two-sided window:
/// the box-free initial control `b(T) = 3(L − v0·T)/T²` is not monotone in
/// the horizon, dipping to its most negative value at a finite `T` and
/// relaxing back toward zero for very long horizons. `umin` therefore binds
/// exactly when `T` lies between the two roots of `b(T) = umin`, and never
/// binds when the discriminant `9v0² + 12·umin·L` is negative.
/// Meaningful on the min side only.
pub fn umin_active(bc: &BoundaryConditions, lim: &Limits) -> bool {
    let (lo, hi) = umin_window(bc, lim);
    lo <= bc.horizon() && bc.horizon() <= hi
}

/// Given that `vmax` binds with its ramp exiting at `tau_s`, tests whether
/// `umax` also binds by re-testing the acceleration threshold on the leading
/// sub-transit over `[t0, τ_s]`, whose displacement is what remains after the
/// cruise: `d_s = L − vmax·(tm − τ_s)`:
///
/// ```text
/// τ_s − t0  ≤  (−3v0 + √(9v0² + 12·umax·d_s)) / (2·umax)
/// ```
///
/// This is equivalent to the ramp's initial control `2(vmax − v0)/(τ_s − t0)`
/// reaching `umax` (the sub-transit's displacement makes the two forms agree
/// identically); returns false on NaN, so a bogus `tau_s` never flags the
/// coupled case.
pub fn coupled_umax_given_vmax(bc: &BoundaryConditions, lim: &Limits, tau_s: f64) -> bool {
    let theta = tau_s - bc.t0;
    let d_s = bc.distance() - lim.vmax * (bc.tm - tau_s);
    theta <= control_root(bc.v0, lim.umax, d_s)
}

/// Given that `umax` binds with its saturated lead arc ending at `tau_c`,
/// tests whether the free tail stays admissible:
///
/// ```text
/// tm  ≥  τ_c + 2(v(τ_c) − vmax)/umax,    v(τ_c) = v0 + umax·(τ_c − t0).
/// ```
///
/// For reachable instances `v(τ_c) ≤ vmax`, which makes the right-hand side
/// at most `τ_c` and the inequality hold automatically; [`classify`]
/// therefore also requires the tail's peak speed
/// `v(τ_c) + umax·(tm − τ_c)/2` to reach `vmax` before tagging the coupled
/// case. Both conditions are exposed so the redundancy is testable.
pub fn coupled_vmax_given_umax(bc: &BoundaryConditions, lim: &Limits, tau_c: f64) -> bool {
    let v_c = bc.v0 + lim.umax * (tau_c - bc.t0);
    bc.tm >= tau_c + 2.0 * (v_c - lim.vmax) / lim.umax
}

/// Min-side counterpart of [`coupled_umax_given_vmax`]: with the `vmin` ramp
/// exiting at `tau_s`, `umin` also binds when the ramp's initial control
/// `2(vmin − v0)/(τ_s − t0)` falls to `umin`.
pub fn coupled_umin_given_vmin(bc: &BoundaryConditions, lim: &Limits, tau_s: f64) -> bool {
    let theta = tau_s - bc.t0;
    2.0 * (lim.vmin - bc.v0) / theta <= lim.umin
}

/// Min-side counterpart of [`coupled_vmax_given_umax`]: with the saturated
/// braking arc ending at `tau_c`, `vmin` also binds when
///
/// ```text
/// tm  ≥  τ_c + 2(vmin − v(τ_c))/umin,    v(τ_c) = v0 + umin·(τ_c − t0),
/// ```
///
/// which is exactly the condition that the free tail's lowest speed — its
/// terminal speed `v(τ_c) + umin·(tm − τ_c)/2` — falls to `vmin`.
pub fn coupled_vmin_given_umin(bc: &BoundaryConditions, lim: &Limits, tau_c: f64) -> bool {
    let v_c = bc.v0 + lim.umin * (tau_c - bc.t0);
    bc.tm >= tau_c + 2.0 * (lim.vmin - v_c) / lim.umin
}

/// Selects the constraint case for one instance.
///
/// Preconditions are checked: the entry speed must lie inside the speed box
/// (`InvalidInput` otherwise) and the distance must be reachable under the
/// boxes (`Infeasible` otherwise). The decision tree then follows the
/// exclusion side; on each side the two unconditional thresholds decide the
/// pure cases, and the coupled checks promote to the two-bound case. Ties
/// classify as binding, so a threshold instance gets the richer case and the
/// case solver collapses the resulting zero-length arc.
pub fn classify(bc: &BoundaryConditions, lim: &Limits) -> Result<ConstraintCase> {
    if !lim.speed_in_bounds(bc.v0) {
        return Err(Error::InvalidInput(format!(
            "entry speed {} outside the speed box [{}, {}]",
            bc.v0, lim.vmin, lim.vmax
        )));
    }
    if !is_reachable(bc, lim) {
        return Err(Error::Infeasible(format!(
            "distance {} is outside the reachable envelope for this horizon",
            bc.distance()
        )));
    }
    match exclusion_side(bc) {
        ExclusionSide::Neither => Ok(ConstraintCase::Unconstrained),
        ExclusionSide::MaxSide => match (vmax_active(bc, lim), umax_active(bc, lim)) {
            (false, false) => Ok(ConstraintCase::Unconstrained),
            (true, true) => Ok(ConstraintCase::UmaxAndVmax),
            (true, false) => {
                let tau_s = junction_vmax(bc, lim)?;
                if coupled_umax_given_vmax(bc, lim, tau_s) {
                    Ok(ConstraintCase::UmaxAndVmax)
                } else {
                    Ok(ConstraintCase::VmaxOnly)
                }
            }
            (false, true) => {
                let tau_c = junction_umax(bc, lim)?;
                let v_c = bc.v0 + lim.umax * (tau_c - bc.t0);
                let tail_peak = v_c + 0.5 * lim.umax * (bc.tm - tau_c);
                if coupled_vmax_given_umax(bc, lim, tau_c) && tail_peak >= lim.vmax {
                    Ok(ConstraintCase::UmaxAndVmax)
                } else {
                    Ok(ConstraintCase::UmaxOnly)
                }
            }
        },
        ExclusionSide::MinSide => match (vmin_active(bc, lim), umin_active(bc, lim)) {
            (false, false) => Ok(ConstraintCase::Unconstrained),
            (true, true) => Ok(ConstraintCase::UminAndVmin),
            (true, false) => {
                let tau_s = junction_vmin(bc, lim)?;
                if coupled_umin_given_vmin(bc, lim, tau_s) {
                    Ok(ConstraintCase::UminAndVmin)
                } else {
                    Ok(ConstraintCase::VminOnly)
                }
            }
            (false, true) => {
                let tau_c = junction_umin(bc, lim)?;
                if coupled_vmin_given_umin(bc, lim, tau_c) {
                    Ok(ConstraintCase::UminAndVmin)
                } else {
                    Ok(ConstraintCase::UminOnly)
                }
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use trajectory_core::PolyArc;

    use crate::unconstrained::solve_unconstrained;

    fn bc(tm: f64, pm: f64, v0: f64) -> BoundaryConditions {
        BoundaryConditions::new(0.0, tm, 0.0, pm, v0).unwrap()
    }

    fn lim(vmin: f64, vmax: f64, umin: f64, umax: f64) -> Limits {
        Limits::new(vmin, vmax, umin, umax).unwrap()
    }

    fn initial_control(arc: &PolyArc, t0: f64) -> f64 {
        arc.a * t0 + arc.b
    }

    #[test]
    fn exclusion_side_follows_required_average_speed() {
        assert_eq!(exclusion_side(&bc(10.0, 200.0, 13.4)), ExclusionSide::MaxSide);
        assert_eq!(exclusion_side(&bc(10.0, 180.0, 26.0)), ExclusionSide::MinSide);
        assert_eq!(exclusion_side(&bc(10.0, 200.0, 20.0)), ExclusionSide::Neither);
    }

    #[test]
    fn thresholds_are_positive_and_consistent_with_their_definitions() {
        let bc = bc(10.0, 200.0, 13.4);
        let lim = lim(5.0, 23.0, -1.2, 1.35);
        let th = activation_thresholds(&bc, &lim);
        assert!(th.tm_vmax > 0.0 && th.tm_umax > 0.0 && th.tm_vmin > 0.0 && th.tm_umin > 0.0);
        assert_relative_eq!(th.tm_vmax, 600.0 / 59.4, max_relative = 1e-12);
        assert_relative_eq!(th.tm_vmin, 600.0 / 23.4, max_relative = 1e-12);
        // At each threshold horizon the box-free profile sits exactly on the bound.
        let at_vmax = BoundaryConditions::new(0.0, th.tm_vmax, 0.0, 200.0, 13.4).unwrap();
        assert_relative_eq!(
            crate::unconstrained::unconstrained_terminal_speed(&at_vmax),
            lim.vmax,
            max_relative = 1e-12
        );
        let at_umax = BoundaryConditions::new(0.0, th.tm_umax, 0.0, 200.0, 13.4).unwrap();
        let arc = solve_unconstrained(&at_umax);
        assert_relative_eq!(initial_control(&arc, 0.0), lim.umax, max_relative = 1e-9);
    }

    #[test]
    fn umin_threshold_is_infinite_when_braking_never_binds() {
        // 9v0² + 12·umin·L = 225 − 720 < 0: no horizon needs that much braking.
        let bc = bc(10.0, 20.0, 5.0);
        let lim = lim(0.0, 40.0, -3.0, 9.0);
        let th = activation_thresholds(&bc, &lim);
        assert!(th.tm_umin.is_infinite());
        assert!(!umin_active(&bc, &lim));
    }

    #[test]
    fn speed_floor_activation_examples() {
        let bc = bc(10.0, 200.0, 26.0);
        assert!(!vmin_active(&bc, &lim(10.0, 40.0, -9.0, 9.0))); // 600/46 ≈ 13.0 > 10
        assert!(vmin_active(&bc, &lim(24.0, 40.0, -9.0, 9.0))); // 600/74 ≈ 8.1 ≤ 10
    }

    #[test]
    fn braking_floor_activation_is_a_two_sided_window() {
        // 60 m in T s from 10 m/s with umin = −1: binds only for 8.29 ≤ T ≤ 21.71.
        let lim = lim(0.0, 40.0, -1.0, 9.0);
        let outside = bc(30.0, 60.0, 10.0);
        assert!(!umin_active(&outside, &lim));
        let arc = solve_unconstrained(&outside);
        assert!(initial_control(&arc, 0.0) > lim.umin); // −0.8, too shallow to bind

        let inside = bc(15.0, 60.0, 10.0);
        assert!(umin_active(&inside, &lim));
        let arc = solve_unconstrained(&inside);
        assert!(initial_control(&arc, 0.0) <= lim.umin); // −1.2, binds

        let (lo, hi) = umin_window(&outside, &lim);
        assert_relative_eq!(lo, (-30.0f64 + 180.0f64.sqrt()) / -2.0, max_relative = 1e-12);
        assert_relative_eq!(hi, (-30.0f64 - 180.0f64.sqrt()) / -2.0, max_relative = 1e-12);
    }

    #[test]
    fn cruise_instance_classifies_as_unconstrained() {
        let bc = bc(10.0, 200.0, 20.0);
        let lim = lim(0.0, 23.0, -1.2, 1.35);
        assert_eq!(classify(&bc, &lim).unwrap(), ConstraintCase::Unconstrained);
    }

    #[test]
    fn loose_boxes_classify_as_unconstrained() {
        let bc = bc(10.0, 200.0, 13.4);
        let lim = lim(0.0, 1e9, -1e9, 1e9);
        assert_eq!(classify(&bc, &lim).unwrap(), ConstraintCase::Unconstrained);
    }

    #[test]
    fn tight_speed_cap_alone_selects_the_cruise_case() {
        // vmax binds (threshold 10.5 ≥ 10) and the ramp's initial control 2.4
        // stays below umax = 5, so the cap alone shapes the profile.
        let bc = bc(10.0, 210.0, 16.0);
        let lim = lim(0.0, 22.0, -9.0, 5.0);
        assert_eq!(classify(&bc, &lim).unwrap(), ConstraintCase::VmaxOnly);
    }

    #[test]
    fn speed_cap_with_tight_acceleration_promotes_to_the_coupled_case() {
        // Same instance, umax = 2.0 < ramp initial control 2.4.
        let bc = bc(10.0, 210.0, 16.0);
        let lim = lim(0.0, 22.0, -9.0, 2.0);
        assert_eq!(classify(&bc, &lim).unwrap(), ConstraintCase::UmaxAndVmax);
    }

    #[test]
    fn tight_acceleration_cap_alone_selects_the_saturated_case() {
        // umax binds but the tail peaks at 25.2 m/s, far below vmax = 40.
        let bc = bc(10.0, 200.0, 13.4);
        let lim = lim(0.0, 40.0, -9.0, 1.35);
        assert_eq!(classify(&bc, &lim).unwrap(), ConstraintCase::UmaxOnly);
    }

    #[test]
    fn acceleration_cap_with_reachable_speed_cap_promotes_to_the_coupled_case() {
        // 195 m keeps the instance feasible; vmax = 23 is slack against the
        // box-free profile (threshold 9.85 < 10) yet the saturated tail peaks
        // at 23.3 m/s, so both bounds bind.
        let bc = bc(10.0, 195.0, 13.4);
        let lim = lim(0.0, 23.0, -9.0, 1.35);
        assert!(!vmax_active(&bc, &lim));
        assert!(umax_active(&bc, &lim));
        assert_eq!(classify(&bc, &lim).unwrap(), ConstraintCase::UmaxAndVmax);
    }

    #[test]
    fn both_max_thresholds_binding_selects_the_coupled_case_directly() {
        let bc = bc(10.0, 195.0, 13.4);
        let lim = lim(0.0, 22.0, -9.0, 1.8);
        assert!(vmax_active(&bc, &lim));
        assert!(umax_active(&bc, &lim));
        assert_eq!(classify(&bc, &lim).unwrap(), ConstraintCase::UmaxAndVmax);
    }

    #[test]
    fn min_side_cases_mirror_the_max_side() {
        let floor_only = bc(10.0, 180.0, 26.0);
        assert_eq!(
            classify(&floor_only, &lim(15.0, 40.0, -9.0, 9.0)).unwrap(),
            ConstraintCase::VminOnly
        );
        let braking_only = bc(10.0, 170.0, 22.0);
        assert_eq!(
            classify(&braking_only, &lim(0.0, 40.0, -1.2, 9.0)).unwrap(),
            ConstraintCase::UminOnly
        );
        let coupled = bc(10.0, 177.0, 26.0);
        assert_eq!(
            classify(&coupled, &lim(14.0, 40.0, -2.0, 9.0)).unwrap(),
            ConstraintCase::UminAndVmin
        );
    }

    #[test]
    fn entry_speed_outside_the_box_is_invalid() {
        let bc = bc(10.0, 200.0, 13.4);
        let lim = lim(15.0, 23.0, -1.2, 1.35);
        assert!(matches!(classify(&bc, &lim), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn unreachable_distance_is_infeasible() {
        // Published reference instance: 200 m in 10 s at 13.4 m/s with
        // vmax = 22 and umax = 1.8 tops out at 199.46 m.
        let bc = bc(10.0, 200.0, 13.4);
        let lim = lim(0.0, 22.0, -4.5, 1.8);
        assert!(matches!(classify(&bc, &lim), Err(Error::Infeasible(_))));
    }

    #[test]
    fn coupled_acceleration_check_matches_the_ramp_initial_control() {
        // The sub-transit threshold form and the ramp-slope form agree.
        let bc = bc(10.0, 210.0, 16.0);
        for umax in [1.9, 2.0, 2.2, 2.39, 2.41, 2.6, 3.0] {
            let lim = lim(0.0, 22.0, -9.0, umax);
            let tau_s = junction_vmax(&bc, &lim).unwrap();
            let ramp_initial = 2.0 * (lim.vmax - bc.v0) / (tau_s - bc.t0);
            assert_eq!(
                coupled_umax_given_vmax(&bc, &lim, tau_s),
                ramp_initial >= umax,
                "forms disagree at umax = {umax}"
            );
        }
    }

    #[test]
    fn coupled_speed_check_is_vacuous_below_the_cap_and_binding_above() {
        let bc = bc(10.0, 200.0, 13.4);
        let lim = lim(0.0, 40.0, -9.0, 1.35);
        let tau_c = junction_umax(&bc, &lim).unwrap();
        // v(τ_c) = 23.41 < vmax = 40: inequality holds vacuously...
        assert!(coupled_vmax_given_umax(&bc, &lim, tau_c));
        // ...so the tail-peak test (25.16 < 40) is what rejects the coupled case.
        let v_c = bc.v0 + lim.umax * (tau_c - bc.t0);
        assert!(v_c + 0.5 * lim.umax * (bc.tm - tau_c) < lim.vmax);
    }

    #[test]
    fn coupled_braking_check_matches_the_tail_terminal_speed() {
        // The saturated tail bottoms out at 14.243 m/s, independent of vmin.
        let bc = bc(10.0, 170.0, 22.0);
        for vmin in [10.0, 14.0, 14.2, 14.3, 15.0, 18.0] {
            let lim = lim(vmin, 40.0, -1.2, 9.0);
            let tau_c = junction_umin(&bc, &lim).unwrap();
            let v_c = bc.v0 + lim.umin * (tau_c - bc.t0);
            let tail_terminal = v_c + 0.5 * lim.umin * (bc.tm - tau_c);
            assert_eq!(
                coupled_vmin_given_umin(&bc, &lim, tau_c),
                tail_terminal <= vmin,
                "forms disagree at vmin = {vmin}"
            );
        }
    }
}
