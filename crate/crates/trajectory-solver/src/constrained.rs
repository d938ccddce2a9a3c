//! Assembles the optimal arcs for each constrained case.
//!
//! Every constrained optimum is a short chain of polynomial arcs joined with
//! continuous position, speed, and control:
//!
//! - speed bound alone: tangential ramp, then cruise at the bound (the arcs
//!   `[Unconstrained, Speed*]`);
//! - control bound alone: saturated lead arc, then a free tail whose control
//!   relaxes linearly from the bound to zero at the deadline
//!   (`[Control*, Unconstrained]`);
//! - both bounds: saturated lead arc, a slack mid arc easing the control to
//!   zero, then the cruise (`[Control*, Unconstrained, Speed*]`).
//!
//! Control arcs always come first and speed arcs always last: the free
//! portion of the profile drives the control linearly toward zero at the
//! deadline, so the largest control magnitude sits at the start and the
//! extreme speed at the end. Junctions that land on the horizon ends (within
//! [`COLLAPSE_TOL`]) collapse the adjacent arc, and the solver delegates to
//! the simpler case so degenerate instances still get a clean label.

use trajectory_core::{
    ArcKind, BoundaryConditions, ConstraintCase, CostateProfile, Error, Limits,
    PiecewiseTrajectory, PolyArc, Result,
};

use crate::classifier::classify;
use crate::costates::reconstruct_costates;
use crate::junctions::{
    junction_umax, junction_umin, junction_vmax, junction_vmin, raw_junctions_control_speed,
};
use crate::unconstrained::solve_unconstrained;

/// Arcs shorter than this (s) are dropped and the case label downgraded.
pub const COLLAPSE_TOL: f64 = 1e-9;

/// Absolute tolerance (m) for the assembled profile's terminal position.
const CLOSURE_TOL: f64 = 1e-6;

/// Most negative value a reconstructed multiplier may take before the
/// assembled case is rejected as inconsistent.
const MULTIPLIER_SIGN_TOL: f64 = -1e-9;

/// Solution pair: the trajectory and the adjoints certifying it.
pub type Solution = (PiecewiseTrajectory, CostateProfile);

/// Classifies the instance and dispatches to the matching case solver.
pub fn solve(bc: &BoundaryConditions, lim: &Limits) -> Result<Solution> {
    match classify(bc, lim)? {
        ConstraintCase::Unconstrained => solve_case0(bc, lim),
        ConstraintCase::VmaxOnly => solve_case1(bc, lim),
        ConstraintCase::UmaxOnly => solve_case2(bc, lim),
        ConstraintCase::UmaxAndVmax => solve_case3(bc, lim),
        ConstraintCase::VminOnly => solve_case4(bc, lim),
        ConstraintCase::UminOnly => solve_case5(bc, lim),
        ConstraintCase::UminAndVmin => solve_case6(bc, lim),
    }
}

/// No bound binds: the box-free arc is the optimum.
pub fn solve_case0(bc: &BoundaryConditions, lim: &Limits) -> Result<Solution> {
    let arc = solve_unconstrained(bc);
    finish(bc, lim, vec![arc], ConstraintCase::Unconstrained)
}

/// `vmax` binds: tangential ramp onto the cap, then cruise to the deadline.
pub fn solve_case1(bc: &BoundaryConditions, lim: &Limits) -> Result<Solution> {
    speed_bounded(bc, lim, lim.vmax, ArcKind::SpeedMax, ConstraintCase::VmaxOnly)
}

/// `umax` binds: saturated lead arc, then a free tail easing to zero control.
pub fn solve_case2(bc: &BoundaryConditions, lim: &Limits) -> Result<Solution> {
    control_bounded(bc, lim, lim.umax, ArcKind::ControlMax, ConstraintCase::UmaxOnly)
}

/// `umax` and `vmax` both bind: saturation, slack easing, cruise.
pub fn solve_case3(bc: &BoundaryConditions, lim: &Limits) -> Result<Solution> {
    control_speed_bounded(
        bc,
        lim,
        lim.umax,
        lim.vmax,
        ArcKind::ControlMax,
        ArcKind::SpeedMax,
        ConstraintCase::UmaxAndVmax,
    )
}

/// `vmin` binds: tangential ramp down to the floor, then cruise.
pub fn solve_case4(bc: &BoundaryConditions, lim: &Limits) -> Result<Solution> {
    speed_bounded(bc, lim, lim.vmin, ArcKind::SpeedMin, ConstraintCase::VminOnly)
}

/// `umin` binds: saturated braking arc, then a free tail easing to zero.
pub fn solve_case5(bc: &BoundaryConditions, lim: &Limits) -> Result<Solution> {
    control_bounded(bc, lim, lim.umin, ArcKind::ControlMin, ConstraintCase::UminOnly)
}

/// `umin` and `vmin` both bind: braking, slack easing, cruise at the floor.
pub fn solve_case6(bc: &BoundaryConditions, lim: &Limits) -> Result<Solution> {
    control_speed_bounded(
        bc,
        lim,
        lim.umin,
        lim.vmin,
        ArcKind::ControlMin,
        ArcKind::SpeedMin,
        ConstraintCase::UminAndVmin,
    )
}

fn speed_bounded(
    bc: &BoundaryConditions,
    lim: &Limits,
    v_b: f64,
    speed_kind: ArcKind,
    case: ConstraintCase,
) -> Result<Solution> {
    let tau_s = match speed_kind {
        ArcKind::SpeedMax => junction_vmax(bc, lim)?,
        _ => junction_vmin(bc, lim)?,
    };
    if bc.tm - tau_s <= COLLAPSE_TOL {
        // The cruise vanishes: the bound touches only at the deadline.
        return solve_case0(bc, lim);
    }
    if tau_s - bc.t0 <= COLLAPSE_TOL {
        return Err(Error::InconsistentCase(
            "tangential ramp has no width; a whole-horizon cruise never reaches this case".into(),
        ));
    }
    let theta = tau_s - bc.t0;
    // Ramp from v0 to v_b with u(τ_s) = 0: u = a·s + b with b = 2(v_b − v0)/θ.
    let b = 2.0 * (v_b - bc.v0) / theta;
    let a = -b / theta;
    let ramp =
        PolyArc::from_local(bc.t0, a, b, bc.v0, bc.p0, bc.t0, tau_s, ArcKind::Unconstrained)?;
    let (p_s, _, _) = ramp.eval_unchecked(tau_s);
    let cruise =
        PolyArc::from_local(tau_s, 0.0, 0.0, v_b, p_s, tau_s, bc.tm, speed_kind)?;
    finish(bc, lim, vec![ramp, cruise], case)
}

fn control_bounded(
    bc: &BoundaryConditions,
    lim: &Limits,
    u_b: f64,
    control_kind: ArcKind,
    case: ConstraintCase,
) -> Result<Solution> {
    let tau_c = match control_kind {
        ArcKind::ControlMax => junction_umax(bc, lim)?,
        _ => junction_umin(bc, lim)?,
    };
    if tau_c - bc.t0 <= COLLAPSE_TOL {
        // The saturated arc vanishes: the bound touches only at the start.
        return solve_case0(bc, lim);
    }
    if bc.tm - tau_c <= COLLAPSE_TOL {
        return Err(Error::InconsistentCase(
            "saturated arc spans the whole horizon; the transit sits on the reachability \
             boundary, where no regular multiplier profile exists"
                .into(),
        ));
    }
    let lead =
        PolyArc::from_local(bc.t0, 0.0, u_b, bc.v0, bc.p0, bc.t0, tau_c, control_kind)?;
    let (p_c, v_c, _) = lead.eval_unchecked(tau_c);
    // Free tail: control relaxes linearly from u_b to zero at the deadline.
    let a = -u_b / (bc.tm - tau_c);
    let tail =
        PolyArc::from_local(tau_c, a, u_b, v_c, p_c, tau_c, bc.tm, ArcKind::Unconstrained)?;
    finish(bc, lim, vec![lead, tail], case)
}

fn control_speed_bounded(
    bc: &BoundaryConditions,
    lim: &Limits,
    u_b: f64,
    v_b: f64,
    control_kind: ArcKind,
    speed_kind: ArcKind,
    case: ConstraintCase,
) -> Result<Solution> {
    let (tau_c, tau_s) = raw_junctions_control_speed(bc, u_b, v_b)?;
    if tau_c - bc.t0 <= COLLAPSE_TOL {
        // At the coupling threshold the lead arc vanishes and the speed bound
        // alone shapes the profile.
        return speed_bounded(bc, lim, v_b, speed_kind, downgrade_to_speed(case));
    }
    if bc.tm - tau_s <= COLLAPSE_TOL {
        // The cruise vanishes: the speed bound touches only at the deadline.
        return control_bounded(bc, lim, u_b, control_kind, downgrade_to_control(case));
    }
    if tau_s - tau_c <= COLLAPSE_TOL {
        return Err(Error::InconsistentCase(
            "slack mid arc has no width; the transit sits on the reachability boundary, \
             where no regular multiplier profile exists"
                .into(),
        ));
    }
    let lead =
        PolyArc::from_local(bc.t0, 0.0, u_b, bc.v0, bc.p0, bc.t0, tau_c, control_kind)?;
    let (p_c, v_c, _) = lead.eval_unchecked(tau_c);
    // Slack mid arc: control eases linearly from u_b to zero at the cruise.
    let a = -u_b / (tau_s - tau_c);
    let mid = PolyArc::from_local(tau_c, a, u_b, v_c, p_c, tau_c, tau_s, ArcKind::Unconstrained)?;
    let (p_s, _, _) = mid.eval_unchecked(tau_s);
    let cruise = PolyArc::from_local(tau_s, 0.0, 0.0, v_b, p_s, tau_s, bc.tm, speed_kind)?;
    finish(bc, lim, vec![lead, mid, cruise], case)
}

fn downgrade_to_speed(case: ConstraintCase) -> ConstraintCase {
    match case {
        ConstraintCase::UmaxAndVmax => ConstraintCase::VmaxOnly,
        _ => ConstraintCase::VminOnly,
    }
}

fn downgrade_to_control(case: ConstraintCase) -> ConstraintCase {
    match case {
        ConstraintCase::UmaxAndVmax => ConstraintCase::UmaxOnly,
        _ => ConstraintCase::UminOnly,
    }
}

/// Assembles the arcs, verifies terminal closure, reconstructs the adjoints,
/// and rejects multiplier sign failures (these indicate a case selected for
/// an instance it does not fit, or an internal construction bug).
fn finish(
    bc: &BoundaryConditions,
    lim: &Limits,
    arcs: Vec<PolyArc>,
    case: ConstraintCase,
) -> Result<Solution> {
    let traj = PiecewiseTrajectory::new(arcs, case)?;
    let (p_end, _, _) = traj.eval(bc.tm)?;
    if (p_end - bc.pm).abs() > CLOSURE_TOL {
        return Err(Error::InconsistentCase(format!(
            "assembled profile ends at {p_end:.9} m instead of {:.9} m",
            bc.pm
        )));
    }
    let profile = reconstruct_costates(&traj, bc, lim)?;
    for piece in profile.pieces() {
        for mult in [piece.mu_a, piece.mu_b, piece.eta_c, piece.eta_d] {
            let worst = mult.eval(piece.t_start).min(mult.eval(piece.t_end));
            if worst < MULTIPLIER_SIGN_TOL {
                return Err(Error::InconsistentCase(format!(
                    "constraint multiplier dips to {worst:.3e}; the selected case does not fit \
                     this instance"
                )));
            }
        }
    }
    Ok((traj, profile))
}
