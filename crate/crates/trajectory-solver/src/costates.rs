//! Adjoint reconstruction from an assembled trajectory.
//!
//! For the Hamiltonian `H = u²/2 + λᵖ·v + λᵛ·u + μᵃ(u − umax) + μᵇ(umin − u)
//! + ηᶜ(v − vmax) + ηᵈ(vmin − v)` the adjoints obey `λ̇ᵖ = 0` and
//! `λ̇ᵛ = −λᵖ − ηᶜ + ηᵈ`, with `λᵛ(tm) = 0` because the terminal speed is
//! free. On arcs where no bound is active, stationarity gives `u = −λᵛ`, so
//! `λᵖ` equals the control slope there. While a speed bound holds the
//! control `u = 0` is interior, forcing `λᵛ = −u = 0` across the whole arc
//! and `ηᶜ = −λᵖ` (resp. `ηᵈ = +λᵖ`) to keep `λ̇ᵛ = 0`.
//!
//! The profile is therefore determined by two scalars: `λᵖ` (read off the
//! slack arc) and the anchor time where `λᵛ` vanishes — the entry of the
//! terminal speed arc if there is one, otherwise the deadline. `λᵛ` is the
//! anchored line `−λᵖ·(t − t_anchor)` on every earlier arc, and the box
//! multipliers follow from stationarity `u + λᵛ + μᵃ − μᵇ = 0` evaluated
//! with the bound value of `u`. Reconstruction never copies the trajectory's
//! control into the costates, so a corrupted trajectory yields a profile
//! that fails the optimality checks instead of masking them.

use trajectory_core::{
    Affine, ArcKind, BoundaryConditions, CostatePiece, CostateProfile, Error, Limits,
    PiecewiseTrajectory, Result,
};

/// Reconstructs the adjoints and box multipliers for a solved trajectory.
///
/// Fails with `InconsistentCase` when the trajectory has no slack arc to pin
/// `λᵖ` (a profile saturated end to end sits on the reachability boundary,
/// where no regular multiplier profile exists).
pub fn reconstruct_costates(
    traj: &PiecewiseTrajectory,
    bc: &BoundaryConditions,
    lim: &Limits,
) -> Result<CostateProfile> {
    let arcs = traj.arcs();
    let lambda_p = arcs
        .iter()
        .find(|arc| arc.kind == ArcKind::Unconstrained)
        .map(|arc| arc.a)
        .ok_or_else(|| {
            Error::InconsistentCase("no slack arc to pin the position costate".into())
        })?;
    let t_anchor = arcs
        .iter()
        .find(|arc| matches!(arc.kind, ArcKind::SpeedMax | ArcKind::SpeedMin))
        .map(|arc| arc.t_start)
        .unwrap_or(bc.tm);
    // λᵛ(t) = −λᵖ·(t − t_anchor) before the anchor, 0 after.
    let lambda_v_free = Affine::new(-lambda_p, lambda_p * t_anchor);

    let pieces = arcs
        .iter()
        .map(|arc| {
            let mut piece = CostatePiece {
                t_start: arc.t_start,
                t_end: arc.t_end,
                lambda_v: lambda_v_free,
                mu_a: Affine::ZERO,
                mu_b: Affine::ZERO,
                eta_c: Affine::ZERO,
                eta_d: Affine::ZERO,
            };
            match arc.kind {
                ArcKind::Unconstrained => {}
                // μᵃ = −λᵛ − umax = λᵖ·(t − t_anchor) − umax.
                ArcKind::ControlMax => {
                    piece.mu_a = Affine::new(lambda_p, -lambda_p * t_anchor - lim.umax);
                }
                // μᵇ = umin + λᵛ = umin − λᵖ·(t − t_anchor).
                ArcKind::ControlMin => {
                    piece.mu_b = Affine::new(-lambda_p, lambda_p * t_anchor + lim.umin);
                }
                ArcKind::SpeedMax => {
                    piece.lambda_v = Affine::ZERO;
                    piece.eta_c = Affine::new(0.0, -lambda_p);
                }
                ArcKind::SpeedMin => {
                    piece.lambda_v = Affine::ZERO;
                    piece.eta_d = Affine::new(0.0, lambda_p);
                }
            }
            piece
        })
        .collect();

    // Entry into the speed arc is tangential (the preceding arc's control
    // decays to zero there), so λᵛ stays continuous and the jump multiplier
    // measures only the construction's rounding residual.
    let pi_jump = arcs
        .iter()
        .zip(arcs.iter().skip(1))
        .find(|(_, next)| matches!(next.kind, ArcKind::SpeedMax | ArcKind::SpeedMin))
        .map(|(prev, next)| {
            let (_, _, u) = prev.eval_unchecked(next.t_start);
            -u
        })
        .unwrap_or(0.0);

    CostateProfile::new(lambda_p, pi_jump, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use trajectory_core::{single_arc_trajectory, ConstraintCase, PolyArc};

    use crate::constrained::{solve_case1, solve_case2};
    use crate::unconstrained::solve_unconstrained;

    fn bc(tm: f64, pm: f64, v0: f64) -> BoundaryConditions {
        BoundaryConditions::new(0.0, tm, 0.0, pm, v0).unwrap()
    }

    fn lim(vmin: f64, vmax: f64, umin: f64, umax: f64) -> Limits {
        Limits::new(vmin, vmax, umin, umax).unwrap()
    }

    #[test]
    fn box_free_profile_has_costate_equal_to_negated_control() {
        let bc = bc(10.0, 200.0, 13.4);
        let lim = lim(0.0, 1e9, -1e9, 1e9);
        let traj = single_arc_trajectory(solve_unconstrained(&bc), ConstraintCase::Unconstrained);
        let profile = reconstruct_costates(&traj, &bc, &lim).unwrap();
        assert_relative_eq!(profile.lambda_p, -0.198, max_relative = 1e-12);
        assert_eq!(profile.pi_jump, 0.0);
        for t in [0.0, 2.5, 7.0, 10.0] {
            let (_, _, u) = traj.eval(t).unwrap();
            assert_relative_eq!(profile.lambda_v(t).unwrap(), -u, epsilon = 1e-12);
        }
    }

    #[test]
    fn cruise_arc_zeroes_the_speed_costate_and_prices_the_bound() {
        let bc = bc(10.0, 210.0, 16.0);
        let lim = lim(0.0, 22.0, -9.0, 9.0);
        let (traj, profile) = solve_case1(&bc, &lim).unwrap();
        // Ramp slope a = 2(v0 − vmax)/θ² = −0.48.
        assert_relative_eq!(profile.lambda_p, -0.48, max_relative = 1e-12);
        assert!(profile.pi_jump.abs() <= 1e-12);
        let cruise = &profile.pieces()[1];
        assert_eq!(cruise.lambda_v, Affine::ZERO);
        assert_relative_eq!(cruise.eta_c.eval(7.0), 0.48, max_relative = 1e-12);
        // λᵛ is continuous and zero at the junction.
        assert!(profile.lambda_v(5.0).unwrap().abs() <= 1e-12);
        // The Hamiltonian is constant across the junction.
        let h0 = profile.hamiltonian(&traj, 2.0).unwrap();
        let h1 = profile.hamiltonian(&traj, 8.0).unwrap();
        assert_relative_eq!(h0, h1, epsilon = 1e-9);
    }

    #[test]
    fn saturated_lead_arc_has_nonnegative_price_that_vanishes_at_exit() {
        let bc = bc(10.0, 200.0, 13.4);
        let lim = lim(0.0, 40.0, -9.0, 1.35);
        let (traj, profile) = solve_case2(&bc, &lim).unwrap();
        let tau_c = traj.junctions()[0];
        let lead = &profile.pieces()[0];
        assert!(lead.mu_a.eval(tau_c).abs() <= 1e-9);
        let at_start = lead.mu_a.eval(0.0);
        assert_relative_eq!(at_start, -profile.lambda_p * tau_c, max_relative = 1e-9);
        assert!(at_start > 0.0);
    }

    #[test]
    fn fully_saturated_trajectory_has_no_regular_costates() {
        let arc =
            PolyArc::from_local(0.0, 0.0, 1.35, 13.4, 0.0, 0.0, 10.0, ArcKind::ControlMax)
                .unwrap();
        let traj = single_arc_trajectory(arc, ConstraintCase::UmaxOnly);
        let bc = bc(10.0, 201.5, 13.4);
        let lim = lim(0.0, 40.0, -9.0, 1.35);
        assert!(matches!(
            reconstruct_costates(&traj, &bc, &lim),
            Err(Error::InconsistentCase(_))
        ));
    }
}
