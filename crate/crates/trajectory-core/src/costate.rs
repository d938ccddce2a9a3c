//! Costates and constraint multipliers along a trajectory.
//!
//! For the energy objective `∫ u²/2 dt` on a double integrator, the position
//! costate `λᵖ` is constant, the speed costate `λᵛ` is piecewise affine with
//! slope `-λᵖ` off speed arcs and is identically zero on them, and each
//! constraint multiplier is affine on the arc where its constraint is active
//! and zero elsewhere. A profile therefore stores one `λᵖ` plus affine
//! coefficient pairs per arc.

use crate::error::{Error, Result};
use crate::trajectory::PiecewiseTrajectory;
use crate::types::TIME_TOL;

/// Affine multiplier segment: `value(t) = slope * t + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Affine {
    pub slope: f64,
    pub intercept: f64,
}

impl Affine {
    pub const ZERO: Affine = Affine { slope: 0.0, intercept: 0.0 };

    pub fn new(slope: f64, intercept: f64) -> Self {
        Self { slope, intercept }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.slope * t + self.intercept
    }
}

/// Costate and multiplier segments for one arc window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostatePiece {
    pub t_start: f64,
    pub t_end: f64,
    /// Speed costate `λᵛ(t)`.
    pub lambda_v: Affine,
    /// Multiplier of `u - umax <= 0`.
    pub mu_a: Affine,
    /// Multiplier of `umin - u <= 0`.
    pub mu_b: Affine,
    /// Multiplier of `v - vmax <= 0`.
    pub eta_c: Affine,
    /// Multiplier of `vmin - v <= 0`.
    pub eta_d: Affine,
}

/// Costates for a whole trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct CostateProfile {
    /// Position costate, constant over the horizon.
    pub lambda_p: f64,
    /// Jump of `λᵛ` at speed-arc entry; zero for regular solutions.
    pub pi_jump: f64,
    pieces: Vec<CostatePiece>,
}

impl CostateProfile {
    /// Validates window contiguity and builds the profile.
    pub fn new(lambda_p: f64, pi_jump: f64, pieces: Vec<CostatePiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidInput("costate profile needs at least one piece".into()));
        }
        for pair in pieces.windows(2) {
            if (pair[0].t_end - pair[1].t_start).abs() > TIME_TOL {
                return Err(Error::InvalidInput(format!(
                    "costate windows not contiguous: [{}, {}] then [{}, {}]",
                    pair[0].t_start, pair[0].t_end, pair[1].t_start, pair[1].t_end
                )));
            }
        }
        Ok(Self { lambda_p, pi_jump, pieces })
    }

    pub fn pieces(&self) -> &[CostatePiece] {
        &self.pieces
    }

    /// The piece covering time `t` (later piece at junctions).
    pub fn piece_at(&self, t: f64) -> Result<&CostatePiece> {
        let first = &self.pieces[0];
        let last = &self.pieces[self.pieces.len() - 1];
        if t < first.t_start - TIME_TOL || t > last.t_end + TIME_TOL {
            return Err(Error::OutsideWindow { t, start: first.t_start, end: last.t_end });
        }
        let idx = self.pieces.iter().rposition(|p| t >= p.t_start).unwrap_or(0);
        Ok(&self.pieces[idx])
    }

    /// Speed costate at `t`.
    pub fn lambda_v(&self, t: f64) -> Result<f64> {
        Ok(self.piece_at(t)?.lambda_v.eval(t))
    }

    /// Hamiltonian `u²/2 + λᵖ v + λᵛ u` at `t`.
    ///
    /// Active-constraint terms (`μ (u - bound)`, `η (v - bound)`) vanish
    /// identically wherever complementary slackness holds, so they are not
    /// added here; the slackness check itself is a separate validation.
    pub fn hamiltonian(&self, traj: &PiecewiseTrajectory, t: f64) -> Result<f64> {
        let (_, v, u) = traj.eval(t)?;
        let lambda_v = self.lambda_v(t)?;
        Ok(0.5 * u * u + self.lambda_p * v + lambda_v * u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::single_arc_trajectory;
    use crate::types::{ArcKind, ConstraintCase, PolyArc};
    use approx::assert_relative_eq;

    #[test]
    fn piece_lookup_uses_later_piece_at_junction() {
        let p1 = CostatePiece {
            t_start: 0.0,
            t_end: 5.0,
            lambda_v: Affine::new(0.48, -2.4),
            mu_a: Affine::ZERO,
            mu_b: Affine::ZERO,
            eta_c: Affine::ZERO,
            eta_d: Affine::ZERO,
        };
        let p2 = CostatePiece {
            t_start: 5.0,
            t_end: 10.0,
            lambda_v: Affine::ZERO,
            mu_a: Affine::ZERO,
            mu_b: Affine::ZERO,
            eta_c: Affine::new(0.0, 0.48),
            eta_d: Affine::ZERO,
        };
        let profile = CostateProfile::new(-0.48, 0.0, vec![p1, p2]).unwrap();
        assert_relative_eq!(profile.lambda_v(2.5).unwrap(), -1.2);
        assert_eq!(profile.lambda_v(5.0).unwrap(), 0.0);
        assert!(profile.lambda_v(10.1).is_err());
    }

    #[test]
    fn hamiltonian_is_constant_along_an_optimal_cubic() {
        // Unconstrained optimum: u = a t + b with u(T) = 0, λᵖ = a,
        // λᵛ = -u. H = u²/2 + λᵖ v - u² = a v - u²/2 must be constant.
        let (a, b) = (-0.198, 1.98);
        let arc = PolyArc::new(a, b, 13.4, 0.0, 0.0, 10.0, ArcKind::Unconstrained).unwrap();
        let traj = single_arc_trajectory(arc, ConstraintCase::Unconstrained);
        let piece = CostatePiece {
            t_start: 0.0,
            t_end: 10.0,
            lambda_v: Affine::new(-a, -b),
            mu_a: Affine::ZERO,
            mu_b: Affine::ZERO,
            eta_c: Affine::ZERO,
            eta_d: Affine::ZERO,
        };
        let profile = CostateProfile::new(a, 0.0, vec![piece]).unwrap();
        let h0 = profile.hamiltonian(&traj, 0.0).unwrap();
        for i in 1..=10 {
            let h = profile.hamiltonian(&traj, f64::from(i)).unwrap();
            assert_relative_eq!(h, h0, max_relative = 1e-12);
        }
    }
}
