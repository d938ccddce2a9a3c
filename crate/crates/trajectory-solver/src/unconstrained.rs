//! Closed-form optimum of the box-free transit problem.
//!
//! In local time `s = t − t0` on `[0, T]`, minimizing `∫ u²/2 ds` subject to
//! `p(0) = p0`, `v(0) = v0`, `p(T) = pm`, with the terminal speed left free,
//! gives a control that is affine in time and vanishes at the deadline:
//!
//! ```text
//! u(s) = a·s + b,   a = 3(v0·T − L)/T³,   b = −a·T,   L = pm − p0.
//! ```
//!
//! The slope `a` is negative exactly when the required average speed `L/T`
//! exceeds `v0` (the vehicle must speed up, so `u` starts positive and decays
//! to zero), positive when the vehicle must slow down, and zero for a pure
//! cruise. The terminal speed of this profile is `(3L/T − v0)/2` and its cost
//! is `a²T³/6`.

use trajectory_core::{ArcKind, BoundaryConditions, PolyArc};

/// Relative tolerance below which `v0·T` and `L` are treated as equal, making
/// the box-free control identically zero (pure cruise).
pub const FLAT_REL_TOL: f64 = 1e-12;

/// Control slope of the box-free optimum, `a = 3(v0·T − L)/T³` (m/s³).
pub fn control_slope(bc: &BoundaryConditions) -> f64 {
    let t = bc.horizon();
    3.0 * (bc.v0 * t - bc.distance()) / (t * t * t)
}

/// Solves the box-free problem as a single arc covering `[t0, tm]`.
///
/// The intercept is computed as `b = −(a·T)`, so in the local frame the
/// terminal control `a·T + b` is exactly zero in floating point (bit-wise,
/// not merely small) whenever `t0 = 0`; for shifted start times the frame
/// change keeps it zero to rounding.
pub fn solve_unconstrained(bc: &BoundaryConditions) -> PolyArc {
    let a = control_slope(bc);
    let b = -(a * bc.horizon());
    PolyArc::from_local(bc.t0, a, b, bc.v0, bc.p0, bc.t0, bc.tm, ArcKind::Unconstrained)
        .expect("box-free arc is well-formed for validated boundary conditions")
}

/// Terminal speed of the box-free optimum, `(3L/T − v0)/2` (m/s).
///
/// Because the box-free speed profile is monotone, this is also its extreme
/// speed: the maximum when the vehicle speeds up, the minimum when it slows
/// down.
pub fn unconstrained_terminal_speed(bc: &BoundaryConditions) -> f64 {
    (3.0 * bc.distance() / bc.horizon() - bc.v0) / 2.0
}

/// Sign of the box-free control slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeClass {
    /// `v0 < L/T`: the vehicle speeds up; `u` starts positive and decreases.
    Decreasing,
    /// `v0·T = L` within [`FLAT_REL_TOL`]: pure cruise, `u ≡ 0`.
    Flat,
    /// `v0 > L/T`: the vehicle slows down; `u` starts negative and increases.
    Increasing,
}

/// Classifies the control slope of the box-free arc.
///
/// The decision compares `v0·T` against `L` with relative tolerance
/// [`FLAT_REL_TOL`], so near-cruise instances classify as `Flat` rather than
/// flapping on the last floating-point bit.
pub fn classify_slope(arc: &PolyArc, bc: &BoundaryConditions) -> SlopeClass {
    let gap = bc.v0 * bc.horizon() - bc.distance();
    debug_assert!(
        gap * arc.a >= -1e-9 * arc.a.abs().max(1.0),
        "arc slope disagrees with boundary data"
    );
    if gap.abs() <= FLAT_REL_TOL * bc.distance().abs() {
        SlopeClass::Flat
    } else if gap < 0.0 {
        SlopeClass::Decreasing
    } else {
        SlopeClass::Increasing
    }
}
