//! Entry and exit times of the constrained arcs.
//!
//! The optimal control is continuous, so an arc that meets a speed bound
//! does so tangentially (`u = 0` at entry) and an arc that leaves a control
//! bound departs with `u` equal to that bound. Combining tangency with the
//! terminal-position closure pins each junction in closed form; all times
//! returned here are absolute.
//!
//! With `T = tm − t0`, `L = pm − p0`, and a bound pair `(u_b, v_b)`:
//!
//! - speed bound alone: the ramp exits to a cruise at local
//!   `τ_s = 3(L − v_b·T)/(v0 − v_b)`;
//! - control bound alone: the saturated lead arc ends at local
//!   `τ_c = T − Δ` with `Δ² = (3T²·u_b + 6T·v0 − 6L)/u_b`;
//! - both bounds: the saturated ramp would reach `v_b` after
//!   `W0 = (v_b − v0)/u_b`, covering at most
//!   `D = v_b·T − u_b·W0²/2` by the deadline; the slack mid arc then has
//!   width `Δ = √(24(D − L)/u_b)` centered on `W0`, i.e.
//!   `τ_c = W0 − Δ/2` and `τ_s = W0 + Δ/2`.

use trajectory_core::{BoundaryConditions, Error, Limits, Result, TIME_TOL};

/// Exit of the tangential ramp onto the `vmax` cruise (absolute seconds).
pub fn junction_vmax(bc: &BoundaryConditions, lim: &Limits) -> Result<f64> {
    junction_speed(bc, lim.vmax)
}

/// Exit of the tangential ramp onto the `vmin` cruise (absolute seconds).
pub fn junction_vmin(bc: &BoundaryConditions, lim: &Limits) -> Result<f64> {
    junction_speed(bc, lim.vmin)
}

/// End of the saturated `umax` lead arc (absolute seconds).
pub fn junction_umax(bc: &BoundaryConditions, lim: &Limits) -> Result<f64> {
    junction_control(bc, lim.umax)
}

/// End of the saturated `umin` lead arc (absolute seconds).
pub fn junction_umin(bc: &BoundaryConditions, lim: &Limits) -> Result<f64> {
    junction_control(bc, lim.umin)
}

/// Lead-arc end and cruise entry when `umax` and `vmax` both bind.
pub fn junctions_case3(bc: &BoundaryConditions, lim: &Limits) -> Result<(f64, f64)> {
    let (tau_c, tau_s) = raw_junctions_control_speed(bc, lim.umax, lim.vmax)?;
    Ok((in_horizon(bc, tau_c)?, in_horizon(bc, tau_s)?))
}

/// Lead-arc end and cruise entry when `umin` and `vmin` both bind.
pub fn junctions_case6(bc: &BoundaryConditions, lim: &Limits) -> Result<(f64, f64)> {
    let (tau_c, tau_s) = raw_junctions_control_speed(bc, lim.umin, lim.vmin)?;
    Ok((in_horizon(bc, tau_c)?, in_horizon(bc, tau_s)?))
}

fn junction_speed(bc: &BoundaryConditions, v_b: f64) -> Result<f64> {
    let denom = bc.v0 - v_b;
    if denom == 0.0 {
        return Err(Error::InconsistentCase(
            "entry speed sits on the speed bound; no tangential ramp exists".into(),
        ));
    }
    let theta = 3.0 * (bc.distance() - v_b * bc.horizon()) / denom;
    in_horizon(bc, bc.t0 + theta)
}

fn junction_control(bc: &BoundaryConditions, u_b: f64) -> Result<f64> {
    let t = bc.horizon();
    let radicand = (3.0 * t * t * u_b + 6.0 * t * bc.v0 - 6.0 * bc.distance()) / u_b;
    if radicand < 0.0 {
        return Err(Error::InconsistentCase(format!(
            "no saturated lead arc closes the transit (radicand {radicand:.6e})"
        )));
    }
    in_horizon(bc, bc.tm - radicand.sqrt())
}

/// Same junctions without the horizon clamp, so the case solver can detect
/// out-of-range values and delegate to a simpler case instead of failing.
pub(crate) fn raw_junctions_control_speed(
    bc: &BoundaryConditions,
    u_b: f64,
    v_b: f64,
) -> Result<(f64, f64)> {
    let t = bc.horizon();
    let w0 = (v_b - bc.v0) / u_b;
    let d_bound = v_b * t - 0.5 * u_b * w0 * w0;
    let radicand = 24.0 * (d_bound - bc.distance()) / u_b;
    if radicand < 0.0 {
        return Err(Error::InconsistentCase(format!(
            "transit distance exceeds the saturated ramp-then-cruise reach (radicand {radicand:.6e})"
        )));
    }
    let half_width = 0.5 * radicand.sqrt();
    Ok((bc.t0 + (w0 - half_width), bc.t0 + (w0 + half_width)))
}

/// Junctions may sit exactly on `t0` or `tm` (degenerate arcs that the case
/// solvers collapse); anything clearly outside the horizon means the case
/// does not apply.
fn in_horizon(bc: &BoundaryConditions, tau: f64) -> Result<f64> {
    if tau < bc.t0 - TIME_TOL || tau > bc.tm + TIME_TOL {
        return Err(Error::InconsistentCase(format!(
            "junction {tau:.6} falls outside the horizon [{:.6}, {:.6}]",
            bc.t0, bc.tm
        )));
    }
    Ok(tau)
}
