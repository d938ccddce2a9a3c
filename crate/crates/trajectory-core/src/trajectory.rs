//! Piecewise-polynomial trajectories and their serialization.

use crate::error::{Error, Result};
use crate::fmt::csv_float;
use crate::types::{ConstraintCase, PolyArc, TIME_TOL};

/// Position/speed continuity tolerance (m, m/s) at junctions.
pub const CONTINUITY_TOL: f64 = 1e-9;

/// A trajectory assembled from contiguous polynomial arcs.
///
/// Adjacent arcs agree in position and speed to [`CONTINUITY_TOL`] at every
/// junction. The case tag records which constraint set produced the arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseTrajectory {
    arcs: Vec<PolyArc>,
    case: ConstraintCase,
}

impl PiecewiseTrajectory {
    /// Validates contiguity and continuity, then builds the trajectory.
    pub fn new(arcs: Vec<PolyArc>, case: ConstraintCase) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::InvalidInput("trajectory needs at least one arc".into()));
        }
        for pair in arcs.windows(2) {
            let (left, right) = (&pair[0], &pair[1]);
            if (left.t_end - right.t_start).abs() > TIME_TOL {
                return Err(Error::InvalidInput(format!(
                    "arc windows not contiguous: [{}, {}] then [{}, {}]",
                    left.t_start, left.t_end, right.t_start, right.t_end
                )));
            }
            let t = left.t_end;
            let (p_l, v_l, _) = left.eval_unchecked(t);
            let (p_r, v_r, _) = right.eval_unchecked(t);
            if (p_l - p_r).abs() > CONTINUITY_TOL {
                return Err(Error::InvalidInput(format!(
                    "position discontinuity {} m at junction {} s",
                    p_l - p_r,
                    t
                )));
            }
            if (v_l - v_r).abs() > CONTINUITY_TOL {
                return Err(Error::InvalidInput(format!(
                    "speed discontinuity {} m/s at junction {} s",
                    v_l - v_r,
                    t
                )));
            }
        }
        Ok(Self { arcs, case })
    }

    /// The arcs, in time order.
    pub fn arcs(&self) -> &[PolyArc] {
        &self.arcs
    }

    /// Which constraint set produced this trajectory.
    pub fn case(&self) -> ConstraintCase {
        self.case
    }

    /// Trajectory start time (s).
    pub fn t_start(&self) -> f64 {
        self.arcs[0].t_start
    }

    /// Trajectory end time (s).
    pub fn t_end(&self) -> f64 {
        self.arcs[self.arcs.len() - 1].t_end
    }

    /// Interior junction times, one per adjacent arc pair.
    pub fn junctions(&self) -> Vec<f64> {
        self.arcs.iter().skip(1).map(|arc| arc.t_start).collect()
    }

    /// Evaluates `(position, speed, control)` at absolute time `t`.
    ///
    /// At a junction the later arc is used; the states are continuous so
    /// only the reported `arc_kind` of a sample can differ by convention.
    pub fn eval(&self, t: f64) -> Result<(f64, f64, f64)> {
        Ok(self.arc_at(t)?.eval_unchecked(t))
    }

    /// The arc covering time `t` (later arc at junctions).
    pub fn arc_at(&self, t: f64) -> Result<&PolyArc> {
        if t < self.t_start() - TIME_TOL || t > self.t_end() + TIME_TOL {
            return Err(Error::OutsideWindow { t, start: self.t_start(), end: self.t_end() });
        }
        let idx = self
            .arcs
            .iter()
            .rposition(|arc| t >= arc.t_start)
            .unwrap_or(0);
        Ok(&self.arcs[idx])
    }

    /// Total energy: the sum of `∫ u²/2 dt` over all arcs, each in closed
    /// form. Always nonnegative.
    pub fn cost(&self) -> f64 {
        self.arcs.iter().map(PolyArc::cost).sum()
    }

    /// Terminal speed (m/s).
    pub fn terminal_speed(&self) -> f64 {
        let (_, v, _) = self.arcs[self.arcs.len() - 1].eval_unchecked(self.t_end());
        v
    }

    /// Sample times at resolution `dt`, always including the start, the end,
    /// and every junction. Sorted and deduplicated.
    pub fn sample_times(&self, dt: f64) -> Result<Vec<f64>> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidInput(format!("sample resolution must be positive, got {dt}")));
        }
        let (start, end) = (self.t_start(), self.t_end());
        let n = ((end - start) / dt).ceil() as usize;
        let mut times: Vec<f64> = (0..=n).map(|i| (start + i as f64 * dt).min(end)).collect();
        times.extend(self.junctions());
        times.push(end);
        times.sort_by(|x, y| x.partial_cmp(y).expect("sample times are finite"));
        times.dedup_by(|x, y| (*x - *y).abs() <= TIME_TOL);
        Ok(times)
    }

    /// Renders the trajectory as CSV with the fixed column set
    /// `t_s,p_m,v_mps,u_mps2,arc_kind`, sampled at `dt` plus all junctions.
    /// Floats carry 17 significant digits; lines end with LF.
    pub fn to_csv(&self, dt: f64) -> Result<String> {
        let times = self.sample_times(dt)?;
        let mut out = String::with_capacity(times.len() * 96 + 32);
        out.push_str("t_s,p_m,v_mps,u_mps2,arc_kind\n");
        for t in times {
            let arc = self.arc_at(t)?;
            let (p, v, u) = arc.eval_unchecked(t);
            out.push_str(&csv_float(t));
            out.push(',');
            out.push_str(&csv_float(p));
            out.push(',');
            out.push_str(&csv_float(v));
            out.push(',');
            out.push_str(&csv_float(u));
            out.push(',');
            out.push_str(arc.kind.label());
            out.push('\n');
        }
        Ok(out)
    }

    /// Largest speed-bound and control-bound violations (m/s, m/s²) when the
    /// trajectory is sampled at `dt`; zero when the limits hold everywhere.
    pub fn max_bound_violation(&self, vmin: f64, vmax: f64, umin: f64, umax: f64, dt: f64) -> Result<(f64, f64)> {
        let mut worst_v: f64 = 0.0;
        let mut worst_u: f64 = 0.0;
        for t in self.sample_times(dt)? {
            let (_, v, u) = self.eval(t)?;
            worst_v = worst_v.max(v - vmax).max(vmin - v);
            worst_u = worst_u.max(u - umax).max(umin - u);
        }
        Ok((worst_v.max(0.0), worst_u.max(0.0)))
    }
}

/// Single-arc convenience constructor.
pub fn single_arc_trajectory(arc: PolyArc, case: ConstraintCase) -> PiecewiseTrajectory {
    PiecewiseTrajectory::new(vec![arc], case).expect("single arc is trivially continuous")
}

/// Parses a CSV produced by [`PiecewiseTrajectory::to_csv`] back into
/// `(t, p, v, u)` rows. Used by round-trip checks and report tooling.
pub fn parse_trajectory_csv(text: &str) -> Result<Vec<(f64, f64, f64, f64)>> {
    let mut lines = text.lines();
    match lines.next() {
        Some("t_s,p_m,v_mps,u_mps2,arc_kind") => {}
        other => {
            return Err(Error::InvalidInput(format!(
                "unexpected CSV header: {:?}",
                other.unwrap_or("")
            )))
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let mut next_float = |name: &str| -> Result<f64> {
            fields
                .next()
                .ok_or_else(|| Error::InvalidInput(format!("row {}: missing {name}", i + 2)))?
                .parse::<f64>()
                .map_err(|e| Error::InvalidInput(format!("row {}: bad {name}: {e}", i + 2)))
        };
        let t = next_float("t_s")?;
        let p = next_float("p_m")?;
        let v = next_float("v_mps")?;
        let u = next_float("u_mps2")?;
        rows.push((t, p, v, u));
    }
    Ok(rows)
}

/// Re-evaluates `∫ u²/2 dt` from parsed CSV rows, treating the control as
/// linear between consecutive samples: each segment contributes
/// `Δt (u1² + u1 u2 + u2²)/6`. Emitted CSVs sample every junction and the
/// control is affine within arcs, so for them this reconstruction is exact
/// to float precision; for foreign data it is a second-order quadrature.
pub fn cost_from_csv_rows(rows: &[(f64, f64, f64, f64)]) -> f64 {
    rows.windows(2)
        .map(|w| {
            let (t1, _, _, u1) = w[0];
            let (t2, _, _, u2) = w[1];
            (t2 - t1) * (u1 * u1 + u1 * u2 + u2 * u2) / 6.0
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::ArcKind;
    use approx::assert_relative_eq;

    fn reference_two_arc() -> PiecewiseTrajectory {
        // Cubic into a speed arc at vmax = 22: L=210, v0=16, T=10, junction 5 s.
        let arc1 = PolyArc::new(-0.48, 2.4, 16.0, 0.0, 0.0, 5.0, ArcKind::Unconstrained).unwrap();
        let arc2 = PolyArc::new(0.0, 0.0, 22.0, -10.0, 5.0, 10.0, ArcKind::SpeedMax).unwrap();
        PiecewiseTrajectory::new(vec![arc1, arc2], ConstraintCase::VmaxOnly).unwrap()
    }

    #[test]
    fn continuity_validation_rejects_gaps() {
        let arc1 = PolyArc::new(0.0, 0.0, 10.0, 0.0, 0.0, 5.0, ArcKind::Unconstrained).unwrap();
        // Position jumps by 1 m at the junction.
        let arc2 = PolyArc::new(0.0, 0.0, 10.0, 1.0, 5.0, 10.0, ArcKind::Unconstrained).unwrap();
        let err = PiecewiseTrajectory::new(vec![arc1, arc2], ConstraintCase::Unconstrained);
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn contiguity_validation_rejects_window_gaps() {
        let arc1 = PolyArc::new(0.0, 0.0, 10.0, 0.0, 0.0, 5.0, ArcKind::Unconstrained).unwrap();
        let arc2 = PolyArc::new(0.0, 0.0, 10.0, 0.0, 5.5, 10.0, ArcKind::Unconstrained).unwrap();
        let err = PiecewiseTrajectory::new(vec![arc1, arc2], ConstraintCase::Unconstrained);
        assert!(matches!(err, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn junction_evaluation_uses_later_arc_and_stays_continuous() {
        let traj = reference_two_arc();
        assert_eq!(traj.junctions(), vec![5.0]);
        let (p, v, _) = traj.eval(5.0).unwrap();
        assert_relative_eq!(v, 22.0, max_relative = 1e-12);
        assert_relative_eq!(p, 100.0, max_relative = 1e-12);
        assert_eq!(traj.arc_at(5.0).unwrap().kind, ArcKind::SpeedMax);
        // Terminal position is pm = 210.
        let (pm, ..) = traj.eval(10.0).unwrap();
        assert_relative_eq!(pm, 210.0, max_relative = 1e-12);
    }

    #[test]
    fn zero_control_trajectory_has_zero_cost() {
        let arc = PolyArc::new(0.0, 0.0, 13.4, 0.0, 0.0, 10.0, ArcKind::Unconstrained).unwrap();
        let traj = single_arc_trajectory(arc, ConstraintCase::Unconstrained);
        assert_eq!(traj.cost(), 0.0);
    }

    #[test]
    fn constant_control_trajectory_cost_is_half_b_squared_t() {
        let arc = PolyArc::new(0.0, 1.8, 13.4, 0.0, 0.0, 4.0, ArcKind::ControlMax).unwrap();
        let traj = single_arc_trajectory(arc, ConstraintCase::UmaxOnly);
        assert_relative_eq!(traj.cost(), 0.5 * 1.8 * 1.8 * 4.0, max_relative = 1e-12);
    }

    #[test]
    fn sample_times_include_junctions_and_endpoints() {
        let traj = reference_two_arc();
        let times = traj.sample_times(0.4).unwrap();
        assert_relative_eq!(times[0], 0.0);
        assert_relative_eq!(*times.last().unwrap(), 10.0);
        assert!(times.iter().any(|&t| t == 5.0), "junction sample missing");
        assert!(times.windows(2).all(|w| w[1] > w[0]), "samples not strictly increasing");
    }

    #[test]
    fn csv_round_trip_reproduces_cost() {
        let traj = reference_two_arc();
        let csv = traj.to_csv(0.01).unwrap();
        assert!(csv.starts_with("t_s,p_m,v_mps,u_mps2,arc_kind\n"));
        assert!(!csv.contains('\r'), "CSV must use LF line endings");
        let rows = parse_trajectory_csv(&csv).unwrap();
        let numeric = cost_from_csv_rows(&rows);
        assert_relative_eq!(numeric, traj.cost(), max_relative = 1e-6);
    }

    #[test]
    fn csv_floats_round_trip_exactly() {
        let traj = reference_two_arc();
        let csv = traj.to_csv(0.37).unwrap();
        for (t, p, ..) in parse_trajectory_csv(&csv).unwrap() {
            let (p_direct, ..) = traj.eval(t).unwrap();
            assert_eq!(p, p_direct, "17-significant-digit formatting must round-trip");
        }
    }

    #[test]
    fn bound_violation_scan_flags_excess_speed() {
        let traj = reference_two_arc();
        let (dv, du) = traj.max_bound_violation(0.0, 22.0, -3.0, 2.5, 1e-3).unwrap();
        assert_eq!(dv, 0.0);
        assert_eq!(du, 0.0);
        let (dv_tight, _) = traj.max_bound_violation(0.0, 21.0, -3.0, 2.5, 1e-3).unwrap();
        assert_relative_eq!(dv_tight, 1.0, max_relative = 1e-9);
    }
}
