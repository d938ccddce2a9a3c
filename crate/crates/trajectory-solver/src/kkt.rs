//! First-order optimality checks for a trajectory/costate pair.
//!
//! With the Hamiltonian `H = u²/2 + λᵖ·v + λᵛ·u + μᵃ(u − umax) +
//! μᵇ(umin − u) + ηᶜ(v − vmax) + ηᵈ(vmin − v)`, a minimizing trajectory
//! satisfies, at every sample time:
//!
//! 1. stationarity: `u + λᵛ + μᵃ − μᵇ = 0`;
//! 2. complementary slackness: each multiplier times its constraint value
//!    vanishes;
//! 3. nonnegativity: all multipliers (and the entry jump) are `≥ 0`;
//! 4. free terminal speed: `λᵛ(tm) = 0`;
//! 5. the reduced Hamiltonian `u²/2 + λᵖ·v + λᵛ·u` (the constraint terms
//!    vanish by slackness) is one constant across the whole horizon — the
//!    problem is autonomous — which covers both continuity at junctions and
//!    constancy along arcs.
//!
//! The validator never fails early: it evaluates all five checks and reports
//! each one's worst residual and where it occurred, so a caller can tell a
//! sign error from a closure error. A profile that does not cover some
//! sampled time fails that check with an infinite residual instead of
//! raising an error.

use trajectory_core::{BoundaryConditions, CostateProfile, Limits, PiecewiseTrajectory, TIME_TOL};

/// Largest admissible `|u + λᵛ + μᵃ − μᵇ|`.
pub const STATIONARITY_TOL: f64 = 1e-6;
/// Largest admissible `|multiplier × constraint|`.
pub const COMPLEMENTARITY_TOL: f64 = 1e-6;
/// Most negative value a multiplier may take.
pub const NONNEGATIVITY_TOL: f64 = -1e-9;
/// Largest admissible `|λᵛ(tm)|`.
pub const TERMINAL_COSTATE_TOL: f64 = 1e-9;
/// Largest admissible Hamiltonian mismatch across a junction.
pub const HAMILTONIAN_TOL: f64 = 1e-6;
/// Sample spacing (s) for the pointwise checks.
pub const KKT_SAMPLE_DT: f64 = 1e-2;

/// Outcome of one named check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Worst residual seen: an absolute value for residual checks, the most
    /// negative multiplier for the nonnegativity check.
    pub worst_residual: f64,
    /// Sample time at which the worst residual occurred.
    pub worst_time: f64,
}

/// Results of all five checks, in the order listed in the module docs.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Names of the checks that failed.
    pub fn failed_names(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

struct Worst {
    value: f64,
    time: f64,
}

impl Worst {
    fn new() -> Self {
        Worst { value: 0.0, time: f64::NAN }
    }

    /// Tracks the largest magnitude (residual-style checks).
    fn max_abs(&mut self, value: f64, time: f64) {
        if !value.is_finite() {
            self.value = f64::INFINITY;
            self.time = time;
        } else if value.abs() > self.value {
            self.value = value.abs();
            self.time = time;
        }
    }

    /// Tracks the most negative value (nonnegativity check).
    fn min(&mut self, value: f64, time: f64) {
        if !value.is_finite() {
            self.value = f64::NEG_INFINITY;
            self.time = time;
        } else if value < self.value {
            self.value = value;
            self.time = time;
        }
    }
}

/// Runs the five first-order checks; never returns an error.
pub fn validate_kkt(
    traj: &PiecewiseTrajectory,
    profile: &CostateProfile,
    bc: &BoundaryConditions,
    lim: &Limits,
) -> ValidationReport {
    let mut stationarity = Worst::new();
    let mut complementarity = Worst::new();
    let mut nonnegativity = Worst::new();
    nonnegativity.min(profile.pi_jump, traj.t_start());

    for arc in traj.arcs() {
        let steps = (arc.duration() / KKT_SAMPLE_DT).ceil().max(1.0) as usize;
        let h = arc.duration() / steps as f64;
        for k in 0..=steps {
            let t = if k == steps { arc.t_end } else { arc.t_start + k as f64 * h };
            let (_, v, u) = arc.eval_unchecked(t);
            match profile.piece_at(t) {
                Ok(piece) => {
                    let lambda_v = piece.lambda_v.eval(t);
                    let mu_a = piece.mu_a.eval(t);
                    let mu_b = piece.mu_b.eval(t);
                    let eta_c = piece.eta_c.eval(t);
                    let eta_d = piece.eta_d.eval(t);
                    stationarity.max_abs(u + lambda_v + mu_a - mu_b, t);
                    complementarity.max_abs(mu_a * (u - lim.umax), t);
                    complementarity.max_abs(mu_b * (lim.umin - u), t);
                    complementarity.max_abs(eta_c * (v - lim.vmax), t);
                    complementarity.max_abs(eta_d * (lim.vmin - v), t);
                    for m in [mu_a, mu_b, eta_c, eta_d] {
                        nonnegativity.min(m, t);
                    }
                }
                Err(_) => {
                    stationarity.max_abs(f64::INFINITY, t);
                }
            }
        }
    }

    let mut terminal = Worst::new();
    match profile.lambda_v(bc.tm) {
        Ok(lv) => terminal.max_abs(lv, bc.tm),
        Err(_) => terminal.max_abs(f64::INFINITY, bc.tm),
    }

    // Sample the reduced Hamiltonian at both ends of every arc, looking each
    // side's costates up just inside the arc so junctions compare the two
    // adjoining pieces; the worst pairwise spread is the residual.
    let mut hamiltonian = Worst::new();
    let mut h_reference: Option<f64> = None;
    for arc in traj.arcs() {
        for (t, t_side) in [(arc.t_start, arc.t_start + TIME_TOL), (arc.t_end, arc.t_end - TIME_TOL)]
        {
            let (_, v, u) = arc.eval_unchecked(t);
            match boundary_hamiltonian(profile, t_side, (v, u)) {
                Some(h) => match h_reference {
                    Some(h0) => hamiltonian.max_abs(h - h0, t),
                    None => h_reference = Some(h),
                },
                None => hamiltonian.max_abs(f64::INFINITY, t),
            }
        }
    }

    let report = |name, worst: Worst, tol: f64, lower_bound: bool| CheckResult {
        name,
        passed: if lower_bound { worst.value >= tol } else { worst.value <= tol },
        worst_residual: worst.value,
        worst_time: worst.time,
    };
    ValidationReport {
        checks: vec![
            report("stationarity", stationarity, STATIONARITY_TOL, false),
            report("complementary slackness", complementarity, COMPLEMENTARITY_TOL, false),
            report("multiplier nonnegativity", nonnegativity, NONNEGATIVITY_TOL, true),
            report("terminal speed costate", terminal, TERMINAL_COSTATE_TOL, false),
            report("hamiltonian continuity", hamiltonian, HAMILTONIAN_TOL, false),
        ],
    }
}

/// `u²/2 + λᵖ·v + λᵛ·u` with `λᵛ` taken from the piece covering `t_side`
/// (nudged off the junction so each side uses its own piece); the constraint
/// terms are omitted because slackness zeroes them at the optimum.
fn boundary_hamiltonian(
    profile: &CostateProfile,
    t_side: f64,
    (v, u): (f64, f64),
) -> Option<f64> {
    let piece = profile.piece_at(t_side).ok()?;
    let lambda_v = piece.lambda_v.eval(t_side);
    Some(0.5 * u * u + profile.lambda_p * v + lambda_v * u)
}
