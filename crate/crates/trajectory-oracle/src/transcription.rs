//! Direct transcription of the transit problem on a uniform control grid.
//!
//! The control is piecewise constant over `n` steps of length `h`. For a
//! double integrator that makes the dynamics exactly integrable:
//!
//! ```text
//! v_{k+1} = v_k + h u_k
//! p_{k+1} = p_k + h v_k + h² u_k / 2
//! ```
//!
//! Speed is piecewise linear in time, so enforcing the speed box at the
//! nodes enforces it everywhere; control bounds are a box on the decision
//! vector; the cost `Σ h u_k²/2` is the exact integral of the interpolated
//! control. The resulting problem is a convex QP over the control box with
//! one terminal-position equality and node speed inequalities.
//!
//! It is solved with an augmented-Lagrangian outer loop (one multiplier for
//! the position equality, one per node speed bound, penalty doubling when
//! violations stall) and an inner projected accelerated gradient descent
//! with backtracking line search and gradient-mapping restarts. The inner
//! iteration touches only the control box by projection, so every iterate
//! is control-feasible.
//!
//! Because the discrete class (piecewise-constant controls) is a strict
//! subset of the continuous one, the converged discrete cost approaches the
//! continuous optimum from above as the grid refines, modulo the tiny
//! constraint slack the tolerances allow. That one-sided behaviour is what
//! makes the transcription usable as an independent referee for closed-form
//! solvers: it shares no formulas with them beyond the problem statement.

use trajectory_core::{BoundaryConditions, ConstraintCase, Error, Limits, Result};

/// Convergence tolerances and iteration caps for [`solve_numeric`].
///
/// Position residual is relative to the transit distance; speed violations
/// are absolute (m/s); the KKT residual is the infinity norm of the
/// projected-gradient step on the control box.
pub const POSITION_TOL_REL: f64 = 1e-6;
pub const SPEED_TOL: f64 = 1e-6;
pub const KKT_TOL: f64 = 1e-8;
pub const MAX_INNER_ITERATIONS: usize = 100_000;

/// Uniform control grid over the horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranscriptionGrid {
    /// Number of control steps; at least 100.
    pub n_steps: usize,
    /// Step length (s); `n_steps * dt` spans the horizon exactly.
    pub dt: f64,
    /// Grid origin (s).
    pub t0: f64,
}

impl TranscriptionGrid {
    /// Builds a grid with `n_steps` uniform steps over the horizon of `bc`.
    pub fn new(bc: &BoundaryConditions, n_steps: usize) -> Result<Self> {
        if n_steps < 100 {
            return Err(Error::InvalidInput(format!(
                "transcription needs at least 100 steps, got {n_steps}"
            )));
        }
        Ok(Self { n_steps, dt: bc.horizon() / n_steps as f64, t0: bc.t0 })
    }

    /// Start time of step `k`.
    pub fn step_start(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }
}

/// Converged discrete optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericSolution {
    pub grid: TranscriptionGrid,
    /// Per-step control values (length `n_steps`).
    pub controls: Vec<f64>,
    /// Node speeds (length `n_steps + 1`).
    pub speeds: Vec<f64>,
    /// Node positions (length `n_steps + 1`).
    pub positions: Vec<f64>,
    /// Discrete cost `Σ h u_k²/2`.
    pub cost: f64,
    /// Total inner iterations spent.
    pub iterations: usize,
    /// Terminal-position residual `p_n - pm` (m).
    pub position_residual: f64,
    /// Largest speed-bound violation at the nodes (m/s).
    pub max_speed_violation: f64,
    /// Projected-gradient infinity norm at the solution.
    pub kkt_residual: f64,
}

impl NumericSolution {
    /// Infers which constraints are active at the discrete optimum, within
    /// an absolute detection tolerance in native units (m/s for speeds,
    /// m/s² for controls). Returns `None` when both sides appear active,
    /// which no valid instance produces away from degeneracy.
    pub fn active_case(&self, lim: &Limits, tol: f64) -> Option<ConstraintCase> {
        let vmax_hit = self.speeds.iter().any(|&v| v >= lim.vmax - tol);
        let vmin_hit = self.speeds.iter().any(|&v| v <= lim.vmin + tol);
        let umax_hit = self.controls.iter().any(|&u| u >= lim.umax - tol);
        let umin_hit = self.controls.iter().any(|&u| u <= lim.umin + tol);
        let max_side = vmax_hit || umax_hit;
        let min_side = vmin_hit || umin_hit;
        match (max_side, min_side) {
            (true, true) => None,
            (false, false) => Some(ConstraintCase::Unconstrained),
            (true, false) => Some(match (umax_hit, vmax_hit) {
                (true, true) => ConstraintCase::UmaxAndVmax,
                (true, false) => ConstraintCase::UmaxOnly,
                (false, true) => ConstraintCase::VmaxOnly,
                (false, false) => unreachable!(),
            }),
            (false, true) => Some(match (umin_hit, vmin_hit) {
                (true, true) => ConstraintCase::UminAndVmin,
                (true, false) => ConstraintCase::UminOnly,
                (false, true) => ConstraintCase::VminOnly,
                (false, false) => unreachable!(),
            }),
        }
    }

    /// Speed at an arbitrary time by linear interpolation between nodes.
    pub fn speed_at(&self, t: f64) -> f64 {
        let s = ((t - self.grid.t0) / self.grid.dt).clamp(0.0, self.grid.n_steps as f64);
        let k = (s.floor() as usize).min(self.grid.n_steps - 1);
        let frac = s - k as f64;
        self.speeds[k] + frac * (self.speeds[k + 1] - self.speeds[k])
    }
}

/// Workspace for the augmented-Lagrangian subproblem.
struct AugLag<'a> {
    n: usize,
    h: f64,
    v0: f64,
    vmin: f64,
    vmax: f64,
    target: f64, // pm - p0 - v0 T: what Σ w_k u_k must equal
    w: Vec<f64>, // ∂(terminal position)/∂u_k
    lambda: f64,
    eta_hi: Vec<f64>,
    eta_lo: Vec<f64>,
    rho: f64,
    speeds: &'a mut Vec<f64>, // scratch: node speeds for the current point
}

impl AugLag<'_> {
    /// Node speeds for `u` into the scratch buffer.
    fn fill_speeds(&mut self, u: &[f64]) {
        self.speeds[0] = self.v0;
        for k in 0..self.n {
            self.speeds[k + 1] = self.speeds[k] + self.h * u[k];
        }
    }

    /// Terminal-position residual for the current scratch speeds.
    fn residual(&self, u: &[f64]) -> f64 {
        let mut acc = 0.0;
        for k in 0..self.n {
            acc += self.w[k] * u[k];
        }
        acc - self.target
    }

    /// Augmented-Lagrangian value at `u` (fills scratch speeds).
    fn value(&mut self, u: &[f64]) -> f64 {
        self.fill_speeds(u);
        let r = self.residual(u);
        let mut f = self.lambda * r + 0.5 * self.rho * r * r;
        for k in 0..self.n {
            f += 0.5 * self.h * u[k] * u[k];
        }
        for j in 1..=self.n {
            let hi = (self.eta_hi[j] + self.rho * (self.speeds[j] - self.vmax)).max(0.0);
            let lo = (self.eta_lo[j] + self.rho * (self.vmin - self.speeds[j])).max(0.0);
            f += (hi * hi - self.eta_hi[j] * self.eta_hi[j]) / (2.0 * self.rho);
            f += (lo * lo - self.eta_lo[j] * self.eta_lo[j]) / (2.0 * self.rho);
        }
        f
    }

    /// Gradient at `u` (fills scratch speeds). `grad` has length `n`.
    fn gradient(&mut self, u: &[f64], grad: &mut [f64]) {
        self.fill_speeds(u);
        let r = self.residual(u);
        let lam_eff = self.lambda + self.rho * r;
        // Suffix sums of the active speed-penalty slopes: ∂v_j/∂u_k = h for
        // every node j past step k.
        let mut suffix = 0.0;
        for k in (0..self.n).rev() {
            let j = k + 1;
            let hi = (self.eta_hi[j] + self.rho * (self.speeds[j] - self.vmax)).max(0.0);
            let lo = (self.eta_lo[j] + self.rho * (self.vmin - self.speeds[j])).max(0.0);
            suffix += hi - lo;
            grad[k] = self.h * u[k] + lam_eff * self.w[k] + self.h * suffix;
        }
    }
}

fn clip(x: f64, lo: f64, hi: f64) -> f64 {
    x.max(lo).min(hi)
}

/// Solves the transcription QP for `bc` under `lim` with `n_steps` uniform
/// control steps.
///
/// Deterministic: initialization is the energy-minimal unconstrained ramp
/// (computed inline from the boundary data) clipped to the control box, and
/// the iteration is seed-free. Errors with [`Error::NonConverged`] carrying
/// the residuals when the iteration cap is reached.
pub fn solve_numeric(
    bc: &BoundaryConditions,
    lim: &Limits,
    n_steps: usize,
) -> Result<NumericSolution> {
    let grid = TranscriptionGrid::new(bc, n_steps)?;
    let n = n_steps;
    let h = grid.dt;
    let t_total = bc.horizon();
    let l = bc.distance();

    // Sensitivities w_k = ∂p_n/∂u_k for the exact discrete dynamics.
    let w: Vec<f64> = (0..n).map(|k| h * h * (n as f64 - k as f64 - 0.5)).collect();

    // Unconstrained energy-minimal ramp u(t) = a t + b (local time),
    // sampled at step midpoints and clipped to the control box.
    let a = 3.0 * (bc.v0 * t_total - l) / (t_total * t_total * t_total);
    let b = -a * t_total;
    let mut u: Vec<f64> = (0..n)
        .map(|k| clip(a * (k as f64 + 0.5) * h + b, lim.umin, lim.umax))
        .collect();

    let mut speeds_scratch = vec![0.0; n + 1];
    let mut alm = AugLag {
        n,
        h,
        v0: bc.v0,
        vmin: lim.vmin,
        vmax: lim.vmax,
        target: l - bc.v0 * t_total,
        w,
        lambda: 0.0,
        eta_hi: vec![0.0; n + 1],
        eta_lo: vec![0.0; n + 1],
        rho: 100.0,
        speeds: &mut speeds_scratch,
    };

    let pos_tol = POSITION_TOL_REL * l;
    let mut total_iters = 0usize;
    // Inner solves stay loose while the multipliers are still moving; the
    // expensive full-tightness solve happens only once the true constraints
    // are met, as the final polish.
    let mut inner_tol = 1e-4;
    let mut prev_infeas = f64::INFINITY;
    let mut lipschitz = 1.0;

    let mut grad = vec![0.0; n];
    let mut u_prev = u.clone();
    let mut y = u.clone();
    let mut u_next = vec![0.0; n];

    for _outer in 0..200 {
        // Inner: projected FISTA on the current augmented Lagrangian.
        let mut theta: f64 = 1.0;
        u_prev.copy_from_slice(&u);
        y.copy_from_slice(&u);
        let mut pg_res = f64::INFINITY;

        while total_iters < MAX_INNER_ITERATIONS {
            total_iters += 1;
            alm.gradient(&y, &mut grad);
            let f_y = alm.value(&y);

            // Backtracking: find a step 1/lipschitz satisfying the descent
            // bound, growing the estimate only when violated.
            loop {
                let step = 1.0 / lipschitz;
                for k in 0..n {
                    u_next[k] = clip(y[k] - step * grad[k], lim.umin, lim.umax);
                }
                let f_next = alm.value(&u_next);
                let mut quad = f_y;
                for k in 0..n {
                    let d = u_next[k] - y[k];
                    quad += grad[k] * d + 0.5 * lipschitz * d * d;
                }
                if f_next <= quad + 1e-12 * quad.abs().max(1.0) {
                    break;
                }
                lipschitz *= 2.0;
                if !lipschitz.is_finite() {
                    return Err(Error::NonConverged(
                        "line search diverged in transcription solve".into(),
                    ));
                }
            }

            // Gradient-mapping restart keeps momentum aligned with descent.
            let mut restart_dot = 0.0;
            for k in 0..n {
                restart_dot += (y[k] - u_next[k]) * (u_next[k] - u_prev[k]);
            }
            let theta_next = if restart_dot > 0.0 {
                1.0
            } else {
                0.5 * (1.0 + (1.0 + 4.0 * theta * theta).sqrt())
            };
            let momentum = if restart_dot > 0.0 { 0.0 } else { (theta - 1.0) / theta_next };
            for k in 0..n {
                let next = u_next[k];
                y[k] = next + momentum * (next - u_prev[k]);
                u_prev[k] = next;
            }
            theta = theta_next;

            // Projected-gradient residual at the new point (unit step).
            alm.gradient(&u_prev, &mut grad);
            pg_res = 0.0;
            for k in 0..n {
                let stepped = clip(u_prev[k] - grad[k], lim.umin, lim.umax);
                pg_res = pg_res.max((u_prev[k] - stepped).abs());
            }
            if pg_res <= inner_tol {
                break;
            }
        }
        u.copy_from_slice(&u_prev);

        // Multiplier updates and convergence test on the true constraints.
        alm.fill_speeds(&u);
        let r = alm.residual(&u);
        let mut speed_viol = 0.0f64;
        for j in 1..=n {
            speed_viol = speed_viol.max(alm.speeds[j] - lim.vmax).max(lim.vmin - alm.speeds[j]);
        }
        let speed_viol = speed_viol.max(0.0);

        if r.abs() <= pos_tol && speed_viol <= SPEED_TOL && pg_res <= KKT_TOL {
            let mut positions = vec![bc.p0; n + 1];
            for k in 0..n {
                positions[k + 1] =
                    positions[k] + h * alm.speeds[k] + 0.5 * h * h * u[k];
            }
            let speeds = alm.speeds.clone();
            let cost = 0.5 * h * u.iter().map(|x| x * x).sum::<f64>();
            return Ok(NumericSolution {
                grid,
                controls: u,
                speeds,
                positions,
                cost,
                iterations: total_iters,
                position_residual: r,
                max_speed_violation: speed_viol,
                kkt_residual: pg_res,
            });
        }
        if total_iters >= MAX_INNER_ITERATIONS {
            break;
        }

        alm.lambda += alm.rho * r;
        for j in 1..=n {
            alm.eta_hi[j] = (alm.eta_hi[j] + alm.rho * (alm.speeds[j] - lim.vmax)).max(0.0);
            alm.eta_lo[j] = (alm.eta_lo[j] + alm.rho * (lim.vmin - alm.speeds[j])).max(0.0);
        }
        // Grow the penalty only while infeasibility is the bottleneck and
        // not already shrinking geometrically: past that point a larger
        // penalty just ill-conditions the subproblem and starves the inner
        // iteration.
        let infeas = (r.abs() / pos_tol).max(speed_viol / SPEED_TOL);
        if infeas > 1.0 && infeas > 0.25 * prev_infeas {
            alm.rho = (alm.rho * 2.0).min(1e12);
        }
        prev_infeas = infeas;
        inner_tol = if infeas <= 1.0 { KKT_TOL } else { (inner_tol * 0.1).max(1e-6) };
    }

    alm.fill_speeds(&u);
    let r = alm.residual(&u);
    let mut speed_viol = 0.0f64;
    for j in 1..=n {
        speed_viol = speed_viol.max(alm.speeds[j] - lim.vmax).max(lim.vmin - alm.speeds[j]);
    }
    Err(Error::NonConverged(format!(
        "transcription stopped after {total_iters} iterations: position residual {r:.3e} m, \
         speed violation {:.3e} m/s",
        speed_viol.max(0.0)
    )))
}
