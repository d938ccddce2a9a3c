//! Plain data types: boundary conditions, actuation limits, polynomial arcs.
//!
//! The model is a double integrator moving along a lane: position `p` (m),
//! speed `v = dp/dt` (m/s), control `u = dv/dt` (m/s²). A trajectory is a
//! sequence of arcs on which the control is affine in time, so speed is
//! quadratic and position cubic. All coefficients are expressed in absolute
//! time: evaluating an arc is a plain polynomial evaluation at `t`, with no
//! hidden offset.

use crate::error::{Error, Result};

/// Absolute tolerance (s) when checking whether a time lies inside a window.
pub const TIME_TOL: f64 = 1e-9;

/// Boundary data for one fixed-horizon transit.
///
/// The trajectory runs on `[t0, tm]`, starts at `(p0, v0)`, and must reach
/// position `pm` at `tm`. The terminal speed is free.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryConditions {
    /// Start time (s); `t0 >= 0`.
    pub t0: f64,
    /// Terminal time (s); `tm > t0`.
    pub tm: f64,
    /// Start position (m).
    pub p0: f64,
    /// Terminal position (m); `pm > p0`.
    pub pm: f64,
    /// Start speed (m/s); `v0 > 0`.
    pub v0: f64,
}

impl BoundaryConditions {
    /// Validates and builds boundary conditions.
    pub fn new(t0: f64, tm: f64, p0: f64, pm: f64, v0: f64) -> Result<Self> {
        for (name, x) in [("t0", t0), ("tm", tm), ("p0", p0), ("pm", pm), ("v0", v0)] {
            if !x.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be finite, got {x}")));
            }
        }
        if t0 < 0.0 {
            return Err(Error::InvalidInput(format!("t0 must be >= 0, got {t0}")));
        }
        if tm <= t0 {
            return Err(Error::InvalidInput(format!("tm ({tm}) must exceed t0 ({t0})")));
        }
        if pm <= p0 {
            return Err(Error::InvalidInput(format!("pm ({pm}) must exceed p0 ({p0})")));
        }
        if v0 <= 0.0 {
            return Err(Error::InvalidInput(format!("v0 must be positive, got {v0}")));
        }
        Ok(Self { t0, tm, p0, pm, v0 })
    }

    /// Horizon length `tm - t0` (s).
    pub fn horizon(&self) -> f64 {
        self.tm - self.t0
    }

    /// Transit distance `pm - p0` (m).
    pub fn distance(&self) -> f64 {
        self.pm - self.p0
    }
}

/// Speed and acceleration bounds for one vehicle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits {
    /// Lower speed bound (m/s); `0 <= vmin < vmax`.
    pub vmin: f64,
    /// Upper speed bound (m/s).
    pub vmax: f64,
    /// Lower acceleration bound (m/s²); `umin < 0`.
    pub umin: f64,
    /// Upper acceleration bound (m/s²); `umax > 0`.
    pub umax: f64,
}

impl Limits {
    /// Validates and builds actuation limits.
    pub fn new(vmin: f64, vmax: f64, umin: f64, umax: f64) -> Result<Self> {
        for (name, x) in [("vmin", vmin), ("vmax", vmax), ("umin", umin), ("umax", umax)] {
            if !x.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be finite, got {x}")));
            }
        }
        if vmin < 0.0 {
            return Err(Error::InvalidInput(format!("vmin must be >= 0, got {vmin}")));
        }
        if vmin >= vmax {
            return Err(Error::InvalidInput(format!(
                "vmin ({vmin}) must be below vmax ({vmax})"
            )));
        }
        if umin >= 0.0 {
            return Err(Error::InvalidInput(format!("umin must be negative, got {umin}")));
        }
        if umax <= 0.0 {
            return Err(Error::InvalidInput(format!("umax must be positive, got {umax}")));
        }
        Ok(Self { vmin, vmax, umin, umax })
    }

    /// True when `v` lies inside the speed box.
    pub fn speed_in_bounds(&self, v: f64) -> bool {
        self.vmin <= v && v <= self.vmax
    }
}

/// Which constraint, if any, an arc rides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    /// No constraint active; control is a free affine segment.
    Unconstrained,
    /// Control pinned at `umax` (a = 0, b = umax).
    ControlMax,
    /// Control pinned at `umin` (a = 0, b = umin).
    ControlMin,
    /// Speed pinned at `vmax` (a = b = 0, c = vmax).
    SpeedMax,
    /// Speed pinned at `vmin` (a = b = 0, c = vmin).
    SpeedMin,
}

impl ArcKind {
    /// Stable lowercase label used in CSV output.
    pub fn label(&self) -> &'static str {
        match self {
            ArcKind::Unconstrained => "unconstrained",
            ArcKind::ControlMax => "control-max",
            ArcKind::ControlMin => "control-min",
            ArcKind::SpeedMax => "speed-max",
            ArcKind::SpeedMin => "speed-min",
        }
    }
}

impl std::fmt::Display for ArcKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Which constraints are active over the whole trajectory.
///
/// Only one side (max or min) can ever activate on a given instance, and a
/// control bound together with the same-side speed bound is the largest
/// simultaneous set, so seven outcomes cover everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintCase {
    Unconstrained,
    VmaxOnly,
    UmaxOnly,
    UmaxAndVmax,
    VminOnly,
    UminOnly,
    UminAndVmin,
}

impl ConstraintCase {
    /// All seven cases in canonical order: free, max side by growing
    /// activation, then the mirrored min side.
    pub const ALL: [ConstraintCase; 7] = [
        ConstraintCase::Unconstrained,
        ConstraintCase::VmaxOnly,
        ConstraintCase::UmaxOnly,
        ConstraintCase::UmaxAndVmax,
        ConstraintCase::VminOnly,
        ConstraintCase::UminOnly,
        ConstraintCase::UminAndVmin,
    ];

    /// Stable lowercase label used in CSV output and reports.
    pub fn label(&self) -> &'static str {
        match self {
            ConstraintCase::Unconstrained => "unconstrained",
            ConstraintCase::VmaxOnly => "vmax-only",
            ConstraintCase::UmaxOnly => "umax-only",
            ConstraintCase::UmaxAndVmax => "umax+vmax",
            ConstraintCase::VminOnly => "vmin-only",
            ConstraintCase::UminOnly => "umin-only",
            ConstraintCase::UminAndVmin => "umin+vmin",
        }
    }
}

impl std::fmt::Display for ConstraintCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One polynomial arc of a trajectory.
///
/// On `[t_start, t_end]` the control is `u(t) = a t + b`, the speed
/// `v(t) = a t²/2 + b t + c`, and the position
/// `p(t) = a t³/6 + b t²/2 + c t + d`, with `t` absolute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyArc {
    /// Control slope (m/s³).
    pub a: f64,
    /// Control intercept (m/s²).
    pub b: f64,
    /// Speed intercept (m/s).
    pub c: f64,
    /// Position intercept (m).
    pub d: f64,
    /// Window start (s).
    pub t_start: f64,
    /// Window end (s); `t_end > t_start`.
    pub t_end: f64,
    /// Constraint the arc rides.
    pub kind: ArcKind,
}

impl PolyArc {
    /// Validates and builds an arc.
    ///
    /// Shape invariants follow from the kind: control arcs have `a = 0`
    /// (constant control) and speed arcs have `a = b = 0` (constant speed).
    /// The pinned value itself (`b = umax`, `c = vmax`, ...) depends on the
    /// limits and is checked by the solver, not here.
    pub fn new(
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        t_start: f64,
        t_end: f64,
        kind: ArcKind,
    ) -> Result<Self> {
        for (name, x) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if !x.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "coefficient {name} must be finite, got {x}"
                )));
            }
        }
        if !(t_end > t_start) {
            return Err(Error::InvalidInput(format!(
                "arc window [{t_start}, {t_end}] must have positive length"
            )));
        }
        let shape_ok = match kind {
            ArcKind::Unconstrained => true,
            ArcKind::ControlMax | ArcKind::ControlMin => a == 0.0,
            ArcKind::SpeedMax | ArcKind::SpeedMin => a == 0.0 && b == 0.0,
        };
        if !shape_ok {
            return Err(Error::InvalidInput(format!(
                "{kind} arc must have constant {} (a={a}, b={b})",
                if matches!(kind, ArcKind::ControlMax | ArcKind::ControlMin) {
                    "control"
                } else {
                    "speed"
                }
            )));
        }
        Ok(Self { a, b, c, d, t_start, t_end, kind })
    }

    /// Builds an arc whose coefficients are given in a local frame
    /// `s = t - t_ref`, re-expanding them to absolute time.
    ///
    /// Solvers derive coefficients with the start of the arc (or of the
    /// trajectory) shifted to zero, where the closed forms are simplest;
    /// this converts them so that plain evaluation at absolute `t` works.
    pub fn from_local(
        t_ref: f64,
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        t_start: f64,
        t_end: f64,
        kind: ArcKind,
    ) -> Result<Self> {
        let b_abs = b - a * t_ref;
        let c_abs = c - b * t_ref + 0.5 * a * t_ref * t_ref;
        let d_abs = d - c * t_ref + 0.5 * b * t_ref * t_ref - a * t_ref * t_ref * t_ref / 6.0;
        Self::new(a, b_abs, c_abs, d_abs, t_start, t_end, kind)
    }

    /// Window length (s).
    pub fn duration(&self) -> f64 {
        self.t_end - self.t_start
    }

    /// Evaluates `(position, speed, control)` at absolute time `t`.
    ///
    /// `t` must lie within the arc window (tolerance [`TIME_TOL`]).
    pub fn eval(&self, t: f64) -> Result<(f64, f64, f64)> {
        if t < self.t_start - TIME_TOL || t > self.t_end + TIME_TOL {
            return Err(Error::OutsideWindow { t, start: self.t_start, end: self.t_end });
        }
        Ok(self.eval_unchecked(t))
    }

    /// Evaluates the arc polynomials at `t` without a window check.
    ///
    /// Useful for extrapolation (e.g. a vehicle coasting past its horizon)
    /// and for one-sided junction evaluation; prefer [`PolyArc::eval`]
    /// elsewhere.
    pub fn eval_unchecked(&self, t: f64) -> (f64, f64, f64) {
        let u = self.a * t + self.b;
        let v = (0.5 * self.a * t + self.b) * t + self.c;
        let p = ((self.a * t / 6.0 + 0.5 * self.b) * t + self.c) * t + self.d;
        (p, v, u)
    }

    /// Energy of the arc: the integral of `u²/2` over its window, in closed
    /// form. The integrand is quadratic, so the expanded antiderivative is
    /// exact and stable.
    pub fn cost(&self) -> f64 {
        let (t1, t2) = (self.t_start, self.t_end);
        let dt1 = t2 - t1;
        let dt2 = t2 * t2 - t1 * t1;
        let dt3 = t2 * t2 * t2 - t1 * t1 * t1;
        0.5 * (self.a * self.a * dt3 / 3.0 + self.a * self.b * dt2 + self.b * self.b * dt1)
    }

    /// Speed extrema over the window: `(min, max)`.
    ///
    /// Speed is quadratic, so the extrema are at the endpoints or at the
    /// single stationary point of `v`.
    pub fn speed_range(&self) -> (f64, f64) {
        let (_, v1, _) = self.eval_unchecked(self.t_start);
        let (_, v2, _) = self.eval_unchecked(self.t_end);
        let (mut lo, mut hi) = if v1 <= v2 { (v1, v2) } else { (v2, v1) };
        if self.a != 0.0 {
            let t_v = -self.b / self.a;
            if t_v > self.t_start && t_v < self.t_end {
                let (_, v, _) = self.eval_unchecked(t_v);
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        (lo, hi)
    }

    /// Control extrema over the window: `(min, max)`. Control is affine, so
    /// these sit at the endpoints.
    pub fn control_range(&self) -> (f64, f64) {
        let u1 = self.a * self.t_start + self.b;
        let u2 = self.a * self.t_end + self.b;
        if u1 <= u2 {
            (u1, u2)
        } else {
            (u2, u1)
        }
    }
}
