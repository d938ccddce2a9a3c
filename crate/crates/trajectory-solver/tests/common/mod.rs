//! Random feasible instances shared by the integration test targets.
//!
//! Draws follow one recipe so every target samples the same population:
//! boxes first, then a start speed strictly inside the speed box, then a
//! transit distance placed by linear interpolation strictly inside the
//! reachable envelope. Feasibility therefore holds by construction and the
//! draw never needs a solve to validate itself.

use rand::Rng;
use trajectory_core::{reachable_envelope, BoundaryConditions, ConstraintCase, Limits};
use trajectory_solver::classify;

/// One randomly drawn feasible problem.
#[derive(Debug, Clone, Copy)]
pub struct Instance {
    pub bc: BoundaryConditions,
    pub lim: Limits,
}

/// Draws a feasible instance.
///
/// Speed floors sit at zero in roughly four draws out of ten so both the
/// free-floor and positive-floor regimes stay represented. The distance
/// fraction sweeps 0.02..0.98 of the envelope, which reaches deep enough
/// into both ends to produce every constraint case with useful frequency.
pub fn random_feasible<R: Rng>(rng: &mut R) -> Instance {
    loop {
        let vmin = if rng.gen_bool(0.4) { 0.0 } else { rng.gen_range(0.5..8.0) };
        let vmax = vmin + rng.gen_range(4.0..22.0);
        let umax = rng.gen_range(0.4..4.0);
        let umin = -rng.gen_range(0.4..4.0);
        let lim = Limits::new(vmin, vmax, umin, umax).unwrap();

        let v0 = (vmin + rng.gen_range(0.02..0.98) * (vmax - vmin)).max(0.15);
        let t0 = rng.gen_range(0.0..20.0);
        let tm = t0 + rng.gen_range(4.0..14.0);

        // The envelope depends on the horizon and start speed only, so a
        // placeholder distance suffices to compute it.
        let probe = BoundaryConditions::new(t0, tm, 0.0, 1.0, v0).unwrap();
        let (d_lo, d_hi) = reachable_envelope(&probe, &lim);
        let l = d_lo + rng.gen_range(0.02..0.98) * (d_hi - d_lo);
        if l < 1.0 {
            continue;
        }
        let p0 = rng.gen_range(0.0..40.0);
        let bc = BoundaryConditions::new(t0, tm, p0, p0 + l, v0).unwrap();
        return Instance { bc, lim };
    }
}

/// Draws a feasible instance that classifies as `want`, by rejection.
///
/// Panics when the draw cap runs out, which would mean the generator's
/// distribution no longer reaches that case at a workable rate.
#[allow(dead_code)]
pub fn random_case<R: Rng>(rng: &mut R, want: ConstraintCase) -> Instance {
    for _ in 0..2_000_000 {
        let inst = random_feasible(rng);
        if classify(&inst.bc, &inst.lim) == Ok(want) {
            return inst;
        }
    }
    panic!("no {want:?} instance within the draw cap");
}

/// Canonical per-case instances, one per constraint case, with horizons of
/// exactly 10 s. The coupled fixtures place junctions well inside the
/// horizon so grid scans resolve them cleanly.
#[allow(dead_code)]
pub fn fixtures() -> [(Instance, ConstraintCase); 7] {
    let mk = |tm: f64, l: f64, v0: f64, lim: Limits| Instance {
        bc: BoundaryConditions::new(0.0, tm, 0.0, l, v0).unwrap(),
        lim,
    };
    let lim = |vmin, vmax, umin, umax| Limits::new(vmin, vmax, umin, umax).unwrap();
    [
        (mk(10.0, 200.0, 13.4, lim(0.0, 40.0, -9.0, 9.0)), ConstraintCase::Unconstrained),
        (mk(10.0, 210.0, 16.0, lim(0.0, 22.0, -9.0, 9.0)), ConstraintCase::VmaxOnly),
        (mk(10.0, 200.0, 13.4, lim(0.0, 40.0, -9.0, 1.35)), ConstraintCase::UmaxOnly),
        (mk(10.0, 195.0, 13.4, lim(0.0, 23.0, -9.0, 1.35)), ConstraintCase::UmaxAndVmax),
        (mk(10.0, 180.0, 26.0, lim(15.0, 40.0, -9.0, 9.0)), ConstraintCase::VminOnly),
        (mk(10.0, 170.0, 22.0, lim(0.0, 40.0, -1.2, 9.0)), ConstraintCase::UminOnly),
        (mk(10.0, 177.0, 26.0, lim(14.0, 40.0, -2.0, 9.0)), ConstraintCase::UminAndVmin),
    ]
}
