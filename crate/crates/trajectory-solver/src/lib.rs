//! Closed-form energy-minimal transit under speed and acceleration boxes.
//!
//! A vehicle covers a fixed distance in a fixed horizon while minimizing
//! `∫ u²/2 dt`, with its speed confined to `[vmin, vmax]`, its control to
//! `[umin, umax]`, and the terminal speed left free. The optimum is one of
//! seven arc chains, selected by [`classify`] and assembled by [`solve`]:
//! the box-free affine-control arc, a single binding bound on either side
//! (speed cruise or control saturation), or the coupled pair on either side.
//! Every assembled solution comes with reconstructed adjoints
//! ([`reconstruct_costates`]) and can be certified against the first-order
//! optimality conditions ([`validate_kkt`]).

mod classifier;
mod constrained;
mod costates;
mod junctions;
mod kkt;
mod unconstrained;

pub use classifier::{
    activation_thresholds, classify, coupled_umax_given_vmax, coupled_umin_given_vmin,
    coupled_vmax_given_umax, coupled_vmin_given_umin, exclusion_side, umax_active, umin_active,
    vmax_active, vmin_active, ActivationThresholds, ExclusionSide,
};
pub use constrained::{
    solve, solve_case0, solve_case1, solve_case2, solve_case3, solve_case4, solve_case5,
    solve_case6, Solution, COLLAPSE_TOL,
};
pub use costates::reconstruct_costates;
pub use junctions::{
    junction_umax, junction_umin, junction_vmax, junction_vmin, junctions_case3, junctions_case6,
};
pub use kkt::{
    validate_kkt, CheckResult, ValidationReport, COMPLEMENTARITY_TOL, HAMILTONIAN_TOL,
    KKT_SAMPLE_DT, NONNEGATIVITY_TOL, STATIONARITY_TOL, TERMINAL_COSTATE_TOL,
};
pub use unconstrained::{
    classify_slope, control_slope, solve_unconstrained, unconstrained_terminal_speed, SlopeClass,
    FLAT_REL_TOL,
};
