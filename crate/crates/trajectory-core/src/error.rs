//! Error and result types shared across the workspace.

use thiserror::Error;

/// Errors produced by trajectory construction, solving, and validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input values violate a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Evaluation time lies outside an arc's or trajectory's time window.
    #[error("time {t} s outside window [{start} s, {end} s]")]
    OutsideWindow { t: f64, start: f64, end: f64 },

    /// No trajectory satisfies the boundary conditions under the limits.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A case construction produced junctions or multipliers inconsistent
    /// with its own assumptions. On feasible inputs this indicates a bug in
    /// case selection, not a property of the instance, so callers should
    /// treat it as an internal error rather than retrying.
    #[error("inconsistent case construction: {0}")]
    InconsistentCase(String),

    /// A search found no candidate satisfying the constraints.
    #[error("empty feasible set: {0}")]
    EmptyFeasibleSet(String),

    /// An iterative solve stopped before reaching its tolerances.
    #[error("did not converge: {0}")]
    NonConverged(String),
}

pub type Result<T> = std::result::Result<T, Error>;
