//! Crisp, interval and Boolean fusion functions.
//!
//! Every function takes an [`OpCounters`] owned by the caller and records the
//! comparisons, additions and divisions it performs on reading values.
//! Counters are per call, so concurrent fusion calls only need distinct
//! counter instances.

mod boolean;
mod counters;
mod crisp;
mod interval;
mod overlap;
pub(crate) mod select;

pub use boolean::{boolean_fuse, parse_bits, BooleanRule, TieRule, TruthTable};
pub use counters::OpCounters;
pub use crisp::{fuse_crisp, trimmed_midpoint_fuse, CrispKind, MedianRule};
pub use interval::{
    marzullo, schmid_schossmaier, to_crisp, to_interval, Interval, Reading, ReadingPayload,
    Tolerance,
};
pub use overlap::{n_function, omega_fuse, overlap_profile, OverlapProfile, Region, RegionShape};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FusionError {
    #[error("fusion input is empty")]
    EmptyInput,
    #[error("invalid interval [{lo}, {hi}]: lower edge must not exceed upper edge")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid tolerance (left {left}, right {right}): both sides must be finite and >= 0")]
    InvalidTolerance { left: f64, right: f64 },
    #[error("fault bound f = {f} is not below the number of inputs n = {n}")]
    InvalidFaultBound { f: usize, n: usize },
    #[error("no point is covered by at least {required} of the {n} intervals")]
    NoIntersection { required: usize, n: usize },
    #[error("estimate is empty: lower edge {lo} exceeds upper edge {hi}")]
    EmptyEstimate { lo: f64, hi: f64 },
    #[error("Boolean rule does not cover {arity} input bits")]
    IncompleteRule { arity: usize },
}

impl FusionError {
    /// Stable diagnostic name, used by the command-line front end.
    pub fn name(&self) -> &'static str {
        match self {
            FusionError::EmptyInput => "EmptyInput",
            FusionError::InvalidInterval { .. } => "InvalidInterval",
            FusionError::InvalidTolerance { .. } => "InvalidTolerance",
            FusionError::InvalidFaultBound { .. } => "InvalidFaultBound",
            FusionError::NoIntersection { .. } => "NoIntersection",
            FusionError::EmptyEstimate { .. } => "EmptyEstimate",
            FusionError::IncompleteRule { .. } => "IncompleteRule",
        }
    }
}

/// Checks `n >= 1` and `0 <= f < n`.
pub(crate) fn check_fault_bound(n: usize, f: usize) -> Result<(), FusionError> {
    if n == 0 {
        return Err(FusionError::EmptyInput);
    }
    if f >= n {
        return Err(FusionError::InvalidFaultBound { f, n });
    }
    Ok(())
}
