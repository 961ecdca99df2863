//! Fault-tolerant sensor fusion and sensor-network architecture analysis.
//!
//! The crate is split into three layers:
//!
//! * [`fusion`]: crisp, interval and Boolean fusion functions, all
//!   instrumented with [`fusion::OpCounters`].
//! * [`topology`]: candidate network architectures (hub-and-spoke, line,
//!   ring, clique, perfect q-ary trees, custom edge lists), hop delay and
//!   degree-based graph entropy.
//! * [`simulator`]: synchronous in-network aggregation from sensors through
//!   cluster heads to the base station.
//!
//! Batch workloads (tree enumeration, seeded sweeps) go through [`exec`],
//! which uses rayon when the `parallel` feature is enabled and falls back to
//! a plain sequential loop otherwise.

pub mod exec;
pub mod fusion;
pub mod simulator;
pub mod topology;

pub use fusion::{FusionError, Interval, OpCounters, Reading, ReadingPayload, Tolerance};
pub use simulator::{FusionSpec, SimError, SimReport};
pub use topology::{DelayModel, Topology, TopologyError, TopologyKind};

use std::fmt;

use serde::{Deserialize, Serialize};

/// Identifier of a network node; sensor readings are keyed by the id of the
/// node that produced them.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}
