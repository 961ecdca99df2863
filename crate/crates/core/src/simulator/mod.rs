//! Synchronous in-network aggregation.
//!
//! Readings travel from sensors towards the base station along the
//! breadth-first routing tree of a [`Topology`]. Every tick, each pending
//! message crosses one link; a node emits only after all of its children
//! have reported. Nodes spend no time computing, so the end-to-end delay is
//! the number of ticks times the link delay.
//!
//! Decomposable functions (min, max, mean as a sum/count pair, count-based
//! Boolean rules as a ones/total pair) are merged at every cluster head.
//! Everything else ships raw readings to the base station.

mod instance;
mod readings;
mod spec;

pub use instance::{random_instance, random_readings, random_topology, RandomInstance};
pub use readings::{format_readings, parse_readings};
pub use spec::{fuse_readings, FusionFunction, FusionSpec, PayloadFamily};

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fusion::{FusionError, OpCounters, Reading, ReadingPayload};
use crate::topology::{DelayModel, Topology, TopologyError};
use crate::NodeId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("sensor {0} has no reading")]
    IncompleteReadings(NodeId),
    #[error("node {0} is not a sensing node in this topology")]
    UnexpectedReading(NodeId),
    #[error("sensor {0} has more than one reading")]
    DuplicateReading(NodeId),
    #[error("sensor {sensor} reported a {found} reading but the fusion function takes {expected} readings")]
    TypeMismatch { sensor: NodeId, expected: PayloadFamily, found: &'static str },
    #[error("invalid fusion spec: {0}")]
    InvalidSpec(String),
    #[error("{0} cannot be merged at cluster heads")]
    NotDecomposable(FusionFunction),
    #[error("invalid random instance: {0}")]
    InvalidInstance(String),
    #[error("readings line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl SimError {
    pub fn name(&self) -> &'static str {
        match self {
            SimError::Fusion(e) => e.name(),
            SimError::Topology(e) => e.name(),
            SimError::IncompleteReadings(_) => "IncompleteReadings",
            SimError::UnexpectedReading(_) => "UnexpectedReading",
            SimError::DuplicateReading(_) => "DuplicateReading",
            SimError::TypeMismatch { .. } => "TypeMismatch",
            SimError::InvalidSpec(_) => "InvalidSpec",
            SimError::NotDecomposable(_) => "NotDecomposable",
            SimError::InvalidInstance(_) => "InvalidInstance",
            SimError::Parse { .. } => "Parse",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregationMode {
    Hierarchical,
    Centralized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeAction {
    ForwardRaw,
    CombinePartial,
    Finalize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregationPlan {
    pub mode: AggregationMode,
    /// One action per node, in ascending id order.
    pub actions: Vec<(NodeId, NodeAction)>,
}

/// Which nodes take a reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sensing {
    /// Every node except the base station, cluster heads included.
    #[default]
    AllNodes,
    /// Only the leaves of the routing tree.
    LeavesOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SimOptions {
    pub sensing: Sensing,
    /// Forces an aggregation mode instead of the planner's choice.
    pub mode: Option<AggregationMode>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub fused: ReadingPayload,
    pub total_delay: f64,
    pub counters: OpCounters,
    pub plan: AggregationPlan,
    pub hops_on_critical_path: u32,
    pub readings_fused: usize,
}

/// Hierarchical for decomposable functions, centralized otherwise.
pub fn plan_aggregation(topo: &Topology, spec: &FusionSpec) -> AggregationPlan {
    let mode = if spec.is_decomposable() {
        AggregationMode::Hierarchical
    } else {
        AggregationMode::Centralized
    };
    plan_with_mode(topo, mode)
}

pub fn plan_with_mode(topo: &Topology, mode: AggregationMode) -> AggregationPlan {
    let relay = match mode {
        AggregationMode::Hierarchical => NodeAction::CombinePartial,
        AggregationMode::Centralized => NodeAction::ForwardRaw,
    };
    let base = topo.base_index();
    let actions = topo
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, r)| (r.id, if i == base { NodeAction::Finalize } else { relay }))
        .collect();
    AggregationPlan { mode, actions }
}

/// Ids of the nodes expected to report, in ascending order.
pub fn sensing_nodes(topo: &Topology, sensing: Sensing) -> Vec<NodeId> {
    let tree = topo.routing_tree();
    topo.nodes()
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            i != topo.base_index()
                && (sensing == Sensing::AllNodes || tree.children[i].is_empty())
        })
        .map(|(_, r)| r.id)
        .collect()
}

pub fn simulate(
    topo: &Topology,
    readings: &[Reading],
    spec: &FusionSpec,
    model: DelayModel,
) -> Result<SimReport, SimError> {
    simulate_with(topo, readings, spec, model, SimOptions::default())
}

/// Message contents travelling one hop towards the base station.
#[derive(Debug, Clone)]
enum Partial {
    Min(f64),
    Max(f64),
    Sum { sum: f64, count: u64 },
    Votes { ones: u64, total: u64 },
    Raw(Vec<(NodeId, ReadingPayload)>),
}

impl Partial {
    fn single(spec: &FusionSpec, mode: AggregationMode, sensor: NodeId, p: ReadingPayload) -> Self {
        if mode == AggregationMode::Centralized {
            return Partial::Raw(vec![(sensor, p)]);
        }
        match (spec.function, p) {
            (FusionFunction::Min, ReadingPayload::Crisp(v)) => Partial::Min(v),
            (FusionFunction::Max, ReadingPayload::Crisp(v)) => Partial::Max(v),
            (FusionFunction::Mean, ReadingPayload::Crisp(v)) => Partial::Sum { sum: v, count: 1 },
            (FusionFunction::Boolean, ReadingPayload::Bit(b)) => {
                Partial::Votes { ones: b as u64, total: 1 }
            }
            _ => unreachable!("hierarchical plans are only built for decomposable functions"),
        }
    }

    /// Merges `other` into `self`, counting the work on reading values.
    fn absorb(&mut self, other: Partial, counters: &mut OpCounters) {
        match (self, other) {
            (Partial::Min(a), Partial::Min(b)) => {
                if counters.cmp(b, *a) == Ordering::Less {
                    *a = b;
                }
            }
            (Partial::Max(a), Partial::Max(b)) => {
                if counters.cmp(b, *a) == Ordering::Greater {
                    *a = b;
                }
            }
            (Partial::Sum { sum, count }, Partial::Sum { sum: s, count: c }) => {
                *sum = counters.add(*sum, s);
                *count += c;
            }
            (Partial::Votes { ones, total }, Partial::Votes { ones: o, total: t }) => {
                counters.additions += 1;
                *ones += o;
                *total += t;
            }
            (Partial::Raw(a), Partial::Raw(b)) => a.extend(b),
            _ => unreachable!("partials of one run share a shape"),
        }
    }
}

/// Runs one aggregation round.
pub fn simulate_with(
    topo: &Topology,
    readings: &[Reading],
    spec: &FusionSpec,
    model: DelayModel,
    options: SimOptions,
) -> Result<SimReport, SimError> {
    spec.validate()?;
    let plan = match options.mode {
        Some(AggregationMode::Hierarchical) if !spec.is_decomposable() => {
            return Err(SimError::NotDecomposable(spec.function))
        }
        Some(mode) => plan_with_mode(topo, mode),
        None => plan_aggregation(topo, spec),
    };
    let mode = plan.mode;

    // Attach each reading to its node.
    let n = topo.node_count();
    let sensing = sensing_nodes(topo, options.sensing);
    let mut own: Vec<Option<ReadingPayload>> = vec![None; n];
    for r in readings {
        let i = topo.index_of(r.sensor).ok_or(SimError::UnexpectedReading(r.sensor))?;
        if sensing.binary_search(&r.sensor).is_err() {
            return Err(SimError::UnexpectedReading(r.sensor));
        }
        if own[i].is_some() {
            return Err(SimError::DuplicateReading(r.sensor));
        }
        own[i] = Some(spec.coerce(r)?);
    }
    if let Some(&missing) =
        sensing.iter().find(|&&id| own[topo.index_of(id).expect("sensing node exists")].is_none())
    {
        return Err(SimError::IncompleteReadings(missing));
    }

    let tree = topo.routing_tree();
    let base = topo.base_index();
    let mut counters = OpCounters::new();
    let mut waiting: Vec<usize> = tree.children.iter().map(Vec::len).collect();
    let mut inbox: Vec<Option<Partial>> = vec![None; n];

    // Combines a node's own reading with everything it received.
    let mut settle = |i: usize, inbox: &mut Vec<Option<Partial>>, counters: &mut OpCounters| {
        let mine = own[i].take().map(|p| Partial::single(spec, mode, topo.nodes()[i].id, p));
        match (mine, inbox[i].take()) {
            (Some(mut a), Some(b)) => {
                a.absorb(b, counters);
                Some(a)
            }
            (a, b) => a.or(b),
        }
    };

    let mut in_flight: Vec<(usize, Partial)> = Vec::new();
    let leaves: Vec<usize> = (0..n).filter(|&i| i != base && waiting[i] == 0).collect();
    for i in leaves {
        if let Some(p) = settle(i, &mut inbox, &mut counters) {
            in_flight.push((tree.parent[i].expect("non-root"), p));
        }
    }

    let mut tick = 0u32;
    while !in_flight.is_empty() {
        tick += 1;
        let mut ready = Vec::new();
        for (to, partial) in std::mem::take(&mut in_flight) {
            match inbox[to].as_mut() {
                Some(acc) => acc.absorb(partial, &mut counters),
                None => inbox[to] = Some(partial),
            }
            waiting[to] -= 1;
            if waiting[to] == 0 && to != base {
                ready.push(to);
            }
        }
        ready.sort_unstable();
        for i in ready {
            if let Some(p) = settle(i, &mut inbox, &mut counters) {
                in_flight.push((tree.parent[i].expect("non-root"), p));
            }
        }
    }

    let collected = inbox[base].take().ok_or(FusionError::EmptyInput)?;
    let fused = finalize(collected, spec, &mut counters)?;
    Ok(SimReport {
        fused,
        total_delay: model.over(tick),
        counters,
        plan,
        hops_on_critical_path: tick,
        readings_fused: sensing.len(),
    })
}

fn finalize(
    collected: Partial,
    spec: &FusionSpec,
    counters: &mut OpCounters,
) -> Result<ReadingPayload, SimError> {
    Ok(match collected {
        Partial::Min(v) | Partial::Max(v) => ReadingPayload::Crisp(v),
        Partial::Sum { sum, count } => ReadingPayload::Crisp(counters.div(sum, count as f64)),
        Partial::Votes { ones, total } => {
            let bit = spec
                .rule()
                .decide_counts(ones as usize, total as usize, counters)
                .expect("hierarchical Boolean rules are count based")?;
            ReadingPayload::Bit(bit)
        }
        Partial::Raw(mut raw) => {
            raw.sort_by_key(|&(id, _)| id);
            let payloads: Vec<ReadingPayload> = raw.into_iter().map(|(_, p)| p).collect();
            spec::fuse_payloads(&payloads, spec, counters)?
        }
    })
}
