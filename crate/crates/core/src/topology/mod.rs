//! Candidate sensor-network architectures and their delay and entropy.
//!
//! Node counts follow the usual convention for each family: for
//! hub-and-spoke, line, ring and clique `n` is the total number of nodes
//! including the base station; for a perfect q-ary tree `n` counts the nodes
//! below the base station, so the tree has `n + 1` nodes.

mod delay;
mod entropy;
mod file;
mod prufer;

pub use delay::{measured_delay, predicted_delay, predicted_tree_delay, DelayModel};
pub use entropy::{
    balanced_btree_entropy, degree_pmf, entropy_of_degrees, graph_entropy, BtreeFormula,
    DegreePmf,
};
pub use file::TopologyFile;
pub use prufer::{extremal_tree_check, extremal_tree_check_with, prufer_decode, ExtremalReport, ShapeEntry};

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::NodeId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TopologyError {
    #[error("{kind} needs at least {min} nodes, got {n}")]
    InvalidSize { kind: TopologyKind, n: usize, min: usize },
    #[error("{n} nodes do not fill complete levels of a {q}-ary tree")]
    InvalidTreeSize { n: usize, q: u32 },
    #[error("branching factor must be at least 2, got {q}")]
    InvalidBranching { q: u32 },
    #[error("qary_tree requires a branching factor q")]
    MissingBranching,
    #[error("tree depth must be at least 1, got {0}")]
    InvalidDepth(u32),
    #[error("node {0} listed more than once")]
    DuplicateNode(NodeId),
    #[error("edge references unknown node {0}")]
    UnknownNode(NodeId),
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("graph is not connected: node {0} is unreachable from the base station")]
    Disconnected(NodeId),
    #[error("graph has no edges")]
    NoEdges,
    #[error("link delay must be finite and > 0, got {0}")]
    InvalidLinkDelay(f64),
    #[error("exhaustive enumeration supports 2 <= n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("invalid topology document: {0}")]
    Parse(String),
}

impl TopologyError {
    pub fn name(&self) -> &'static str {
        match self {
            TopologyError::InvalidSize { .. } => "InvalidSize",
            TopologyError::InvalidTreeSize { .. } => "InvalidTreeSize",
            TopologyError::InvalidBranching { .. } => "InvalidBranching",
            TopologyError::MissingBranching => "MissingBranching",
            TopologyError::InvalidDepth(_) => "InvalidDepth",
            TopologyError::DuplicateNode(_) => "DuplicateNode",
            TopologyError::UnknownNode(_) => "UnknownNode",
            TopologyError::SelfLoop(_) => "SelfLoop",
            TopologyError::DuplicateEdge(..) => "DuplicateEdge",
            TopologyError::Disconnected(_) => "Disconnected",
            TopologyError::NoEdges => "NoEdges",
            TopologyError::InvalidLinkDelay(_) => "InvalidLinkDelay",
            TopologyError::TooLarge { .. } => "TooLarge",
            TopologyError::Parse(_) => "Parse",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyKind {
    HubSpoke,
    Line,
    Ring,
    Clique,
    QaryTree,
    Custom,
}

impl TopologyKind {
    pub const ALL: [TopologyKind; 6] = [
        TopologyKind::HubSpoke,
        TopologyKind::Line,
        TopologyKind::Ring,
        TopologyKind::Clique,
        TopologyKind::QaryTree,
        TopologyKind::Custom,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TopologyKind::HubSpoke => "hub_spoke",
            TopologyKind::Line => "line",
            TopologyKind::Ring => "ring",
            TopologyKind::Clique => "clique",
            TopologyKind::QaryTree => "qary_tree",
            TopologyKind::Custom => "custom",
        }
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TopologyKind {
    type Err = TopologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TopologyKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| TopologyError::Parse(format!("unknown topology kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeRole {
    BaseStation,
    ClusterHead,
    Sensor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: NodeId,
    pub role: NodeRole,
}

/// Breadth-first routing tree rooted at the base station. Indices refer to
/// [`Topology::nodes`]. Neighbours are visited in ascending id order, so the
/// tree is a deterministic function of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingTree {
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<u32>,
    pub children: Vec<Vec<usize>>,
    /// Node indices in BFS order, base station first.
    pub order: Vec<usize>,
}

impl RoutingTree {
    pub fn height(&self) -> u32 {
        self.depth.iter().copied().max().unwrap_or(0)
    }
}

/// A connected, simple, undirected graph with a designated base station.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    kind: TopologyKind,
    branching: Option<u32>,
    nodes: Vec<NodeRecord>,
    edges: Vec<(NodeId, NodeId)>,
    base: usize,
    adjacency: Vec<Vec<usize>>,
    tree: RoutingTree,
}

impl Topology {
    /// Builds one of the standard families.
    pub fn build(kind: TopologyKind, n: usize, q: Option<u32>) -> Result<Self, TopologyError> {
        let min = match kind {
            TopologyKind::Ring => 3,
            _ => 1,
        };
        if n < min {
            return Err(TopologyError::InvalidSize { kind, n, min });
        }
        let id = |i: usize| NodeId(i as u32);
        let (count, edges): (usize, Vec<(NodeId, NodeId)>) = match kind {
            TopologyKind::HubSpoke => (n, (1..n).map(|i| (id(0), id(i))).collect()),
            TopologyKind::Line => (n, (1..n).map(|i| (id(i - 1), id(i))).collect()),
            TopologyKind::Ring => {
                let mut e: Vec<_> = (1..n).map(|i| (id(i - 1), id(i))).collect();
                e.push((id(0), id(n - 1)));
                (n, e)
            }
            TopologyKind::Clique => (
                n,
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (id(i), id(j)))).collect(),
            ),
            TopologyKind::QaryTree => {
                let q = q.ok_or(TopologyError::MissingBranching)?;
                if q < 2 {
                    return Err(TopologyError::InvalidBranching { q });
                }
                if perfect_tree_depth(n, q).is_none() {
                    return Err(TopologyError::InvalidTreeSize { n, q });
                }
                let q = q as usize;
                (n + 1, (1..=n).map(|i| (id((i - 1) / q), id(i))).collect())
            }
            TopologyKind::Custom => {
                return Err(TopologyError::Parse(
                    "custom topologies are built from an explicit edge list".into(),
                ))
            }
        };
        let nodes = (0..count).map(id).collect();
        let mut topo = Self::assemble(kind, nodes, edges, id(0))?;
        if kind == TopologyKind::QaryTree {
            topo.branching = q;
        }
        Ok(topo)
    }

    pub fn hub_spoke(n: usize) -> Result<Self, TopologyError> {
        Self::build(TopologyKind::HubSpoke, n, None)
    }

    pub fn line(n: usize) -> Result<Self, TopologyError> {
        Self::build(TopologyKind::Line, n, None)
    }

    pub fn ring(n: usize) -> Result<Self, TopologyError> {
        Self::build(TopologyKind::Ring, n, None)
    }

    pub fn clique(n: usize) -> Result<Self, TopologyError> {
        Self::build(TopologyKind::Clique, n, None)
    }

    /// Perfect `q`-ary tree with `n` nodes below the base station.
    pub fn qary_tree(n: usize, q: u32) -> Result<Self, TopologyError> {
        Self::build(TopologyKind::QaryTree, n, Some(q))
    }

    /// Arbitrary connected simple graph given by an edge list.
    pub fn custom(
        nodes: Vec<NodeId>,
        edges: Vec<(NodeId, NodeId)>,
        base_station: NodeId,
    ) -> Result<Self, TopologyError> {
        Self::assemble(TopologyKind::Custom, nodes, edges, base_station)
    }

    fn assemble(
        kind: TopologyKind,
        mut ids: Vec<NodeId>,
        edges: Vec<(NodeId, NodeId)>,
        base_station: NodeId,
    ) -> Result<Self, TopologyError> {
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(TopologyError::DuplicateNode(w[0]));
        }
        let index_of = |id: NodeId| {
            ids.binary_search(&id).map_err(|_| TopologyError::UnknownNode(id))
        };
        let base = index_of(base_station)?;

        let mut normalized = Vec::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); ids.len()];
        for (a, b) in edges {
            if a == b {
                return Err(TopologyError::SelfLoop(a));
            }
            let (ia, ib) = (index_of(a)?, index_of(b)?);
            adjacency[ia].push(ib);
            adjacency[ib].push(ia);
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(TopologyError::DuplicateEdge(w[0].0, w[0].1));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let tree = bfs_tree(&adjacency, base);
        if let Some(i) = tree.depth.iter().position(|&d| d == u32::MAX) {
            return Err(TopologyError::Disconnected(ids[i]));
        }
        let nodes = ids
            .iter()
            .enumerate()
            .map(|(i, &id)| NodeRecord {
                id,
                role: if i == base {
                    NodeRole::BaseStation
                } else if tree.children[i].is_empty() {
                    NodeRole::Sensor
                } else {
                    NodeRole::ClusterHead
                },
            })
            .collect();
        Ok(Self { kind, branching: None, nodes, edges: normalized, base, adjacency, tree })
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn branching(&self) -> Option<u32> {
        self.branching
    }

    /// Nodes in ascending id order.
    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    /// Edges as `(smaller id, larger id)` pairs in ascending order.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn base_station(&self) -> NodeId {
        self.nodes[self.base].id
    }

    pub fn base_index(&self) -> usize {
        self.base
    }

    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.nodes.binary_search_by_key(&id, |r| r.id).ok()
    }

    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adjacency[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adjacency[index].len()
    }

    /// Degrees in node order.
    pub fn degrees(&self) -> Vec<u32> {
        self.adjacency.iter().map(|a| a.len() as u32).collect()
    }

    pub fn routing_tree(&self) -> &RoutingTree {
        &self.tree
    }

    /// Largest hop distance from the base station to any node.
    pub fn eccentricity(&self) -> u32 {
        self.tree.height()
    }

    /// Same graph with every id passed through `relabel`. Relabelling must
    /// be injective.
    pub fn relabeled(&self, relabel: impl Fn(NodeId) -> NodeId) -> Result<Self, TopologyError> {
        let nodes = self.nodes.iter().map(|r| relabel(r.id)).collect();
        let edges = self.edges.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect();
        let mut out = Self::assemble(self.kind, nodes, edges, relabel(self.base_station()))?;
        out.branching = self.branching;
        Ok(out)
    }
}

fn bfs_tree(adjacency: &[Vec<usize>], root: usize) -> RoutingTree {
    let n = adjacency.len();
    let mut parent = vec![None; n];
    let mut depth = vec![u32::MAX; n];
    let mut children = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([root]);
    depth[root] = 0;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in &adjacency[u] {
            if depth[v] == u32::MAX {
                depth[v] = depth[u] + 1;
                parent[v] = Some(u);
                children[u].push(v);
                queue.push_back(v);
            }
        }
    }
    RoutingTree { parent, depth, children, order }
}

/// Depth `d >= 1` such that `n = q + q^2 + … + q^d`, if one exists.
pub fn perfect_tree_depth(n: usize, q: u32) -> Option<u32> {
    if q < 2 || n == 0 {
        return None;
    }
    let (mut filled, mut level, mut depth) = (0u128, 1u128, 0u32);
    while filled < n as u128 {
        level *= q as u128;
        filled += level;
        depth += 1;
    }
    (filled == n as u128).then_some(depth)
}
