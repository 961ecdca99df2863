//! JSON topology documents.
//!
//! ```json
//! {"kind": "qary_tree", "n": 6, "q": 2}
//! {"kind": "custom", "nodes": [0, 1, 2], "edges": [[0, 1], [1, 2]], "base_station": 0}
//! ```

use serde::{Deserialize, Serialize};

use super::{Topology, TopologyError, TopologyKind};
use crate::NodeId;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TopologyFile {
    HubSpoke { n: usize },
    Line { n: usize },
    Ring { n: usize },
    Clique { n: usize },
    QaryTree { n: usize, q: u32 },
    Custom { nodes: Vec<NodeId>, edges: Vec<(NodeId, NodeId)>, base_station: NodeId },
}

impl TopologyFile {
    pub fn parse(text: &str) -> Result<Self, TopologyError> {
        serde_json::from_str(text).map_err(|e| TopologyError::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<Topology, TopologyError> {
        match self {
            TopologyFile::HubSpoke { n } => Topology::build(TopologyKind::HubSpoke, *n, None),
            TopologyFile::Line { n } => Topology::build(TopologyKind::Line, *n, None),
            TopologyFile::Ring { n } => Topology::build(TopologyKind::Ring, *n, None),
            TopologyFile::Clique { n } => Topology::build(TopologyKind::Clique, *n, None),
            TopologyFile::QaryTree { n, q } => Topology::qary_tree(*n, *q),
            TopologyFile::Custom { nodes, edges, base_station } => {
                Topology::custom(nodes.clone(), edges.clone(), *base_station)
            }
        }
    }

    /// Explicit edge-list form of any topology.
    pub fn custom_from(topo: &Topology) -> Self {
        TopologyFile::Custom {
            nodes: topo.nodes().iter().map(|r| r.id).collect(),
            edges: topo.edges().to_vec(),
            base_station: topo.base_station(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("topology documents always serialise")
    }
}

impl std::str::FromStr for TopologyFile {
    type Err = TopologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
