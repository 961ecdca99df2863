//! Degree-based graph entropy.

use serde::{Deserialize, Serialize};

use super::{Topology, TopologyError};
use crate::NodeId;

/// `p_i = degree(i) / total degree` over the nodes of a graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreePmf {
    pub probs: Vec<(NodeId, f64)>,
}

impl DegreePmf {
    /// Shannon entropy in bits; zero-probability terms contribute nothing.
    pub fn entropy(&self) -> f64 {
        shannon_bits(self.probs.iter().map(|&(_, p)| p))
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().map(|&(_, p)| p).sum()
    }
}

fn shannon_bits(probs: impl Iterator<Item = f64>) -> f64 {
    -probs.filter(|&p| p > 0.0).map(|p| p * p.log2()).sum::<f64>()
}

pub fn degree_pmf(topo: &Topology) -> Result<DegreePmf, TopologyError> {
    if topo.edges().is_empty() {
        return Err(TopologyError::NoEdges);
    }
    let total = 2.0 * topo.edges().len() as f64;
    let probs = topo
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, r)| (r.id, topo.degree(i) as f64 / total))
        .collect();
    Ok(DegreePmf { probs })
}

pub fn graph_entropy(topo: &Topology) -> Result<f64, TopologyError> {
    degree_pmf(topo).map(|pmf| pmf.entropy())
}

/// Entropy in bits of the degree distribution of any degree sequence.
/// Returns 0 for an all-zero sequence.
pub fn entropy_of_degrees(degrees: &[u32]) -> f64 {
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    shannon_bits(degrees.iter().map(|&d| d as f64 / total))
}

/// Which node census of a balanced binary tree of depth `d` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BtreeFormula {
    /// One root of degree 2, `2^(d-1) - 1` nodes of degree 3 and `2^d`
    /// leaves, normalised by `x = 2 + 3(2^(d-1) - 1) + 2^d`. This census
    /// only matches a real tree at `d = 1`.
    AsStated,
    /// One root of degree 2, `2^d - 2` nodes of degree 3 and `2^d` leaves,
    /// normalised by `x = 2^(d+2) - 4`.
    Corrected,
}

/// Closed-form degree entropy of a perfect binary tree of depth `d`.
pub fn balanced_btree_entropy(d: u32, formula: BtreeFormula) -> Result<f64, TopologyError> {
    if d < 1 {
        return Err(TopologyError::InvalidDepth(d));
    }
    if d > 60 {
        return Err(TopologyError::TooLarge { n: d as usize, max: 60 });
    }
    let leaves = 2f64.powi(d as i32);
    let inner = match formula {
        BtreeFormula::AsStated => 2f64.powi(d as i32 - 1) - 1.0,
        BtreeFormula::Corrected => leaves - 2.0,
    };
    let x = 2.0 + 3.0 * inner + leaves;
    let term = |count: f64, degree: f64| {
        let p = degree / x;
        count * p * p.log2()
    };
    Ok(-(term(1.0, 2.0) + term(inner, 3.0) + term(leaves, 1.0)))
}
