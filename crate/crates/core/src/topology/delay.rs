use serde::{Deserialize, Serialize};

use super::{perfect_tree_depth, Topology, TopologyError, TopologyKind};

/// Uniform per-link delay, in time units per hop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayModel {
    link_delay: f64,
}

impl DelayModel {
    pub fn new(link_delay: f64) -> Result<Self, TopologyError> {
        if link_delay.is_finite() && link_delay > 0.0 {
            Ok(Self { link_delay })
        } else {
            Err(TopologyError::InvalidLinkDelay(link_delay))
        }
    }

    pub fn link_delay(&self) -> f64 {
        self.link_delay
    }

    pub fn over(&self, hops: u32) -> f64 {
        hops as f64 * self.link_delay
    }
}

impl Default for DelayModel {
    fn default() -> Self {
        Self { link_delay: 1.0 }
    }
}

/// Base-station eccentricity (BFS hops) times the link delay.
pub fn measured_delay(topo: &Topology, model: DelayModel) -> f64 {
    model.over(topo.eccentricity())
}

/// Closed-form depth of a perfect `q`-ary tree with `n` nodes below the
/// root: `log_q(q(n+1) - n) - 1`.
pub fn predicted_tree_delay(n: usize, q: u32) -> Result<u32, TopologyError> {
    if q < 2 {
        return Err(TopologyError::InvalidBranching { q });
    }
    let depth = perfect_tree_depth(n, q).ok_or(TopologyError::InvalidTreeSize { n, q })?;
    let q_f = q as f64;
    let n_f = n as f64;
    let hops = (q_f * (n_f + 1.0) - n_f).ln() / q_f.ln() - 1.0;
    let rounded = hops.round();
    assert!(
        (hops - rounded).abs() <= 1e-9,
        "closed form gave non-integral depth {hops} for n = {n}, q = {q}"
    );
    debug_assert_eq!(rounded as u32, depth);
    Ok(rounded as u32)
}

/// Hop count predicted for a standard family without building it, where a
/// closed form exists.
pub fn predicted_delay(
    kind: TopologyKind,
    n: usize,
    q: Option<u32>,
) -> Result<Option<u32>, TopologyError> {
    let single = |n: usize| u32::from(n >= 2);
    Ok(match kind {
        TopologyKind::HubSpoke | TopologyKind::Clique => Some(single(n)),
        TopologyKind::Line => Some(n.saturating_sub(1) as u32),
        TopologyKind::Ring => Some((n / 2) as u32),
        TopologyKind::QaryTree => {
            Some(predicted_tree_delay(n, q.ok_or(TopologyError::MissingBranching)?)?)
        }
        TopologyKind::Custom => None,
    })
}
