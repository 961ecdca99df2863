//! Seeded generators for fusion inputs and network layouts.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{sensing_nodes, PayloadFamily, Sensing, SimError};
use crate::fusion::{Interval, Reading};
use crate::topology::Topology;
use crate::NodeId;

/// Intervals of which at most `fault_count` miss the hidden `truth`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomInstance {
    pub intervals: Vec<Interval>,
    pub truth: f64,
    /// Positions in `intervals` that were generated as faulty.
    pub faulty: Vec<usize>,
}

/// `n - fault_count` intervals containing a hidden value, plus `fault_count`
/// intervals centred between one and four spreads away from it, in random
/// order. The same seed always yields the same instance.
pub fn random_instance(
    seed: u64,
    n: usize,
    fault_count: usize,
    spread: f64,
) -> Result<RandomInstance, SimError> {
    if fault_count >= n {
        return Err(SimError::InvalidInstance(format!(
            "fault_count {fault_count} must be below n = {n}"
        )));
    }
    if !(spread.is_finite() && spread > 0.0) {
        return Err(SimError::InvalidInstance(format!("spread must be > 0, got {spread}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let truth: f64 = rng.gen_range(-100.0..100.0);
    let mut tagged: Vec<(Interval, bool)> = Vec::with_capacity(n);
    for _ in 0..n - fault_count {
        let lo = truth - rng.gen_range(0.0..=spread);
        let hi = truth + rng.gen_range(0.0..=spread);
        tagged.push((Interval::new(lo, hi).expect("lo <= truth <= hi"), false));
    }
    for _ in 0..fault_count {
        let offset = rng.gen_range(spread..=4.0 * spread);
        let centre = if rng.gen_bool(0.5) { truth + offset } else { truth - offset };
        let half = rng.gen_range(0.0..=spread);
        tagged.push((Interval::new(centre - half, centre + half).expect("ordered"), true));
    }
    tagged.shuffle(&mut rng);
    Ok(RandomInstance {
        faulty: tagged.iter().enumerate().filter(|(_, t)| t.1).map(|(i, _)| i).collect(),
        intervals: tagged.into_iter().map(|(iv, _)| iv).collect(),
        truth,
    })
}

/// Random connected graph on `n` nodes: a random recursive tree plus up to
/// `extra_edges` chords. The base station is a random node.
pub fn random_topology(seed: u64, n: usize, extra_edges: usize) -> Result<Topology, SimError> {
    if n == 0 {
        return Err(SimError::InvalidInstance("a topology needs at least one node".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<NodeId> = (0..n as u32).map(NodeId).collect();
    let mut edges: Vec<(NodeId, NodeId)> =
        (1..n).map(|i| (ids[rng.gen_range(0..i)], ids[i])).collect();
    if n >= 3 {
        for _ in 0..extra_edges {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            let e = (ids[a.min(b)], ids[a.max(b)]);
            if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
                edges.push(e);
            }
        }
    }
    let base = ids[rng.gen_range(0..n)];
    Ok(Topology::custom(ids, edges, base)?)
}

/// One reading of the requested family for every sensing node of `topo`.
/// Crisp values are uniform in `[-50, 50)`; intervals have width below 10.
pub fn random_readings(
    seed: u64,
    topo: &Topology,
    family: PayloadFamily,
    sensing: Sensing,
) -> Vec<Reading> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sensing_nodes(topo, sensing)
        .into_iter()
        .map(|id| match family {
            PayloadFamily::Crisp => Reading::crisp(id, rng.gen_range(-50.0..50.0)),
            PayloadFamily::Bit => Reading::bit(id, rng.gen_bool(0.5)),
            PayloadFamily::Interval => {
                let lo: f64 = rng.gen_range(-50.0..50.0);
                let hi = lo + rng.gen_range(0.0..10.0);
                Reading::interval(id, Interval::new(lo, hi).expect("ordered"))
            }
        })
        .collect()
}
