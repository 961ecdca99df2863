//! Exhaustive labelled-tree enumeration through Prüfer sequences.

use std::collections::HashMap;

use serde::Serialize;

use super::{entropy_of_degrees, TopologyError};
use crate::exec::Execution;

/// Largest `n` accepted by [`extremal_tree_check`] (`9^7` ≈ 4.8M trees).
pub const MAX_ENUMERATION_N: usize = 9;

const CHUNK: u64 = 4096;

/// Decodes a Prüfer sequence over labels `0..n` (`n = seq.len() + 2`) into
/// the `n - 1` edges of the labelled tree it encodes.
///
/// Panics if a label is out of range.
pub fn prufer_decode(seq: &[u32]) -> Vec<(u32, u32)> {
    let mut degree = Vec::new();
    let mut edges = Vec::new();
    decode_into(seq, &mut degree, &mut edges);
    edges
}

fn decode_into(seq: &[u32], degree: &mut Vec<u32>, edges: &mut Vec<(u32, u32)>) {
    let n = seq.len() + 2;
    degree.clear();
    degree.resize(n, 1);
    edges.clear();
    for &v in seq {
        assert!((v as usize) < n, "label {v} out of range for {n} vertices");
        degree[v as usize] += 1;
    }
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a tree has a leaf");
    let mut leaf = ptr;
    for &v in seq {
        let v = v as usize;
        edges.push((leaf as u32, v as u32));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf as u32, (n - 1) as u32));
}

/// One tree shape, identified by its degree multiset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeEntry {
    /// Degrees in descending order.
    pub degrees: Vec<u32>,
    pub entropy: f64,
    /// Number of labelled trees with this degree multiset.
    pub labeled_count: u64,
    pub is_path: bool,
    pub is_star: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub labeled_trees: u64,
    /// Shapes by descending entropy; ties by degree sequence.
    pub ranking: Vec<ShapeEntry>,
    pub path_entropy: f64,
    pub star_entropy: f64,
    /// The path attains the maximum entropy over all enumerated trees.
    pub path_is_max: bool,
    /// The star attains the minimum entropy over all enumerated trees.
    pub star_is_min: bool,
}

impl ExtremalReport {
    pub fn max_shape(&self) -> &ShapeEntry {
        &self.ranking[0]
    }

    pub fn min_shape(&self) -> &ShapeEntry {
        self.ranking.last().expect("at least one tree")
    }
}

pub fn extremal_tree_check(n: usize) -> Result<ExtremalReport, TopologyError> {
    extremal_tree_check_with(n, Execution::default())
}

/// Enumerates every labelled tree on `n` vertices and ranks the shapes by
/// degree-based entropy.
pub fn extremal_tree_check_with(n: usize, exec: Execution) -> Result<ExtremalReport, TopologyError> {
    if !(2..=MAX_ENUMERATION_N).contains(&n) {
        return Err(TopologyError::TooLarge { n, max: MAX_ENUMERATION_N });
    }
    let total = (n as u64).pow(n as u32 - 2);
    let chunks = total.div_ceil(CHUNK);
    let census = exec.map_reduce(
        chunks,
        HashMap::new(),
        |chunk| {
            let start = chunk * CHUNK;
            count_shapes(n, start..(start + CHUNK).min(total))
        },
        merge,
    );

    let path_entropy = entropy_of_degrees(&path_degrees(n));
    let star_entropy = entropy_of_degrees(&star_degrees(n));
    let mut ranking: Vec<ShapeEntry> = census
        .into_iter()
        .map(|(degrees, labeled_count)| ShapeEntry {
            entropy: entropy_of_degrees(&degrees),
            is_path: degrees.iter().all(|&d| d <= 2),
            is_star: degrees[0] as usize == n - 1,
            degrees,
            labeled_count,
        })
        .collect();
    ranking.sort_by(|a, b| b.entropy.total_cmp(&a.entropy).then_with(|| a.degrees.cmp(&b.degrees)));

    let labeled_trees = ranking.iter().map(|s| s.labeled_count).sum();
    let max = ranking[0].entropy;
    let min = ranking.last().map(|s| s.entropy).unwrap_or(max);
    let has_path = ranking.iter().any(|s| s.is_path);
    let has_star = ranking.iter().any(|s| s.is_star);
    Ok(ExtremalReport {
        n,
        labeled_trees,
        path_is_max: has_path && path_entropy >= max,
        star_is_min: has_star && star_entropy <= min,
        ranking,
        path_entropy,
        star_entropy,
    })
}

fn count_shapes(n: usize, indices: std::ops::Range<u64>) -> HashMap<Vec<u32>, u64> {
    let mut census: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut seq = vec![0u32; n - 2];
    let (mut degree, mut edges) = (Vec::new(), Vec::new());
    let mut key = vec![0u32; n];
    for index in indices {
        let mut rest = index;
        for slot in seq.iter_mut().rev() {
            *slot = (rest % n as u64) as u32;
            rest /= n as u64;
        }
        decode_into(&seq, &mut degree, &mut edges);
        key.iter_mut().for_each(|d| *d = 0);
        for &(a, b) in &edges {
            key[a as usize] += 1;
            key[b as usize] += 1;
        }
        key.sort_unstable_by(|a, b| b.cmp(a));
        match census.get_mut(key.as_slice()) {
            Some(c) => *c += 1,
            None => {
                census.insert(key.clone(), 1);
            }
        }
    }
    census
}

fn merge(mut a: HashMap<Vec<u32>, u64>, b: HashMap<Vec<u32>, u64>) -> HashMap<Vec<u32>, u64> {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn path_degrees(n: usize) -> Vec<u32> {
    (0..n).map(|i| if i == 0 || i == n - 1 { 1 } else { 2 }).collect()
}

fn star_degrees(n: usize) -> Vec<u32> {
    (0..n).map(|i| if i == 0 { n as u32 - 1 } else { 1 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_known_sequences() {
        // Sequence [3, 3, 3] on 5 vertices is the star centred at 3.
        let mut e = prufer_decode(&[3, 3, 3]);
        e.sort();
        assert_eq!(e, vec![(0, 3), (1, 3), (2, 3), (3, 4)]);
        assert_eq!(prufer_decode(&[]), vec![(0, 1)]);
        // Path 0-2-1-3.
        let mut e = prufer_decode(&[2, 1]);
        e.iter_mut().for_each(|p| *p = (p.0.min(p.1), p.0.max(p.1)));
        e.sort();
        assert_eq!(e, vec![(0, 2), (1, 2), (1, 3)]);
    }

    #[test]
    fn cayley_counts_and_shapes() {
        for n in 2..=7usize {
            let r = extremal_tree_check_with(n, Execution::Sequential).unwrap();
            assert_eq!(r.labeled_trees, (n as u64).pow(n as u32 - 2));
            assert!(r.path_is_max && r.star_is_min, "n = {n}");
            let star = r.ranking.iter().find(|s| s.is_star).unwrap();
            let path = r.ranking.iter().find(|s| s.is_path).unwrap();
            if n >= 3 {
                assert_eq!(star.labeled_count, n as u64);
                let half_factorial: u64 = (3..=n as u64).product();
                assert_eq!(path.labeled_count, half_factorial);
            }
        }
    }

    #[test]
    fn four_vertices() {
        let r = extremal_tree_check(4).unwrap();
        assert_eq!(r.ranking.len(), 2);
        assert!(r.max_shape().is_path);
        assert!(r.min_shape().is_star);
        assert!((r.max_shape().entropy - 1.918).abs() <= 0.001);
        assert!((r.min_shape().entropy - 1.7925).abs() <= 0.0005);
    }

    #[test]
    fn three_vertices_single_shape() {
        let r = extremal_tree_check(3).unwrap();
        assert_eq!(r.ranking.len(), 1);
        assert!(r.max_shape().is_path && r.max_shape().is_star);
        assert_eq!(r.path_entropy, r.star_entropy);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = extremal_tree_check_with(7, Execution::Sequential).unwrap();
        let b = extremal_tree_check_with(7, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bounds() {
        assert_eq!(extremal_tree_check(1), Err(TopologyError::TooLarge { n: 1, max: 9 }));
        assert_eq!(extremal_tree_check(10), Err(TopologyError::TooLarge { n: 10, max: 9 }));
    }
}
