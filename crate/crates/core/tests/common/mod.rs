//! Reference implementations used as test oracles. They share no code with
//! the library routines they check.
#![allow(dead_code)]

use wsnfuse_core::fusion::Interval;

/// Number of intervals containing `x` (closed on both ends).
pub fn coverage(intervals: &[Interval], x: f64) -> usize {
    intervals.iter().filter(|iv| iv.lo() <= x && x <= iv.hi()).count()
}

/// Every region induced by the sorted distinct endpoints, represented by a
/// probe point: each endpoint itself and the midpoint of each gap.
pub fn region_probes(intervals: &[Interval]) -> Vec<f64> {
    let mut points: Vec<f64> = intervals.iter().flat_map(|iv| [iv.lo(), iv.hi()]).collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    let mut probes = Vec::with_capacity(2 * points.len());
    for (i, &p) in points.iter().enumerate() {
        probes.push(p);
        if let Some(&next) = points.get(i + 1) {
            probes.push(p + (next - p) / 2.0);
        }
    }
    probes
}

/// Brute-force M-function: hull of all probes covered by at least `n - f`
/// intervals, or `None` when no region qualifies.
pub fn brute_force_marzullo(intervals: &[Interval], f: usize) -> Option<(f64, f64)> {
    let need = intervals.len() - f;
    let hits: Vec<f64> = region_probes(intervals)
        .into_iter()
        .filter(|&x| coverage(intervals, x) >= need)
        .collect();
    let lo = hits.iter().copied().reduce(f64::min)?;
    let hi = hits.iter().copied().reduce(f64::max)?;
    Some((lo, hi))
}

/// S-function by full sorting: (f+1)-th largest left edge and (f+1)-th
/// smallest right edge.
pub fn sorted_schmid_schossmaier(intervals: &[Interval], f: usize) -> (f64, f64) {
    let mut lows: Vec<f64> = intervals.iter().map(|iv| iv.lo()).collect();
    let mut highs: Vec<f64> = intervals.iter().map(|iv| iv.hi()).collect();
    lows.sort_by(|a, b| b.total_cmp(a));
    highs.sort_by(f64::total_cmp);
    (lows[f], highs[f])
}

/// Shannon entropy in bits of `degree / total degree`, written out term by term.
pub fn degree_entropy(degrees: &[u32]) -> f64 {
    let total: f64 = degrees.iter().map(|&d| d as f64).sum();
    let mut h = 0.0;
    for &d in degrees {
        if d > 0 {
            let p = d as f64 / total;
            h -= p * p.log2();
        }
    }
    h
}

/// Tiny deterministic generator (SplitMix64) so test instances do not
/// depend on the library's own generators.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Random intervals on a coarse integer grid so shared and touching
/// endpoints are common.
pub fn grid_intervals(rng: &mut SplitMix, n: usize) -> Vec<Interval> {
    (0..n)
        .map(|_| {
            let a = rng.below(21) as f64;
            let w = rng.below(8) as f64;
            Interval::new(a, a + w).unwrap()
        })
        .collect()
}
