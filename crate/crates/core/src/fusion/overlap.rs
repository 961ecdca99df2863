//! Overlap function ω(x) and the peak-selecting fusion functions built on it.

use std::cmp::Ordering;

use serde::Serialize;

use super::{check_fault_bound, FusionError, Interval, OpCounters};

/// Piecewise-constant coverage count of a set of closed intervals.
///
/// With distinct ascending breakpoints `b_0 < … < b_{k-1}`, `counts` holds
/// `2k - 1` entries: `counts[2i]` is the count at the point `b_i` and
/// `counts[2i + 1]` the count on the open segment `(b_i, b_{i+1})`. The count
/// is 0 outside `[b_0, b_{k-1}]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapProfile {
    breakpoints: Vec<f64>,
    counts: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionShape {
    Point,
    OpenSegment,
}

/// One maximal piece of the profile on which the count is constant by
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    pub lo: f64,
    pub hi: f64,
    pub shape: RegionShape,
    pub count: usize,
}

impl OverlapProfile {
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of intervals containing `x`.
    pub fn count_at(&self, x: f64) -> usize {
        match self.breakpoints.binary_search_by(|b| b.total_cmp(&x)) {
            Ok(i) => self.counts[2 * i],
            Err(0) => 0,
            Err(i) if i == self.breakpoints.len() => 0,
            Err(i) => self.counts[2 * i - 1],
        }
    }

    pub fn max_count(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    /// Regions left to right; consecutive regions are adjacent on the line.
    pub fn regions(&self) -> impl Iterator<Item = Region> + '_ {
        self.counts.iter().enumerate().map(move |(j, &count)| {
            let i = j / 2;
            if j % 2 == 0 {
                let b = self.breakpoints[i];
                Region { lo: b, hi: b, shape: RegionShape::Point, count }
            } else {
                Region {
                    lo: self.breakpoints[i],
                    hi: self.breakpoints[i + 1],
                    shape: RegionShape::OpenSegment,
                    count,
                }
            }
        })
    }

    /// Closures of the maximal connected sets on which `keep(count)` holds.
    fn components(&self, keep: impl Fn(usize) -> bool) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut current: Option<(f64, f64)> = None;
        for r in self.regions() {
            if keep(r.count) {
                current = Some(match current {
                    Some((lo, _)) => (lo, r.hi),
                    None => (r.lo, r.hi),
                });
            } else if let Some((lo, hi)) = current.take() {
                out.push(Interval::from_ordered(lo, hi));
            }
        }
        if let Some((lo, hi)) = current {
            out.push(Interval::from_ordered(lo, hi));
        }
        out
    }
}

/// Builds the coverage profile by sweeping the sorted left and right edges.
pub fn overlap_profile(
    intervals: &[Interval],
    counters: &mut OpCounters,
) -> Result<OverlapProfile, FusionError> {
    if intervals.is_empty() {
        return Err(FusionError::EmptyInput);
    }
    let mut lows: Vec<f64> = intervals.iter().map(|iv| iv.lo()).collect();
    let mut highs: Vec<f64> = intervals.iter().map(|iv| iv.hi()).collect();
    counters.sort(&mut lows);
    counters.sort(&mut highs);

    let mut breakpoints = Vec::with_capacity(2 * intervals.len());
    let (mut i, mut j) = (0, 0);
    while i < lows.len() || j < highs.len() {
        let next = match (lows.get(i), highs.get(j)) {
            (Some(&a), Some(&b)) => match counters.cmp(a, b) {
                Ordering::Greater => b,
                _ => a,
            },
            (Some(&a), None) => a,
            (None, Some(&b)) => b,
            (None, None) => unreachable!(),
        };
        while i < lows.len() && lows[i] == next {
            i += 1;
        }
        while j < highs.len() && highs[j] == next {
            j += 1;
        }
        breakpoints.push(next);
    }

    let mut counts = Vec::with_capacity(2 * breakpoints.len());
    let (mut opened, mut closed) = (0usize, 0usize);
    for (k, &b) in breakpoints.iter().enumerate() {
        while opened < lows.len() && lows[opened] == b {
            opened += 1;
        }
        // Intervals closing at `b` still cover `b`.
        counts.push(opened - closed);
        while closed < highs.len() && highs[closed] == b {
            closed += 1;
        }
        if k + 1 < breakpoints.len() {
            counts.push(opened - closed);
        }
    }
    Ok(OverlapProfile { breakpoints, counts })
}

/// Ω-function: the widest maximal region on which the overlap count reaches
/// its peak. Equal widths resolve to the leftmost region.
pub fn omega_fuse(intervals: &[Interval], counters: &mut OpCounters) -> Result<Interval, FusionError> {
    let profile = overlap_profile(intervals, counters)?;
    let peak = profile.max_count();
    let mut best: Option<Interval> = None;
    for candidate in profile.components(|c| c == peak) {
        match best {
            Some(b) if counters.cmp(candidate.width(), b.width()) != Ordering::Greater => {}
            _ => best = Some(candidate),
        }
    }
    Ok(best.expect("a non-empty profile has a peak region"))
}

/// N-function: hull of all points whose overlap count lies in `[n - f, n]`.
pub fn n_function(
    intervals: &[Interval],
    f: usize,
    counters: &mut OpCounters,
) -> Result<Interval, FusionError> {
    let n = intervals.len();
    check_fault_bound(n, f)?;
    let required = n - f;
    let profile = overlap_profile(intervals, counters)?;
    let qualifying = profile.components(|c| c >= required && c <= n);
    match (qualifying.first(), qualifying.last()) {
        (Some(first), Some(last)) => Ok(Interval::from_ordered(first.lo(), last.hi())),
        _ => Err(FusionError::NoIntersection { required, n }),
    }
}
