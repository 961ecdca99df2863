use serde::{Deserialize, Serialize};

use super::{check_fault_bound, select::select, FusionError, OpCounters};
use crate::NodeId;

/// Closed real interval `[lo, hi]`. Point intervals (`lo == hi`) are legal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[derive(Deserialize)]
struct RawInterval {
    lo: f64,
    hi: f64,
}

impl TryFrom<RawInterval> for Interval {
    type Error = FusionError;

    fn try_from(raw: RawInterval) -> Result<Self, Self::Error> {
        Interval::new(raw.lo, raw.hi)
    }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, FusionError> {
        // Rejects NaN edges as well.
        if lo <= hi {
            Ok(Self { lo, hi })
        } else {
            Err(FusionError::InvalidInterval { lo, hi })
        }
    }

    /// Caller guarantees `lo <= hi`.
    pub(crate) fn from_ordered(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Result<Self, FusionError> {
        Self::new(x, x)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Left/right tolerance used to widen a crisp reading into an interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    left: f64,
    right: f64,
}

impl Tolerance {
    pub fn new(left: f64, right: f64) -> Result<Self, FusionError> {
        if left >= 0.0 && right >= 0.0 && left.is_finite() && right.is_finite() {
            Ok(Self { left, right })
        } else {
            Err(FusionError::InvalidTolerance { left, right })
        }
    }

    pub fn symmetric(width: f64) -> Result<Self, FusionError> {
        Self::new(width, width)
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn right(&self) -> f64 {
        self.right
    }
}

/// What a single sensor reported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReadingPayload {
    Crisp(f64),
    Interval(Interval),
    Bit(bool),
}

impl ReadingPayload {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ReadingPayload::Crisp(_) => "crisp",
            ReadingPayload::Interval(_) => "interval",
            ReadingPayload::Bit(_) => "bit",
        }
    }
}

/// One sensor observation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reading {
    pub sensor: NodeId,
    pub payload: ReadingPayload,
}

impl Reading {
    pub fn crisp(sensor: impl Into<NodeId>, value: f64) -> Self {
        Self { sensor: sensor.into(), payload: ReadingPayload::Crisp(value) }
    }

    pub fn interval(sensor: impl Into<NodeId>, iv: Interval) -> Self {
        Self { sensor: sensor.into(), payload: ReadingPayload::Interval(iv) }
    }

    pub fn bit(sensor: impl Into<NodeId>, bit: bool) -> Self {
        Self { sensor: sensor.into(), payload: ReadingPayload::Bit(bit) }
    }
}

/// `[value - left, value + right]`.
pub fn to_interval(value: f64, tol: Tolerance) -> Interval {
    Interval { lo: value - tol.left, hi: value + tol.right }
}

/// Midpoint of the interval.
pub fn to_crisp(iv: Interval) -> f64 {
    (iv.lo + iv.hi) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    // Opens sort before closes at equal coordinates (closed intervals).
    Open,
    Close,
}

/// Marzullo's M-function: the smallest interval containing every point that
/// lies in at least `n - f` of the input intervals.
///
/// Sorts the `2n` endpoints once and sweeps them in a single pass.
pub fn marzullo(
    intervals: &[Interval],
    f: usize,
    counters: &mut OpCounters,
) -> Result<Interval, FusionError> {
    let n = intervals.len();
    check_fault_bound(n, f)?;
    let required = n - f;

    let mut edges: Vec<(f64, Edge)> = intervals
        .iter()
        .flat_map(|iv| [(iv.lo, Edge::Open), (iv.hi, Edge::Close)])
        .collect();
    edges.sort_by(|a, b| counters.cmp(a.0, b.0).then(a.1.cmp(&b.1)));

    let mut depth = 0usize;
    let mut lower = None;
    let mut upper = None;
    for (x, edge) in edges {
        match edge {
            Edge::Open => {
                depth += 1;
                if depth >= required && lower.is_none() {
                    lower = Some(x);
                }
            }
            Edge::Close => {
                if depth >= required {
                    upper = Some(x);
                }
                depth -= 1;
            }
        }
    }
    match (lower, upper) {
        (Some(lo), Some(hi)) => Ok(Interval { lo, hi }),
        _ => Err(FusionError::NoIntersection { required, n }),
    }
}

/// Schmid-Schossmaier S-function: `[X, Y]` with `X` the (f+1)-th largest left
/// edge and `Y` the (f+1)-th smallest right edge.
pub fn schmid_schossmaier(
    intervals: &[Interval],
    f: usize,
    counters: &mut OpCounters,
) -> Result<Interval, FusionError> {
    let n = intervals.len();
    check_fault_bound(n, f)?;
    let mut lows: Vec<f64> = intervals.iter().map(|iv| iv.lo).collect();
    let mut highs: Vec<f64> = intervals.iter().map(|iv| iv.hi).collect();
    let lo = select(&mut lows, n - 1 - f, counters);
    let hi = select(&mut highs, f, counters);
    if lo <= hi {
        Ok(Interval { lo, hi })
    } else {
        Err(FusionError::EmptyEstimate { lo, hi })
    }
}
