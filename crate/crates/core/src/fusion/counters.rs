use std::cmp::Ordering;
use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

/// Work performed on reading values.
///
/// Only operations on sensor data are counted. Index arithmetic and
/// bookkeeping on integer tallies are not.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpCounters {
    pub comparisons: u64,
    pub additions: u64,
    pub divisions: u64,
}

impl OpCounters {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total ordering of two readings, counted as one comparison.
    #[inline]
    pub fn cmp(&mut self, a: f64, b: f64) -> Ordering {
        self.comparisons += 1;
        a.total_cmp(&b)
    }

    #[inline]
    pub fn less(&mut self, a: f64, b: f64) -> bool {
        self.cmp(a, b) == Ordering::Less
    }

    #[inline]
    pub fn add(&mut self, a: f64, b: f64) -> f64 {
        self.additions += 1;
        a + b
    }

    #[inline]
    pub fn div(&mut self, a: f64, b: f64) -> f64 {
        self.divisions += 1;
        a / b
    }

    /// Correctly rounded sum of `values`, counted as `len - 1` additions.
    ///
    /// The result does not depend on the order of `values`.
    pub fn sum(&mut self, values: &[f64]) -> f64 {
        self.additions += values.len().saturating_sub(1) as u64;
        exact_sum(values)
    }

    /// Sorts ascending by total order, counting every comparison the sort makes.
    pub fn sort(&mut self, values: &mut [f64]) {
        values.sort_by(|a, b| self.cmp(*a, *b));
    }

    pub fn total(&self) -> u64 {
        self.comparisons + self.additions + self.divisions
    }
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.comparisons += rhs.comparisons;
        self.additions += rhs.additions;
        self.divisions += rhs.divisions;
    }
}

/// Shewchuk's partials summation with a final half-even correction.
/// Falls back to plain summation when the input is not all finite or an
/// intermediate overflows.
fn exact_sum(values: &[f64]) -> f64 {
    let mut partials: Vec<f64> = Vec::new();
    for &v in values {
        if !v.is_finite() {
            return values.iter().sum();
        }
        let mut x = v;
        let mut kept = 0;
        for j in 0..partials.len() {
            let mut y = partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        if !x.is_finite() {
            return values.iter().sum();
        }
        partials.truncate(kept);
        partials.push(x);
    }

    let Some(mut n) = partials.len().checked_sub(1) else {
        return 0.0;
    };
    let mut hi = partials[n];
    let mut lo = 0.0;
    while n > 0 {
        let x = hi;
        n -= 1;
        let y = partials[n];
        hi = x + y;
        lo = y - (hi - x);
        if lo != 0.0 {
            break;
        }
    }
    if n > 0 && ((lo < 0.0 && partials[n - 1] < 0.0) || (lo > 0.0 && partials[n - 1] > 0.0)) {
        let y = lo * 2.0;
        let x = hi + y;
        if y == x - hi {
            hi = x;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sum_counts_n_minus_one() {
        let mut c = OpCounters::new();
        assert_eq!(c.sum(&[1.0, 2.0, 3.0, 4.0]), 10.0);
        assert_eq!(c.additions, 3);
        let mut c = OpCounters::new();
        assert_eq!(c.sum(&[7.0]), 7.0);
        assert_eq!(c.additions, 0);
    }

    #[test]
    fn sum_survives_cancellation() {
        let mut c = OpCounters::new();
        assert_eq!(c.sum(&[1e100, 1.0, -1e100]), 1.0);
        assert_eq!(c.sum(&[0.1; 10]), 1.0);
        assert_eq!(c.sum(&[]), 0.0);
        assert_eq!(c.sum(&[f64::INFINITY, 1.0]), f64::INFINITY);
        assert_eq!(c.sum(&[f64::MAX, f64::MAX, -f64::MAX]), f64::INFINITY);
    }

    proptest! {
        // Dyadic inputs m * 2^e sum exactly in i128 once scaled by 2^20.
        #[test]
        fn sum_is_correctly_rounded(
            terms in prop::collection::vec((-(1i64 << 50)..(1i64 << 50), -20i32..20), 0..100),
        ) {
            let exact: i128 = terms.iter().map(|&(m, e)| (m as i128) << (e + 20)).sum();
            let want = exact as f64 / (1u64 << 20) as f64;
            let values: Vec<f64> = terms.iter().map(|&(m, e)| m as f64 * 2f64.powi(e)).collect();
            prop_assert_eq!(OpCounters::new().sum(&values), want);
            let mut reversed = values.clone();
            reversed.reverse();
            prop_assert_eq!(OpCounters::new().sum(&reversed), want);
        }
    }

    #[test]
    fn accumulate() {
        let mut a = OpCounters { comparisons: 1, additions: 2, divisions: 3 };
        a += OpCounters { comparisons: 10, additions: 20, divisions: 30 };
        assert_eq!(a, OpCounters { comparisons: 11, additions: 22, divisions: 33 });
        assert_eq!(a.total(), 66);
    }
}
