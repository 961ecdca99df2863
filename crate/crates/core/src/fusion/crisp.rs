use serde::{Deserialize, Serialize};

use super::{check_fault_bound, select::select, FusionError, OpCounters};

/// How the median of an even number of readings is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MedianRule {
    /// The reading of 1-indexed rank `n/2` for even `n` and `(n+1)/2` for odd `n`.
    #[default]
    LowerMiddle,
    /// Mean of the two middle readings for even `n`.
    AverageMiddles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrispKind {
    Mean,
    Median(MedianRule),
    Min,
    Max,
    /// Most frequent value; equally frequent values resolve to the smallest.
    Mode,
}

/// Applies a symmetric crisp fusion function.
///
/// Min and max make exactly `n - 1` comparisons, mean exactly `n - 1`
/// additions and one division. The median is found by selection in
/// expected linear time.
pub fn fuse_crisp(
    values: &[f64],
    kind: CrispKind,
    counters: &mut OpCounters,
) -> Result<f64, FusionError> {
    let (&first, rest) = values.split_first().ok_or(FusionError::EmptyInput)?;
    let n = values.len();
    let out = match kind {
        CrispKind::Min => rest
            .iter()
            .fold(first, |best, &v| if counters.less(v, best) { v } else { best }),
        CrispKind::Max => rest
            .iter()
            .fold(first, |best, &v| if counters.less(best, v) { v } else { best }),
        CrispKind::Mean => {
            let total = counters.sum(values);
            counters.div(total, n as f64)
        }
        CrispKind::Median(rule) => {
            let mut scratch = values.to_vec();
            let k = n.div_ceil(2) - 1;
            let lower = select(&mut scratch, k, counters);
            if rule == MedianRule::AverageMiddles && n.is_multiple_of(2) {
                // After selection everything right of k is >= the lower middle.
                let upper = scratch[k + 1..]
                    .iter()
                    .copied()
                    .reduce(|best, v| if counters.less(v, best) { v } else { best })
                    .expect("even n leaves a right half");
                let s = counters.add(lower, upper);
                counters.div(s, 2.0)
            } else {
                lower
            }
        }
        CrispKind::Mode => mode(values, counters),
    };
    Ok(out)
}

fn mode(values: &[f64], counters: &mut OpCounters) -> f64 {
    let mut sorted = values.to_vec();
    counters.sort(&mut sorted);
    let (mut best, mut best_len) = (sorted[0], 1usize);
    let (mut run_value, mut run_len) = (sorted[0], 1usize);
    for &v in &sorted[1..] {
        if counters.cmp(v, run_value).is_eq() {
            run_len += 1;
        } else {
            run_value = v;
            run_len = 1;
        }
        if run_len > best_len {
            best = run_value;
            best_len = run_len;
        }
    }
    best
}

/// Trimmed-midpoint hybrid of interval and crisp fusion.
///
/// After sorting, `q` is the mean of the lowest `n - f` readings and `p` the
/// mean of the highest `n - f`; the result is the midpoint `(p + q) / 2`.
pub fn trimmed_midpoint_fuse(
    values: &[f64],
    f: usize,
    counters: &mut OpCounters,
) -> Result<f64, FusionError> {
    let n = values.len();
    check_fault_bound(n, f)?;
    let mut sorted = values.to_vec();
    counters.sort(&mut sorted);
    let kept = (n - f) as f64;
    let low_sum = counters.sum(&sorted[..n - f]);
    let q = counters.div(low_sum, kept);
    let high_sum = counters.sum(&sorted[f..]);
    let p = counters.div(high_sum, kept);
    let s = counters.add(p, q);
    Ok(counters.div(s, 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn run(values: &[f64], kind: CrispKind) -> (f64, OpCounters) {
        let mut c = OpCounters::new();
        let v = fuse_crisp(values, kind, &mut c).unwrap();
        (v, c)
    }

    #[test]
    fn min_counts_n_minus_one_comparisons() {
        let (v, c) = run(&[3.0, 1.0, 2.0], CrispKind::Min);
        assert_eq!(v, 1.0);
        assert_eq!(c.comparisons, 2);
        let (v, c) = run(&[3.0, 1.0, 2.0, 9.0], CrispKind::Max);
        assert_eq!(v, 9.0);
        assert_eq!(c.comparisons, 3);
    }

    #[test]
    fn mean_counts() {
        let (v, c) = run(&[1.0, 2.0, 3.0], CrispKind::Mean);
        assert_eq!(v, 2.0);
        assert_eq!((c.additions, c.divisions), (2, 1));
    }

    #[test]
    fn median_rank_rules() {
        assert_eq!(run(&[1.0, 2.0, 3.0, 4.0], CrispKind::Median(MedianRule::LowerMiddle)).0, 2.0);
        assert_eq!(run(&[4.0, 3.0, 2.0, 1.0], CrispKind::Median(MedianRule::AverageMiddles)).0, 2.5);
        assert_eq!(run(&[5.0, 1.0, 3.0], CrispKind::Median(MedianRule::LowerMiddle)).0, 3.0);
        assert_eq!(run(&[5.0, 1.0, 3.0], CrispKind::Median(MedianRule::AverageMiddles)).0, 3.0);
        assert_eq!(run(&[7.0], CrispKind::Median(MedianRule::AverageMiddles)).0, 7.0);
    }

    #[test]
    fn mode_examples() {
        assert_eq!(run(&[7.0, 7.0, 3.0], CrispKind::Mode).0, 7.0);
        // Equal frequencies resolve to the smallest value.
        assert_eq!(run(&[9.0, 4.0, 9.0, 4.0, 1.0], CrispKind::Mode).0, 4.0);
        assert_eq!(run(&[2.5], CrispKind::Mode).0, 2.5);
    }

    #[test]
    fn empty_input() {
        for kind in [CrispKind::Mean, CrispKind::Min, CrispKind::Max, CrispKind::Mode] {
            assert_eq!(fuse_crisp(&[], kind, &mut OpCounters::new()), Err(FusionError::EmptyInput));
        }
    }

    #[test]
    fn trimmed_midpoint_examples() {
        let mut c = OpCounters::new();
        assert_eq!(trimmed_midpoint_fuse(&[1.0, 2.0, 3.0, 4.0, 5.0], 1, &mut c).unwrap(), 3.0);
        assert_eq!(trimmed_midpoint_fuse(&[1.0, 2.0, 3.0], 0, &mut c).unwrap(), 2.0);
        assert_eq!(trimmed_midpoint_fuse(&[1.0, 9.0], 1, &mut c).unwrap(), 5.0);
        // Asymmetric data: q = mean{0,1,2} = 1, p = mean{1,2,12} = 5.
        assert_eq!(trimmed_midpoint_fuse(&[12.0, 0.0, 2.0, 1.0], 1, &mut c).unwrap(), 3.0);
        assert_eq!(
            trimmed_midpoint_fuse(&[1.0, 9.0], 2, &mut c),
            Err(FusionError::InvalidFaultBound { f: 2, n: 2 })
        );
    }

    proptest! {
        #[test]
        fn median_is_rank_ceil_half(v in prop::collection::vec(-1000i32..1000, 1..300)) {
            let floats: Vec<f64> = v.iter().map(|&x| x as f64).collect();
            let mut sorted = floats.clone();
            sorted.sort_by(f64::total_cmp);
            let rank = v.len().div_ceil(2);
            let (got, _) = run(&floats, CrispKind::Median(MedianRule::LowerMiddle));
            prop_assert_eq!(got, sorted[rank - 1]);
        }

        #[test]
        fn trimmed_with_no_faults_is_mean(v in prop::collection::vec(-1e6f64..1e6, 1..100)) {
            let mean = run(&v, CrispKind::Mean).0;
            let t = trimmed_midpoint_fuse(&v, 0, &mut OpCounters::new()).unwrap();
            prop_assert!((t - mean).abs() <= 1e-12 * mean.abs().max(1.0));
        }

        #[test]
        fn order_invariant(mut v in prop::collection::vec(-1e3f64..1e3, 1..60), f_seed in any::<usize>()) {
            let f = f_seed % v.len();
            let kinds = [
                CrispKind::Min,
                CrispKind::Max,
                CrispKind::Mode,
                CrispKind::Median(MedianRule::LowerMiddle),
                CrispKind::Median(MedianRule::AverageMiddles),
            ];
            let before: Vec<f64> = kinds.iter().map(|&k| run(&v, k).0).collect();
            let mean_before = run(&v, CrispKind::Mean).0;
            let trimmed_before = trimmed_midpoint_fuse(&v, f, &mut OpCounters::new()).unwrap();
            v.reverse();
            let third = v.len() / 3;
            v.rotate_left(third);
            let after: Vec<f64> = kinds.iter().map(|&k| run(&v, k).0).collect();
            prop_assert_eq!(before, after);
            // Summation order changes rounding only.
            let mean_after = run(&v, CrispKind::Mean).0;
            prop_assert!((mean_before - mean_after).abs() <= 1e-9);
            prop_assert_eq!(trimmed_before, trimmed_midpoint_fuse(&v, f, &mut OpCounters::new()).unwrap());
        }
    }
}
