//! Order-statistic selection with counted comparisons.
//!
//! Quickselect with a median-of-three pivot and three-way partitioning.
//! After `2 * log2(n)` rounds without finishing it switches to
//! median-of-medians pivots, which bounds the worst case at O(n).

use std::cmp::Ordering;

use super::OpCounters;

const SMALL: usize = 10;

/// Returns the element of 0-indexed rank `k` of `values` in ascending total
/// order. `values` is permuted in place.
///
/// Panics if `k >= values.len()`.
pub(crate) fn select(values: &mut [f64], k: usize, counters: &mut OpCounters) -> f64 {
    assert!(k < values.len(), "rank {k} out of bounds for {} values", values.len());
    let budget = 2 * (usize::BITS - values.len().leading_zeros()) as usize;
    let (mut lo, mut hi, mut k) = (0usize, values.len(), k);
    let mut rounds = 0usize;
    loop {
        let window = &mut values[lo..hi];
        if window.len() <= SMALL {
            insertion_sort(window, counters);
            return window[k];
        }
        let pivot = if rounds < budget {
            median_of_three(window, counters)
        } else {
            median_of_medians(window, counters)
        };
        let (lt, gt) = partition3(window, pivot, counters);
        match k {
            k if k < lt => hi = lo + lt,
            k if k < gt => return pivot,
            _ => {
                k -= gt;
                lo += gt;
            }
        }
        rounds += 1;
    }
}

fn insertion_sort(v: &mut [f64], counters: &mut OpCounters) {
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && counters.less(v[j], v[j - 1]) {
            v.swap(j, j - 1);
            j -= 1;
        }
    }
}

fn median_of_three(v: &[f64], counters: &mut OpCounters) -> f64 {
    let (a, b, c) = (v[0], v[v.len() / 2], v[v.len() - 1]);
    if counters.less(a, b) {
        if counters.less(b, c) {
            b
        } else if counters.less(a, c) {
            c
        } else {
            a
        }
    } else if counters.less(a, c) {
        a
    } else if counters.less(b, c) {
        c
    } else {
        b
    }
}

fn median_of_medians(v: &mut [f64], counters: &mut OpCounters) -> f64 {
    let mut medians: Vec<f64> = v
        .chunks_mut(5)
        .map(|group| {
            insertion_sort(group, counters);
            group[(group.len() - 1) / 2]
        })
        .collect();
    let mid = (medians.len() - 1) / 2;
    select(&mut medians, mid, counters)
}

/// Dutch-flag partition around `pivot`; one counted comparison per element.
/// Returns `(lt, gt)` with `v[..lt] < pivot`, `v[lt..gt] == pivot`,
/// `v[gt..] > pivot`.
fn partition3(v: &mut [f64], pivot: f64, counters: &mut OpCounters) -> (usize, usize) {
    let (mut lt, mut i, mut gt) = (0, 0, v.len());
    while i < gt {
        match counters.cmp(v[i], pivot) {
            Ordering::Less => {
                v.swap(lt, i);
                lt += 1;
                i += 1;
            }
            Ordering::Equal => i += 1,
            Ordering::Greater => {
                gt -= 1;
                v.swap(i, gt);
            }
        }
    }
    (lt, gt)
}
