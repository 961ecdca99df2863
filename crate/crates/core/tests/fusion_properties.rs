mod common;

use common::*;
use proptest::prelude::*;
use wsnfuse_core::fusion::*;
use wsnfuse_core::simulator::random_instance;

fn grid() -> impl Strategy<Value = Vec<Interval>> {
    prop::collection::vec((0i32..20, 0i32..8), 1..=12).prop_map(|v| {
        v.into_iter().map(|(a, w)| Interval::new(a as f64, (a + w) as f64).unwrap()).collect()
    })
}

#[test]
fn marzullo_example_matches_oracle() {
    let input = [(8.0, 12.0), (11.0, 13.0), (14.0, 15.0)]
        .map(|(a, b)| Interval::new(a, b).unwrap());
    assert_eq!(brute_force_marzullo(&input, 1), Some((11.0, 12.0)));
    let m = marzullo(&input, 1, &mut OpCounters::new()).unwrap();
    assert_eq!((m.lo(), m.hi()), (11.0, 12.0));
}

#[test]
fn schmid_schossmaier_example_matches_oracle() {
    let input = [(1.0, 4.0), (2.0, 5.0), (3.0, 6.0)].map(|(a, b)| Interval::new(a, b).unwrap());
    assert_eq!(sorted_schmid_schossmaier(&input, 1), (2.0, 5.0));
}

#[test]
fn marzullo_sweep_is_n_log_n() {
    // Comparisons stay within a small multiple of 2n log2(2n).
    for n in [10usize, 100, 1000, 10_000] {
        let inst = random_instance(n as u64, n, 0, 1.0).unwrap();
        let mut c = OpCounters::new();
        marzullo(&inst.intervals, 0, &mut c).unwrap();
        let m = 2.0 * n as f64;
        assert!((c.comparisons as f64) <= 2.0 * m * m.log2(), "n = {n}: {}", c.comparisons);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn marzullo_equals_oracle(input in grid(), f_seed in any::<usize>()) {
        let f = f_seed % input.len();
        let got = marzullo(&input, f, &mut OpCounters::new()).ok().map(|iv| (iv.lo(), iv.hi()));
        prop_assert_eq!(got, brute_force_marzullo(&input, f));
    }

    #[test]
    fn n_function_hull_equals_marzullo(input in grid(), f_seed in any::<usize>()) {
        let f = f_seed % input.len();
        let m = marzullo(&input, f, &mut OpCounters::new());
        let nf = n_function(&input, f, &mut OpCounters::new());
        prop_assert_eq!(m, nf);
    }

    #[test]
    fn schmid_schossmaier_envelopes_marzullo(input in grid(), f_seed in any::<usize>()) {
        let f = f_seed % input.len();
        if let Ok(m) = marzullo(&input, f, &mut OpCounters::new()) {
            let s = schmid_schossmaier(&input, f, &mut OpCounters::new()).unwrap();
            prop_assert!(s.contains_interval(&m));
        }
        let (x, y) = sorted_schmid_schossmaier(&input, f);
        match schmid_schossmaier(&input, f, &mut OpCounters::new()) {
            Ok(s) => prop_assert_eq!((s.lo(), s.hi()), (x, y)),
            Err(FusionError::EmptyEstimate { lo, hi }) => prop_assert_eq!((lo, hi), (x, y)),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn schmid_schossmaier_is_one_lipschitz(
        input in grid(),
        f_seed in any::<usize>(),
        eps in 0.0f64..=0.1,
        signs in prop::collection::vec((-1.0f64..=1.0, -1.0f64..=1.0), 12),
    ) {
        let f = f_seed % input.len();
        let shifted: Vec<Interval> = input
            .iter()
            .zip(&signs)
            .map(|(iv, &(a, b))| {
                let (lo, hi) = (iv.lo() + a * eps, iv.hi() + b * eps);
                Interval::new(lo.min(hi), lo.max(hi)).unwrap()
            })
            .collect();
        let (x0, y0) = sorted_schmid_schossmaier(&input, f);
        let got = schmid_schossmaier(&shifted, f, &mut OpCounters::new());
        let (x1, y1) = match got {
            Ok(s) => (s.lo(), s.hi()),
            Err(FusionError::EmptyEstimate { lo, hi }) => (lo, hi),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!((x1 - x0).abs() <= eps + 1e-12);
        prop_assert!((y1 - y0).abs() <= eps + 1e-12);
    }

    #[test]
    fn profile_matches_probe_counts(input in grid(), probes in prop::collection::vec(-2.0f64..30.0, 100)) {
        let p = overlap_profile(&input, &mut OpCounters::new()).unwrap();
        for x in probes.into_iter().chain(region_probes(&input)) {
            prop_assert_eq!(p.count_at(x), coverage(&input, x));
        }
    }

    #[test]
    fn omega_region_is_a_peak(input in grid()) {
        let out = omega_fuse(&input, &mut OpCounters::new()).unwrap();
        let peak = region_probes(&input).into_iter().map(|x| coverage(&input, x)).max().unwrap();
        prop_assert_eq!(coverage(&input, out.lo()), peak);
        prop_assert_eq!(coverage(&input, out.hi()), peak);
        prop_assert_eq!(coverage(&input, (out.lo() + out.hi()) / 2.0), peak);
        // Maximal: just outside the region the count drops.
        prop_assert!(coverage(&input, out.lo() - 1e-9) < peak);
        prop_assert!(coverage(&input, out.hi() + 1e-9) < peak);
    }

    #[test]
    fn interval_functions_ignore_order(mut input in grid(), f_seed in any::<usize>(), rot in any::<usize>()) {
        let f = f_seed % input.len();
        let c = &mut OpCounters::new();
        let before = (
            marzullo(&input, f, c),
            schmid_schossmaier(&input, f, c),
            omega_fuse(&input, c),
            n_function(&input, f, c),
            overlap_profile(&input, c),
        );
        input.reverse();
        let k = rot % input.len();
        input.rotate_left(k);
        let after = (
            marzullo(&input, f, c),
            schmid_schossmaier(&input, f, c),
            omega_fuse(&input, c),
            n_function(&input, f, c),
            overlap_profile(&input, c),
        );
        prop_assert_eq!(before, after);
    }

    #[test]
    fn min_max_mean_meet_the_linear_bound(v in prop::collection::vec(-1e6f64..1e6, 1..500)) {
        let n = v.len() as u64;
        for kind in [CrispKind::Min, CrispKind::Max] {
            let mut c = OpCounters::new();
            fuse_crisp(&v, kind, &mut c).unwrap();
            prop_assert_eq!(c.comparisons, n - 1);
        }
        let mut c = OpCounters::new();
        fuse_crisp(&v, CrispKind::Mean, &mut c).unwrap();
        prop_assert_eq!((c.additions, c.divisions), (n - 1, 1));
    }

    #[test]
    fn majority_is_popcount_threshold(bits in prop::collection::vec(any::<bool>(), 1..64)) {
        let ones = bits.iter().filter(|&&b| b).count();
        let got = boolean_fuse(&bits, &BooleanRule::default(), &mut OpCounters::new()).unwrap();
        prop_assert_eq!(got, 2 * ones >= bits.len());
        let mut shuffled = bits.clone();
        shuffled.reverse();
        prop_assert_eq!(got, boolean_fuse(&shuffled, &BooleanRule::default(), &mut OpCounters::new()).unwrap());
    }
}

#[test]
fn truth_is_contained_under_the_fault_bound() {
    for seed in 0..2000u64 {
        let n = 1 + (seed % 12) as usize;
        let faults = (seed as usize / 12) % n;
        let inst = random_instance(seed, n, faults, 1.0).unwrap();
        let m = marzullo(&inst.intervals, faults, &mut OpCounters::new()).unwrap();
        let s = schmid_schossmaier(&inst.intervals, faults, &mut OpCounters::new()).unwrap();
        assert!(m.contains(inst.truth), "seed {seed}");
        assert!(s.contains(inst.truth), "seed {seed}");
    }
}
