use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use wsnfuse_core::exec::Execution;
use wsnfuse_core::fusion::{marzullo, OpCounters};
use wsnfuse_core::simulator::random_instance;
use wsnfuse_core::topology::extremal_tree_check_with;

const MODES: [(&str, Execution); 2] =
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn extremal(c: &mut Criterion) {
    let mut group = c.benchmark_group("extremal_tree_check");
    group.sample_size(10);
    for n in [7, 8] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| extremal_tree_check_with(black_box(n), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn marzullo_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("marzullo_sweep");
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                exec.map_reduce(
                    10_000,
                    0u64,
                    |seed| {
                        let n = 3 + (seed % 30) as usize;
                        let inst = random_instance(seed, n, n / 3, 1.0).unwrap();
                        marzullo(&inst.intervals, n / 3, &mut OpCounters::new()).is_ok() as u64
                    },
                    |a, b| a + b,
                )
            })
        });
    }
    group.finish();
}

criterion_group!(benches, extremal, marzullo_sweep);
criterion_main!(benches);
