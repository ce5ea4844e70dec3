use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use nlie::oracle;
use nlie_bench::ORACLE_CELLS;

fn graded_dimension(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (n, d, w) in ORACLE_CELLS {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{n}-{d}-{w}")),
            &(n, d, w),
            |b, &(n, d, w)| b.iter(|| oracle::graded_dimension(black_box(n), d, w).unwrap()),
        );
    }
    group.finish();
}

fn collect(c: &mut Criterion) {
    let inputs = nlie_bench::rewrite_inputs(3, 3, 5);
    c.bench_function("collect/3-3-5", |b| {
        b.iter(|| {
            for t in &inputs {
                black_box(nlie::collect(t, 3, nlie::DEFAULT_STEP_BUDGET).unwrap());
            }
        })
    });
}

criterion_group!(benches, graded_dimension, collect);
criterion_main!(benches);
