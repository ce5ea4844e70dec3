use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use nlie_bench::ENUMERATION_CELLS;

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for (n, d, w, mode) in ENUMERATION_CELLS {
        let id = BenchmarkId::from_parameter(format!("{n}-{d}-{w}-{}", mode.tag()));
        group.bench_function(id, |b| {
            b.iter(|| nlie::count_by_enumeration(black_box(n), d, w, mode).unwrap())
        });
    }
    group.finish();
}

fn formulas(c: &mut Criterion) {
    c.bench_function("ladder/10-10", |b| {
        b.iter(|| nlie::counting::ladder_recursive(black_box(10), 10))
    });
    c.bench_function("via_lie/5-8-8", |b| {
        b.iter(|| nlie::counting::countw_via_lie(black_box(5), 8, 8).unwrap())
    });
}

criterion_group!(benches, enumerate, formulas);
criterion_main!(benches);
