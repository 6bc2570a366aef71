use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sdr_core::{
    census_with, construct_bar, count_sdr, descent_probe_with, verify_extremal_with, Execution,
    SearchBudget, SearchSpec, Valuation,
};
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_sdr");
    for n in [8, 12, 16] {
        let f = construct_bar(
            3,
            &Valuation::new((0..n).map(|i| 1 + i % 3).collect()).unwrap(),
        );
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| count_sdr(black_box(f)))
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let spec = SearchSpec::new(2, Valuation::new(vec![1, 1, 1, 1]).unwrap()).unwrap();
    let mut group = c.benchmark_group("search t=2 a=(1,1,1,1)");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| verify_extremal_with(&spec, exec, &SearchBudget::default(), |_| {}).unwrap())
        });
    }
    group.finish();
}

fn pairs(c: &mut Criterion) {
    let a = Valuation::new(vec![2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1]).unwrap();
    let f = construct_bar(3, &a);
    let mut group = c.benchmark_group("census n=12");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| census_with(&f, 3, &a, exec).unwrap()));
    }
    group.finish();
}

fn probe(c: &mut Criterion) {
    let spec = SearchSpec::new(3, Valuation::new(vec![2, 1, 2, 1, 1]).unwrap()).unwrap();
    let mut group = c.benchmark_group("descent probe 64 walks");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| descent_probe_with(&spec, 64, 1, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, counting, search, pairs, probe);
criterion_main!(benches);
