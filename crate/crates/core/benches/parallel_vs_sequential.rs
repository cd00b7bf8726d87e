use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use holonomy_core::builtins::builtin;
use holonomy_core::decomp::heredity_suite;
use holonomy_core::oracle::quadratic_algebra_dims_with;
use holonomy_core::{Exec, Holonomy, Options};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn holonomy(c: &mut Criterion) {
    let mut group = c.benchmark_group("holonomy");
    group.sample_size(10);
    for (name, degree) in [("braid6", 5), ("gfam-3", 6), ("x2", 6)] {
        let a = builtin(name).unwrap();
        for (mode, exec) in MODES {
            let opts = Options { exec, ..Options::degree(degree) };
            group.bench_with_input(BenchmarkId::new(mode, name), &a, |b, a| {
                b.iter(|| Holonomy::compute(black_box(a), &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn heredity(c: &mut Criterion) {
    let mut group = c.benchmark_group("heredity");
    group.sample_size(10);
    let a = builtin("gfam-3").unwrap();
    for (mode, exec) in MODES {
        let opts = Options { exec, ..Options::default() };
        group.bench_function(mode, |b| b.iter(|| heredity_suite(black_box(&a), 20, 7, &opts).unwrap()));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let a = builtin("x2").unwrap();
    for (mode, exec) in MODES {
        group.bench_function(mode, |b| {
            b.iter(|| quadratic_algebra_dims_with(black_box(&a), 4, 1 << 20, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, holonomy, heredity, oracle);
criterion_main!(benches);
