use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use torsorlab::brauer::{integral_search, validate_parameters};
use torsorlab::cohomology::bar_cohomology;
use torsorlab::lattice::{smith_diagonal, smith_normal_form};
use torsorlab_bench::{binorm_module, random_matrix, trivial_module};

fn snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("snf");
    for n in [4usize, 8, 16, 32] {
        let a = random_matrix(n, n, 9, n as u64);
        group.bench_with_input(BenchmarkId::new("diagonal", n), &a, |b, a| b.iter(|| smith_diagonal(black_box(a))));
        group.bench_with_input(BenchmarkId::new("with_transforms", n), &a, |b, a| b.iter(|| smith_normal_form(black_box(a))));
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("bar_cohomology");
    group.sample_size(10);
    for (name, spec, degree) in [("C6 H2", "cyclic:6", 2), ("S3 H2", "sym:3", 2), ("S3 H3", "sym:3", 3)] {
        let m = trivial_module(spec);
        group.bench_function(name, |b| b.iter(|| bar_cohomology(black_box(&m), degree).unwrap()));
    }
    let m = binorm_module(3, 4);
    group.bench_function("binorm C3xC4 H2", |b| b.iter(|| bar_cohomology(black_box(&m), 2).unwrap()));
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("integral_search");
    group.sample_size(10);
    for bound in [25i64, 50, 100] {
        let mut inst = validate_parameters(19, 17).unwrap();
        inst.search_bound = bound;
        group.bench_with_input(BenchmarkId::from_parameter(bound), &inst, |b, i| b.iter(|| integral_search(black_box(i))));
    }
    group.finish();
}

criterion_group!(benches, snf, cohomology, search);
criterion_main!(benches);
