use crep_core::algebra::{ParamPoint, QField};
use crep_core::constraints::{gaussian_split, generate_all_constraints};
use crep_core::positivity::{certify, default_grid, phi_oracle, phi_table, Density, GridComparison};
use crep_core::reduction::{derive_T_ab, reduce_pipeline};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn example() -> ParamPoint {
    ParamPoint::new(2, QField::rat(11, 5), QField::int(2)).unwrap()
}

fn symbolic(c: &mut Criterion) {
    let mut g = c.benchmark_group("symbolic");
    g.sample_size(10);
    g.bench_function("generate_constraints", |b| b.iter(|| generate_all_constraints().unwrap()));
    let cs = generate_all_constraints().unwrap();
    g.bench_function("gaussian_split", |b| b.iter(|| gaussian_split(black_box(&cs.equational))));
    g.bench_function("derive_T_ab", |b| b.iter(|| derive_T_ab().unwrap()));
    g.bench_function("reduce_pipeline", |b| b.iter(|| reduce_pipeline().unwrap()));
    g.finish();
}

fn decision(c: &mut Criterion) {
    let x = example();
    c.bench_function("phi_table", |b| b.iter(|| phi_table(black_box(&x)).unwrap()));
    c.bench_function("phi_oracle", |b| b.iter(|| phi_oracle(black_box(&x)).unwrap()));
    c.bench_function("certify", |b| b.iter(|| certify(black_box(&x), Some(QField::rat(-5, 9))).unwrap()));
    let pts = default_grid(Density::Coarse);
    let mut g = c.benchmark_group("grid");
    g.sample_size(10);
    g.bench_function("coarse_table_vs_oracle", |b| b.iter(|| GridComparison::run(black_box(&pts))));
    g.finish();
}

criterion_group!(benches, symbolic, decision);
criterion_main!(benches);
