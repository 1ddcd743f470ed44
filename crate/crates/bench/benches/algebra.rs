use criterion::{criterion_group, criterion_main, Criterion};
use polymodels::groups::{construct_named, GroupLabel};
use polymodels::modelcheck::{closure_solve, verify_model};
use polymodels::numerics::{render_boundary, sample_interior};
use polymodels_bench::representative_models;
use std::hint::black_box;

fn closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("closure_solve");
    for (name, m) in representative_models() {
        g.bench_function(name, |b| b.iter(|| closure_solve(black_box(&m.system))));
    }
    g.finish();
}

fn molien(c: &mut Criterion) {
    let mut g = c.benchmark_group("molien");
    for label in ["TO", "I", "cornulier"] {
        let group = construct_named(&GroupLabel::parse(label, None).unwrap()).unwrap();
        g.bench_function(label, |b| b.iter(|| group.molien(black_box(16)).unwrap()));
    }
    g.finish();
}

fn verify(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_model");
    g.sample_size(10);
    for (name, m) in representative_models() {
        g.bench_function(name, |b| b.iter(|| verify_model(black_box(&m), 6)));
    }
    g.finish();
}

fn numerics(c: &mut Criterion) {
    let mut g = c.benchmark_group("numerics");
    g.sample_size(10);
    for (name, m) in representative_models() {
        g.bench_function(format!("render_{name}"), |b| b.iter(|| render_boundary(black_box(&m), 256, 0.0)));
        g.bench_function(format!("sample_{name}"), |b| b.iter(|| sample_interior(black_box(&m), 10_000, 0).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, closure, molien, verify, numerics);
criterion_main!(benches);
