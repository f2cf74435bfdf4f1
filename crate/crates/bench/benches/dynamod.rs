use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dynamod_bench::fixture;
use dynamod_core::algebra::rat;
use dynamod_core::curves::{curve_system, rational_fiber};
use dynamod_core::dynamics::preper_set;
use dynamod_core::graph::{aut_brute, aut_order, full_level_graph, minimal_generating_set};
use dynamod_core::{default_cache, DynatomicCache};

fn polynomials(c: &mut Criterion) {
    c.bench_function("dynatomic 6, cold cache", |b| {
        b.iter(|| DynatomicCache::new(1024).dynatomic(black_box(6)).unwrap())
    });
    c.bench_function("gen_dynatomic (3,3), cold cache", |b| {
        b.iter(|| DynatomicCache::new(1024).gen_dynatomic(3, black_box(3)).unwrap())
    });
    c.bench_function("verify_preper_factorization (2,3)", |b| {
        b.iter(|| DynatomicCache::new(1024).verify_preper_factorization(2, black_box(3)).unwrap())
    });
}

fn dynamics(c: &mut Criterion) {
    c.bench_function("preper_set -29/16", |b| b.iter(|| preper_set(black_box(&rat(-29, 16))).unwrap()));
    c.bench_function("preper_set -301/144", |b| b.iter(|| preper_set(black_box(&rat(-301, 144))).unwrap()));
}

fn graphs(c: &mut Criterion) {
    let g2 = fixture("fig5_G2.g");
    c.bench_function("minimal_generating_set G2", |b| b.iter(|| minimal_generating_set(black_box(&g2)).unwrap()));
    let level = full_level_graph(3, 1).unwrap();
    c.bench_function("aut_brute full_level(3,1)", |b| b.iter(|| aut_brute(black_box(&level)).unwrap()));
    c.bench_function("aut_order full_level(3,1)", |b| b.iter(|| aut_order(black_box(&level)).unwrap()));
}

fn curves(c: &mut Criterion) {
    let fig1 = fixture("fig1_style.g");
    default_cache().gen_dynatomic(3, 3).unwrap();
    c.bench_function("curve_system fig1, warm cache", |b| {
        b.iter(|| curve_system(default_cache(), black_box(&fig1)).unwrap())
    });
    let full = fixture("c_m29_16.g");
    c.bench_function("rational_fiber of the -29/16 graph", |b| {
        b.iter(|| rational_fiber(default_cache(), black_box(&full), &rat(-29, 16)).unwrap())
    });
}

criterion_group!(benches, polynomials, dynamics, graphs, curves);
criterion_main!(benches);
