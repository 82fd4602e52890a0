use bskein_bench::{chain, knots};
use bskein_core::moves::random_move_walk;
use bskein_core::{Engine, Oracle};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn alpha_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("alpha_table");
    for (name, d) in knots() {
        group.bench_with_input(BenchmarkId::new("plain", name), &d, |b, d| {
            b.iter(|| Engine::new().alpha_table(black_box(d)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("memoized", name), &d, |b, d| {
            b.iter(|| Engine::new().memoized().alpha_table(black_box(d)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_l");
    for (name, d) in knots() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| {
            b.iter(|| Oracle::new().oracle_l(black_box(d)).unwrap())
        });
    }
    group.finish();
}

fn sums(c: &mut Criterion) {
    let ks = knots();
    let t = &ks[0].1;
    let mut group = c.benchmark_group("trefoil_chain");
    group.sample_size(10);
    for n in 1..=3usize {
        let d = chain(&vec![t; n]);
        group.bench_with_input(BenchmarkId::from_parameter(3 * n), &d, |b, d| {
            b.iter(|| Engine::new().memoized().alpha_table(black_box(d)).unwrap())
        });
    }
    group.finish();
}

fn walks(c: &mut Criterion) {
    let ks = knots();
    let start = &ks[1].1;
    c.bench_function("random_move_walk/40", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            random_move_walk(black_box(start), 40, seed, 10)
        })
    });
}

criterion_group!(benches, alpha_tables, oracle, sums, walks);
criterion_main!(benches);
