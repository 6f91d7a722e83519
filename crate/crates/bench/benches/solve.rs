use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use bdmmn::baseline::build_n_empty;
use bdmmn::generate::{generate_random, generate_staircase_family};
use bdmmn::oracle::{exact_optimum, DEFAULT_BUDGET};
use bdmmn::solve;
use bdmmn::verify::verify_bidirected;

fn random_sizes(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_random");
    g.sample_size(10);
    for n in [50, 100, 200, 400] {
        let t = generate_random(n, 1);
        g.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| b.iter(|| solve(black_box(t)).unwrap()));
    }
    g.finish();
}

fn baseline_and_verify(c: &mut Criterion) {
    let t = generate_random(200, 1);
    c.bench_function("baseline_200", |b| b.iter(|| build_n_empty(black_box(&t)).unwrap()));
    let net = solve(&t).unwrap().network;
    c.bench_function("verify_200", |b| b.iter(|| verify_bidirected(black_box(&net), &t)));
}

fn staircase_family(c: &mut Criterion) {
    let mut g = c.benchmark_group("staircase_family");
    for k in [2, 8, 32] {
        let t = generate_staircase_family(k);
        g.bench_with_input(BenchmarkId::new("solve", k), &t, |b, t| b.iter(|| solve(black_box(t)).unwrap()));
    }
    let t = generate_staircase_family(3);
    g.bench_function("exact_k3", |b| b.iter(|| exact_optimum(black_box(&t), DEFAULT_BUDGET).unwrap()));
    g.finish();
}

criterion_group!(benches, random_sizes, baseline_and_verify, staircase_family);
criterion_main!(benches);
