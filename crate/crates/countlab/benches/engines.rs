//! Benchmarks comparing the sequential and rayon execution paths of the
//! counting engine and the sweep-heavy verification suites, plus the two
//! counting engines against each other.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use countlab::corpus;
use countlab::counting::{count_bruteforce, count_dpll_with};
use countlab::verify::{run_suite, SuiteConfig, SuiteId};
use countlab::Execution;

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ]
}

fn bench_dpll_modes(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let instance = corpus::random_3cnf(&mut rng, 22, 94); // ratio ~4.26
    let mut group = c.benchmark_group("count_dpll_n22");
    group.sample_size(10);
    for (label, exec) in modes() {
        group.bench_function(label, |b| {
            b.iter(|| count_dpll_with(black_box(&instance), exec))
        });
    }
    group.finish();
}

fn bench_engines(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let instance = corpus::random_3cnf(&mut rng, 16, 68);
    let mut group = c.benchmark_group("engines_n16");
    group.bench_function("bruteforce", |b| {
        b.iter(|| count_bruteforce(black_box(&instance)).unwrap())
    });
    group.bench_function("dpll", |b| {
        b.iter(|| count_dpll_with(black_box(&instance), Execution::Sequential))
    });
    group.finish();
}

fn bench_sweep_suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite_t6_sweep");
    group.sample_size(10);
    for (label, exec) in modes() {
        let config = SuiteConfig {
            n_max: Some(18),
            seed: 0,
            exec,
        };
        group.bench_function(label, |b| {
            b.iter(|| run_suite(SuiteId::T6, black_box(&config)))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("suite_gadget_audit");
    group.sample_size(10);
    for (label, exec) in modes() {
        let config = SuiteConfig {
            n_max: Some(8),
            seed: 0,
            exec,
        };
        group.bench_function(label, |b| {
            b.iter(|| run_suite(SuiteId::Gadgets, black_box(&config)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_dpll_modes, bench_engines, bench_sweep_suites);
criterion_main!(benches);
