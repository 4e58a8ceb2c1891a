//! Kernel timings on the default rayon pool against a one-thread pool.
//!
//! Build with `--no-default-features` to time the sequential fallback; both
//! pool variants then run the same code.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::ThreadPool;

use quasimix::characters::GroupData;
use quasimix::group::parse_group_spec;
use quasimix::harmonic::{convolve, hs_profile, DensityFunction};
use quasimix::mixing::{count_progressions, lambda_form, ElementSet};
use quasimix::sampling::{bernoulli_subset, uniform_values};

const GROUPS: [&str; 3] = ["PSL(2,7)", "A6", "SL(3,3)"];

fn pools() -> Vec<(&'static str, ThreadPool)> {
    let build = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    vec![("pool", build(0)), ("one_thread", build(1))]
}

fn data(spec: &str) -> GroupData {
    GroupData::build(&parse_group_spec(spec).unwrap(), 7).unwrap()
}

fn kernels(c: &mut Criterion) {
    let pools = pools();
    for spec in GROUPS {
        let d = data(spec);
        let n = d.group.order();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut set = || ElementSet::new(n, bernoulli_subset(n, 0.5, &mut rng));
        let (a, b, s) = (set(), set(), set());
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f1 = DensityFunction::new(uniform_values(n, &mut rng));
        let f2 = DensityFunction::new(uniform_values(n, &mut rng));
        let f3 = DensityFunction::new(uniform_values(n, &mut rng)).mean_zero_part();

        let mut group = c.benchmark_group(format!("kernels/{spec}"));
        group.sample_size(10);
        for (label, pool) in &pools {
            group.bench_function(BenchmarkId::new("count", label), |bch| {
                bch.iter(|| pool.install(|| count_progressions(&d.group, &a, &b, &s)))
            });
            group.bench_function(BenchmarkId::new("lambda", label), |bch| {
                bch.iter(|| pool.install(|| lambda_form(&d.group, &f1, &f2, &f3)))
            });
            group.bench_function(BenchmarkId::new("convolve", label), |bch| {
                bch.iter(|| pool.install(|| convolve(&d.group, &f1, &f2)))
            });
            group.bench_function(BenchmarkId::new("hs_profile", label), |bch| {
                bch.iter(|| pool.install(|| hs_profile(&d.group, &d.classes, &d.table, &f1).unwrap()))
            });
        }
        group.finish();
    }
}

fn character_tables(c: &mut Criterion) {
    let pools = pools();
    let mut group = c.benchmark_group("character_table");
    group.sample_size(10);
    for spec in ["A7", "SL(3,3)"] {
        let parsed = parse_group_spec(spec).unwrap();
        for (label, pool) in &pools {
            group.bench_function(BenchmarkId::new(spec, label), |bch| {
                bch.iter(|| pool.install(|| GroupData::build(&parsed, 7).unwrap()))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, kernels, character_tables);
criterion_main!(benches);
