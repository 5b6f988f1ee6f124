//! Benchmarks the per-antichain redundancy phase, sequential against the
//! rayon pool, plus the end-to-end decomposition on an empirical joint of
//! the shape the trainer produces (five 8-level sources, ten labels).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use repcx_core::distribution::MarginalCache;
use repcx_core::isx;
use repcx_core::pid::lattice_for;
use repcx_core::random::{random_joint, RandomJointSpec};

fn redundancy_phase(c: &mut Criterion) {
    let mut group = c.benchmark_group("redundancies");
    for n in [3usize, 4] {
        let dist = random_joint::<f64>(RandomJointSpec::new(n, 4, 6).with_density(0.4), 42);
        let cache = MarginalCache::build(&dist);
        let lattice = lattice_for(n).unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, _| {
            b.iter(|| isx::redundancies_seq(&dist, &cache, &lattice))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, _| {
            b.iter(|| isx::redundancies_par(&dist, &cache, &lattice))
        });
    }
    group.finish();
}

fn five_source_layer(c: &mut Criterion) {
    let mut group = c.benchmark_group("layer_n5");
    group.sample_size(10);
    let dist = random_joint::<f64>(RandomJointSpec::new(5, 8, 10).with_density(0.25), 7);
    let cache = MarginalCache::build(&dist);
    let lattice = lattice_for(5).unwrap();
    group.bench_function("sequential", |b| {
        b.iter(|| isx::redundancies_seq(&dist, &cache, &lattice))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| isx::redundancies_par(&dist, &cache, &lattice))
    });
    group.finish();
}

criterion_group!(benches, redundancy_phase, five_source_layer);
criterion_main!(benches);
