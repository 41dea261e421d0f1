use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyfactor::{
    constant_general, equilibrium_disk, leja_points, monic_chebyshev, sharpness_experiment, CompactSet, Complex64,
};
use rayon::{ThreadPool, ThreadPoolBuilder};

fn pools() -> Vec<(&'static str, ThreadPool)> {
    vec![
        ("sequential", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn general_path(c: &mut Criterion) {
    let set = CompactSet::disk(1.0).unwrap();
    let measure = equilibrium_disk(1.0, 1024).unwrap();
    let mut group = c.benchmark_group("constant_general");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, 256), |b| {
            b.iter(|| pool.install(|| constant_general(&set, &measure, 256, 1e-8).unwrap()))
        });
    }
    group.finish();
}

fn sharpness(c: &mut Criterion) {
    let set = CompactSet::segment(2.0).unwrap();
    let u = Complex64::new(2.0, 0.0);
    let degrees = [32, 64, 128, 256];
    let mut group = c.benchmark_group("sharpness");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(name, |b| {
            b.iter(|| pool.install(|| sharpness_experiment(&set, u, &degrees, 1e-8).unwrap()))
        });
    }
    group.finish();
}

fn sup_norm(c: &mut Criterion) {
    let set = CompactSet::segment(2.0).unwrap();
    let p = monic_chebyshev(400, 2.0).unwrap();
    let mut group = c.benchmark_group("sup_norm");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, 400), |b| b.iter(|| pool.install(|| p.sup_norm(&set, 1e-10).unwrap())));
    }
    group.finish();
}

fn leja(c: &mut Criterion) {
    let set = CompactSet::segment_union(vec![(-2.0, -1.0), (0.5, 3.0)]).unwrap();
    let mut group = c.benchmark_group("leja");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, 256), |b| {
            b.iter(|| pool.install(|| leja_points(&set, 256, 20 * 256).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, general_path, sharpness, sup_norm, leja);
criterion_main!(benches);
