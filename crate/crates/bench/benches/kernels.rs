use std::hint::black_box;

use criterion::{Criterion, criterion_group, criterion_main};

use hspec_bench::bench_families;
use hspec_core::{
    GridFunction, PvWindow, QuadratureSpec, dawson_scaled, hilbert_grid, hilbert_pv_pair,
    spectral_integral,
};

fn bench_dawson(c: &mut Criterion) {
    let mut group = c.benchmark_group("dawson_scaled");
    for x in [0.5_f64, 5.0, 20.0] {
        group.bench_function(format!("x_{x}"), |b| b.iter(|| dawson_scaled(black_box(x))));
    }
    group.finish();
}

fn bench_hilbert_pv(c: &mut Criterion) {
    let spec = QuadratureSpec::default();
    let window = PvWindow::default();
    let mut group = c.benchmark_group("hilbert_pv");
    for family in bench_families() {
        let pair = family.resolve().unwrap();
        if pair.decay_class == hspec_core::DecayClass::NonDecaying {
            continue;
        }
        group.bench_function(family.family_id.name(), |b| {
            b.iter(|| hilbert_pv_pair(&pair, black_box(0.7), &window, &spec).unwrap())
        });
    }
    group.finish();
}

fn bench_hilbert_grid(c: &mut Criterion) {
    let pair = bench_families()[0].resolve().unwrap();
    let grid = GridFunction::sample_symmetric(|x| pair.f(x), 100.0, 1 << 14).unwrap();
    c.bench_function("hilbert_grid_16k", |b| {
        b.iter(|| hilbert_grid(black_box(&grid)).unwrap())
    });
}

fn bench_spectral_integral(c: &mut Criterion) {
    let spec = QuadratureSpec::default();
    let mut group = c.benchmark_group("spectral_integral");
    for family in bench_families() {
        let pair = family.resolve().unwrap();
        group.bench_function(family.family_id.name(), |b| {
            b.iter(|| spectral_integral(black_box(&pair), &spec))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_dawson,
    bench_hilbert_pv,
    bench_hilbert_grid,
    bench_spectral_integral
);
criterion_main!(benches);
