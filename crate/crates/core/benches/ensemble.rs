use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qca_core::entanglement::q_distribution;
use qca_core::experiment::{preset, run_experiment};
use qca_core::operator::{build_map, MapConfig};
use qca_core::par::Execution;
use qca_core::spectral::SpectralData;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn map_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_map");
    for n in [6usize, 8] {
        let cfg = MapConfig::qca_chain(n, 2, 40, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &cfg, |b, cfg| {
            b.iter(|| build_map(black_box(cfg)).unwrap())
        });
    }
    group.finish();
}

fn spectral(c: &mut Criterion) {
    let u = build_map(&MapConfig::qca_chain(7, 2, 40, 3).unwrap()).unwrap();
    c.bench_function("spectral_data_n7", |b| {
        b.iter(|| SpectralData::from_unitary(black_box(&u)).unwrap())
    });
}

fn q_ensemble(c: &mut Criterion) {
    let cfg = MapConfig::qca_chain(8, 1, 40, 5).unwrap();
    let mut group = c.benchmark_group("q_distribution_n8_x16");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| q_distribution(black_box(&cfg), 16, exec).unwrap())
        });
    }
    group.finish();
}

fn spectral_ensemble(c: &mut Criterion) {
    let mut spec = preset("fig4").unwrap();
    spec.map.qubits = 6;
    spec.ensemble_size = 32;
    let mut group = c.benchmark_group("run_experiment_n6_x32");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| run_experiment(black_box(&spec), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, map_build, spectral, q_ensemble, spectral_ensemble);
criterion_main!(benches);
