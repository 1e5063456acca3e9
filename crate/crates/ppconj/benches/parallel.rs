//! Benchmarks comparing the sequential batch helpers with their
//! data-parallel counterparts (enabled by the default `parallel` feature).
//!
//! Run with `cargo bench -p ppconj`. Without the `parallel` feature only the
//! sequential side is measured.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ppconj::batch;
use ppconj::exactnum::{rational, FieldSpec, QuadExt};
use ppconj::moebius::MoebiusMap;
use ppconj::pmap::PiecewiseProjMap;
use ppconj::random::RandomClass;

fn q(n: i64, d: i64) -> QuadExt {
    QuadExt::from_rational(rational(n, d), FieldSpec::rational())
}

/// A map with a few projective pieces, taken to a moderate power so that
/// each evaluation walks a realistic number of pieces.
fn workload_map() -> PiecewiseProjMap {
    let up = MoebiusMap::translation(q(1, 1));
    let mid = MoebiusMap::new(q(1, 1), q(-2, 1), q(3, 2), q(-2, 1)).unwrap();
    let z = PiecewiseProjMap::new(vec![q(0, 1), q(1, 1)], vec![up.clone(), mid, up]).unwrap();
    z.pow(6)
}

fn bench_max_deviation(c: &mut Criterion) {
    let f = workload_map();
    let g = f.compose(&f.inverse()).compose(&f);
    let mut group = c.benchmark_group("max_deviation");
    for n in [1_000usize, 100_000] {
        let points: Vec<f64> = (0..n).map(|i| -20.0 + i as f64 * (40.0 / n as f64)).collect();
        group.bench_with_input(BenchmarkId::new("seq", n), &points, |b, pts| {
            b.iter(|| batch::max_deviation_on_seq(&f, &g, pts))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", n), &points, |b, pts| {
            b.iter(|| batch::max_deviation_on_par(&f, &g, pts))
        });
    }
    group.finish();
}

fn bench_sample_curve(c: &mut Criterion) {
    let f = workload_map();
    let mut group = c.benchmark_group("sample_curve");
    for n in [10_000usize, 200_000] {
        group.bench_with_input(BenchmarkId::new("seq", n), &n, |b, &n| {
            b.iter(|| batch::sample_curve_seq(&f, -20.0, 20.0, n))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", n), &n, |b, &n| {
            b.iter(|| batch::sample_curve_par(&f, -20.0, 20.0, n))
        });
    }
    group.finish();
}

fn bench_sweep(c: &mut Criterion) {
    let seeds: Vec<u64> = (0..24).collect();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| batch::sweep_seq(&seeds, RandomClass::General))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |b| {
        b.iter(|| batch::sweep_par(&seeds, RandomClass::General))
    });
    group.finish();
}

criterion_group!(benches, bench_max_deviation, bench_sample_curve, bench_sweep);
criterion_main!(benches);
