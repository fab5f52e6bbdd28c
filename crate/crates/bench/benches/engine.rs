use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mvbessel_bench::{budget, partition};
use mvbessel_core::{
    contour_orthogonality_numeric, eval_weight_series, rat, Engine, Params, QuadratureConfig,
};
use num_complex::Complex64;
use std::hint::black_box;

/// A fresh engine per iteration, so memoisation does not hide the work.
fn fresh() -> Engine {
    Engine::new(Params::symbolic())
}

fn jack(c: &mut Criterion) {
    let mut g = c.benchmark_group("jack");
    for (n, parts) in [(2, vec![3, 1]), (3, vec![2, 1, 1]), (3, vec![3, 2])] {
        let l = partition(&parts);
        g.bench_with_input(BenchmarkId::new(format!("n={n}"), &l), &l, |b, l| {
            b.iter(|| fresh().jack(black_box(l), n).unwrap())
        });
    }
    g.finish();
}

fn bessel(c: &mut Criterion) {
    let mut g = c.benchmark_group("bessel");
    g.sample_size(10);
    for (n, parts) in [(1, vec![6]), (2, vec![2, 2]), (3, vec![2, 1])] {
        let l = partition(&parts);
        g.bench_with_input(BenchmarkId::new(format!("n={n}"), &l), &l, |b, l| {
            b.iter(|| fresh().bessel(black_box(l), n).unwrap())
        });
    }
    g.bench_function("budget n=2/w<=4", |b| {
        b.iter(|| {
            let e = fresh();
            for (n, l) in budget(2, 4) {
                e.bessel(&l, n).unwrap();
            }
        })
    });
    g.finish();
}

fn verify_theorem(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_theorem");
    g.sample_size(10);
    for (n, w) in [(1, 4), (2, 3)] {
        g.bench_function(format!("n={n}/w<={w}"), |b| {
            b.iter(|| fresh().verify_theorem(n, w).unwrap())
        });
    }
    g.finish();
}

fn contour(c: &mut Criterion) {
    let mut g = c.benchmark_group("contour");
    g.sample_size(10);
    let cfg = QuadratureConfig::default();
    let (l, m) = (partition(&[2]), partition(&[1]));
    g.bench_function("n=1/[2]x[1]", |b| {
        b.iter(|| contour_orthogonality_numeric(&l, &m, 1, &rat(3), &rat(1), &cfg).unwrap())
    });
    let cfg = cfg.with_tolerance(1e-8);
    g.bench_function("n=2/[1]x[]", |b| {
        b.iter(|| {
            contour_orthogonality_numeric(
                &partition(&[1]),
                &partition(&[]),
                2,
                &rat(3),
                &rat(2),
                &cfg,
            )
            .unwrap()
        })
    });
    let x = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
    g.bench_function("weight-series/n=2", |b| {
        b.iter(|| {
            eval_weight_series(
                black_box(&x),
                &rat(3),
                &rat(1),
                &QuadratureConfig::default(),
            )
            .unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, jack, bessel, verify_theorem, contour);
criterion_main!(benches);
