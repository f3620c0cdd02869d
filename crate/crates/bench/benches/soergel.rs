use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use motkit_core::smod::{bott_samelson, decompose, SoergelCatalog};
use motkit_core::{build_coinvariant, build_root_datum, HeckeAlgebra, WeylGroup};

fn coinvariants(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_coinvariant");
    for (letter, rank) in [("A", 2), ("B", 2), ("G", 2), ("A", 3)] {
        let datum = build_root_datum(letter, rank).unwrap();
        group.bench_function(BenchmarkId::from_parameter(format!("{letter}{rank}")), |b| {
            b.iter(|| build_coinvariant(black_box(&datum), 5).unwrap())
        });
    }
    group.finish();
}

fn kl_basis(c: &mut Criterion) {
    let datum = build_root_datum("A", 3).unwrap();
    c.bench_function("kl_basis A3", |b| {
        b.iter(|| {
            let h = HeckeAlgebra::new(Arc::new(WeylGroup::new(datum.clone()).unwrap()));
            black_box(h.kl_basis(h.group().longest()))
        })
    });
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    for (letter, word) in [("A", vec![0, 1, 0]), ("B", vec![0, 1, 0, 1]), ("B", vec![1, 0, 1, 0, 1])] {
        let alg = Arc::new(build_coinvariant(&build_root_datum(letter, 2).unwrap(), 5).unwrap());
        let bs = bott_samelson(&alg, &word).unwrap();
        let name = format!("{letter}2 {}", motkit_core::coxeter::format_word(&word));
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| decompose(black_box(&bs), 0).unwrap()));
    }
    group.finish();
}

fn p_canonical_basis(c: &mut Criterion) {
    let mut group = c.benchmark_group("p_canonical_basis");
    group.sample_size(10);
    for (letter, p) in [("B", 3u32), ("G", 7)] {
        let alg = Arc::new(build_coinvariant(&build_root_datum(letter, 2).unwrap(), p).unwrap());
        group.bench_function(BenchmarkId::from_parameter(format!("{letter}2 p={p}")), |b| {
            b.iter(|| {
                let mut catalog = SoergelCatalog::new(Arc::clone(&alg), 0).unwrap();
                let n = catalog.group().order();
                for w in 0..n {
                    black_box(catalog.p_canonical(w).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, coinvariants, kl_basis, decomposition, p_canonical_basis);
criterion_main!(benches);
