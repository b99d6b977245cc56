use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use latticelab::atlas::{build_atlas, enumerate_canonical_forms, enumerate_lattices};
use latticelab::shellability::{el_search, LexMode};
use latticelab::{canonical_form, classify, fixtures, ClassifyOptions, DEFAULT_EL_BUDGET};

fn canonical(c: &mut Criterion) {
    let l = fixtures::fig5c();
    c.bench_function("canonical_form/fig5c", |b| {
        b.iter(|| canonical_form(black_box(l.poset())))
    });
}

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for n in [7, 8] {
        g.bench_function(format!("n={n}"), |b| {
            b.iter(|| enumerate_canonical_forms(black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn classify_all(c: &mut Criterion) {
    let lattices = enumerate_lattices(7).unwrap();
    let opts = ClassifyOptions::default();
    c.bench_function("classify/all n=7", |b| {
        b.iter(|| {
            lattices
                .iter()
                .map(|l| classify(l, &opts))
                .collect::<Vec<_>>()
        })
    });
}

fn el(c: &mut Criterion) {
    let mut g = c.benchmark_group("el_search");
    for (name, l) in [
        ("fig5c", fixtures::fig5c()),
        ("fig6b", fixtures::fig6b()),
        ("fig5a", fixtures::hexagon()),
    ] {
        g.bench_function(name, |b| {
            b.iter_batched(
                || l.clone(),
                |l| el_search(&l, DEFAULT_EL_BUDGET, LexMode::Weak),
                BatchSize::SmallInput,
            )
        });
    }
    g.finish();
}

fn atlas(c: &mut Criterion) {
    let mut g = c.benchmark_group("atlas");
    g.sample_size(10);
    g.bench_function("n<=8", |b| {
        b.iter(|| build_atlas(8, Some(DEFAULT_EL_BUDGET)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, canonical, enumerate, classify_all, el, atlas);
criterion_main!(benches);
