use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use rx3_bench::random_coloring;
use rx3_core::{
    construct_coloring, has_rainbow_tree, verify_3rainbow, verify_3rainbow_parallel, Vertex, VertexTriple,
};

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_3rainbow");
    for t in [10, 30, 60] {
        let coloring = construct_coloring(t).unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", t), &coloring, |b, col| {
            b.iter(|| verify_3rainbow(black_box(col)))
        });
    }
    let big = construct_coloring(60).unwrap();
    group.bench_function("parallel/60x4", |b| {
        b.iter(|| verify_3rainbow_parallel(black_box(&big), 4).unwrap())
    });
    group.finish();
}

fn single_triple(c: &mut Criterion) {
    // three W-vertices whose cheapest tree needs the outside bridge
    let mut coloring = random_coloring(40, 6, 1);
    let codes: Vec<_> = [(1, 2), (1, 3), (2, 3)]
        .into_iter()
        .map(Into::into)
        .chain(coloring.codes()[3..].iter().copied())
        .collect();
    coloring = rx3_core::BipartiteColoring::new(6, codes).unwrap();
    let s = VertexTriple::new(Vertex::W(1), Vertex::W(2), Vertex::W(3)).unwrap();
    c.bench_function("has_rainbow_tree/bridge", |b| {
        b.iter(|| has_rainbow_tree(black_box(&coloring), &s).unwrap())
    });
}

criterion_group!(benches, verify, single_triple);
criterion_main!(benches);
