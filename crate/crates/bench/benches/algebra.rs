use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use graphprod::{canonical_form, family_for, graph_nth_root, Graph, PrimeRegistry, Product};
use graphprod_bench::{dense_series, strong_grid, torus};
use std::hint::black_box;

fn canon(c: &mut Criterion) {
    let t = torus(5, 6).unwrap();
    let petersen = Graph::from_edges(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
        ],
    )
    .unwrap();
    c.bench_function("canon/torus_5x6", |b| {
        b.iter(|| canonical_form(black_box(&t)))
    });
    c.bench_function("canon/petersen", |b| {
        b.iter(|| canonical_form(black_box(&petersen)))
    });
}

fn products(c: &mut Criterion) {
    let a = Graph::cycle(6);
    let b = Graph::path(5);
    for op in [
        Product::Cartesian,
        Product::Strong,
        Product::Direct,
        Product::Lex,
    ] {
        c.bench_function(&format!("product/{op}/c6_p5"), |bench| {
            bench.iter(|| op.apply(black_box(&a), black_box(&b)))
        });
    }
}

fn factor(c: &mut Criterion) {
    c.bench_function("registry/cartesian_6", |b| {
        b.iter(|| PrimeRegistry::build(Product::Cartesian, 6))
    });
    let cart = PrimeRegistry::build(Product::Cartesian, 6).unwrap();
    let strong = PrimeRegistry::build(Product::Strong, 6).unwrap();
    let t = torus(5, 6).unwrap();
    let s = strong_grid(3, 4).unwrap();
    c.bench_function("factor/cartesian/torus_5x6", |b| {
        b.iter(|| cart.factor(black_box(&t)))
    });
    c.bench_function("factor/strong/p3_k2_p4", |b| {
        b.iter(|| strong.factor(black_box(&s)))
    });
    let base = Graph::cycle(5)
        .disjoint_union(&Graph::path(3))
        .disjoint_union(&Graph::complete(2));
    let sq = family_for(&base, Product::Cartesian).unwrap();
    let sq = graphprod::engine::graph_product(&sq, &sq, &cart).unwrap();
    c.bench_function("root/cartesian/square", |b| {
        b.iter(|| graph_nth_root(black_box(&sq), 2, &cart))
    });
}

fn series(c: &mut Criterion) {
    let f = dense_series(Some(6));
    c.bench_function("series/mul_bound_6", |b| b.iter(|| black_box(&f).mul(&f)));
    let cube = f.pow(3);
    c.bench_function("series/cube_root", |b| {
        b.iter(|| black_box(&cube).nth_root(3))
    });
    let g = dense_series(Some(6));
    let p = f.mul(&g).unwrap();
    c.bench_function("series/cancel", |b| {
        b.iter_batched(
            || p.clone(),
            |p| p.cancel(&g, graphprod::Side::Right),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, canon, products, factor, series);
criterion_main!(benches);
