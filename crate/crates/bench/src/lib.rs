//! Criterion benchmarks for the table, graph and generation stages.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{BenchmarkId, Criterion};
use zechjoin::graph::{certify_almost_star, count_spanning_trees, full_adjacency_graph, sample_spanning_tree};
use zechjoin::joining::{materialize, tree_feedback};
use zechjoin::zech::{build_zech_table, zech_bruteforce, ZechBudget};
use zechjoin::{BinPoly, CycleCtx, TreeMethod};

fn poly(s: &str) -> BinPoly {
    s.parse().expect("valid polynomial")
}

pub fn zech_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("zech");
    for s in ["n=10;{3}", "n=15;{4}"] {
        let p = poly(s);
        group.bench_with_input(BenchmarkId::new("bruteforce", s), &p, |b, p| {
            b.iter(|| zech_bruteforce(black_box(p)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("propagate", s), &p, |b, p| {
            b.iter(|| build_zech_table(black_box(p), &ZechBudget::default()).unwrap())
        });
    }
    group.finish();
}

pub fn graphs(c: &mut Criterion) {
    let p = poly("n=10;{3}");
    let z = zech_bruteforce(&p).unwrap();
    let ctx = CycleCtx::new(&p, 31, Arc::new(z.clone())).unwrap();
    let g = full_adjacency_graph(&ctx).unwrap();
    c.bench_function("graph/full_n10_t31", |b| {
        b.iter(|| full_adjacency_graph(black_box(&ctx)).unwrap())
    });
    c.bench_function("graph/count_n10_t31", |b| {
        b.iter(|| count_spanning_trees(black_box(&g)))
    });
    c.bench_function("graph/almost_star_n10_t31", |b| {
        b.iter(|| certify_almost_star(&p, black_box(&z), 31, 6, 2000).unwrap())
    });
}

pub fn generation(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    for (s, t) in [("n=10;{3}", 31u64), ("n=15;{4}", 7)] {
        let p = poly(s);
        let ctx = CycleCtx::new(&p, t, Arc::new(zech_bruteforce(&p).unwrap())).unwrap();
        let g = full_adjacency_graph(&ctx).unwrap();
        let tree = sample_spanning_tree(&g, 1, TreeMethod::Wilson).unwrap();
        let fb = tree_feedback(&ctx, &tree).unwrap();
        group.bench_with_input(BenchmarkId::new("materialize", s), &fb, |b, fb| {
            b.iter(|| materialize(black_box(fb)).unwrap())
        });
    }
    group.finish();
}

pub fn benchmarks(c: &mut Criterion) {
    zech_tables(c);
    graphs(c);
    generation(c);
}
