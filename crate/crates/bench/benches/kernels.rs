use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nilcomb_core::cohomology::{basic_betti, betti, independence_polynomial};
use nilcomb_core::graph_tools::trinks_polynomial;
use nilcomb_core::lie::{dani_mainkar, heisenberg};
use nilcomb_core::spectral::{graph_partition_function, heisenberg_partition_closed_form, partition_function};
use nilcomb_core::verify::{hprime_gram, paired_heisenberg_2};
use nilcomb_core::{corpus, Graph, Limits, MetricPair, Tolerances};

fn basic_cohomology(c: &mut Criterion) {
    let lim = Limits::default();
    let mut group = c.benchmark_group("basic_betti");
    for n in [3, 4, 5] {
        let h = heisenberg(n).unwrap();
        group.bench_with_input(BenchmarkId::new("heisenberg_middle", n), &h, |b, h| {
            b.iter(|| basic_betti(black_box(h), n, &lim).unwrap())
        });
    }
    let sparse = dani_mainkar(&corpus::random_graph(&mut corpus::rng(1), 12, 0.3));
    group.bench_function("independence_polynomial_12_vertices", |b| {
        b.iter(|| independence_polynomial(black_box(&sparse), &lim).unwrap())
    });
    group.finish();
}

fn full_complex_rank(c: &mut Criterion) {
    let lim = Limits::default();
    let mut group = c.benchmark_group("betti");
    for n in [2, 3] {
        let h = heisenberg(n).unwrap();
        group.bench_with_input(BenchmarkId::new("heisenberg_middle", n), &h, |b, h| {
            b.iter(|| betti(black_box(h), n + 1, &lim).unwrap())
        });
    }
    let alg = &corpus::random_algebras(7, 1, 6, 4)[0];
    group.bench_function("random_b6_c4_degree_4", |b| b.iter(|| betti(black_box(alg), 4, &lim).unwrap()));
    group.finish();
}

fn spectra(c: &mut Criterion) {
    let lim = Limits::default();
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("partition_function");
    for n in [2, 3, 4] {
        let mp = MetricPair::canonical(heisenberg(n).unwrap());
        group.bench_with_input(BenchmarkId::new("eigensolve_heisenberg", n), &mp, |b, mp| {
            b.iter(|| partition_function(black_box(mp), &lim, &tol).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("closed_form_heisenberg", n), &n, |b, &n| {
            b.iter(|| heisenberg_partition_closed_form(black_box(n)).unwrap())
        });
    }
    let hprime = MetricPair::new(paired_heisenberg_2(), hprime_gram()).unwrap();
    group.bench_function("eigensolve_hprime", |b| {
        b.iter(|| partition_function(black_box(&hprime), &lim, &tol).unwrap())
    });
    let g = Graph::cycle(10);
    group.bench_function("combinatorial_cycle_10", |b| {
        b.iter(|| graph_partition_function(black_box(&g), &lim).unwrap())
    });
    group.finish();
}

fn subgraph_polynomial(c: &mut Criterion) {
    let lim = Limits::default();
    let mut group = c.benchmark_group("trinks");
    for n in [4, 6, 8] {
        let g = Graph::cycle(n);
        group.bench_with_input(BenchmarkId::new("cycle", n), &g, |b, g| {
            b.iter(|| trinks_polynomial(black_box(g), &lim).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, basic_cohomology, full_complex_rank, spectra, subgraph_polynomial);
criterion_main!(benches);
