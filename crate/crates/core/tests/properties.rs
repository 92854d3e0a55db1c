use std::collections::BTreeMap;

use nilcomb_core::bounds::{graph_bounds, lower_bound, lower_bound_ceil};
use nilcomb_core::cohomology::{
    basic_betti, betti_numbers, find_max_independent_set, independence_polynomial, is_independent_set,
};
use nilcomb_core::corpus;
use nilcomb_core::exterior::binomial;
use nilcomb_core::graph_tools::{brute_force_independence, trinks_polynomial};
use nilcomb_core::lie::{adapt_basis, dani_mainkar, heisenberg};
use nilcomb_core::spectral::{graph_partition_function, partition_function};
use nilcomb_core::{Graph, Limits, MetricPair, PartitionFunction, Tolerances};
use proptest::prelude::*;

fn lim() -> Limits {
    Limits::default()
}

fn graph_on(n: usize) -> impl Strategy<Value = Graph> {
    let pairs = binomial(n, 2) as u32;
    (0u64..1 << pairs).prop_map(move |mask| Graph::from_pair_mask(n, mask))
}

fn subgraph_counts(g: &Graph, r: u64) -> PartitionFunction {
    let f = trinks_polynomial(g, &lim()).unwrap().substitute([Some(1), Some(r), None, None]);
    let mut counts = BTreeMap::new();
    for (e, c) in f.terms() {
        *counts.entry((e[2] as u64, e[3] as usize)).or_insert(0) += c;
    }
    PartitionFunction::from_integer_counts(&counts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basic_classes_inject(seed in any::<u64>()) {
        let alg = &corpus::random_algebras(seed, 1, 5, 4)[0];
        let full = betti_numbers(alg, &lim()).unwrap();
        for k in 0..=alg.b() {
            let bb = basic_betti(alg, k, &lim()).unwrap();
            prop_assert!(bb <= full[k], "b_B^{} = {} > b^{} = {}", k, bb, k, full[k]);
            prop_assert!(full[k] <= binomial(alg.dim(), k));
        }
    }

    #[test]
    fn adapting_is_idempotent(seed in any::<u64>()) {
        let alg = &corpus::random_algebras(seed, 1, 7, 5)[0];
        let again = adapt_basis(&alg.to_raw()).unwrap().algebra;
        prop_assert_eq!(&again, alg);
    }

    #[test]
    fn basis_change_preserves_independence_polynomial(seed in any::<u64>()) {
        let mut rng = corpus::rng(seed);
        let b = 2 + (seed % 5) as usize;
        let c = (seed / 7 % 4) as usize % (binomial(b, 2) + 1);
        let raw = corpus::random_raw(&mut rng, b, c);
        let p = corpus::random_invertible(&mut rng, raw.dim());
        let before = independence_polynomial(&adapt_basis(&raw).unwrap().algebra, &lim()).unwrap();
        let after = independence_polynomial(&adapt_basis(&raw.change_basis(&p).unwrap()).unwrap().algebra, &lim()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn dani_mainkar_matches_graph_on_seven_vertices(g in graph_on(7)) {
        let alg = dani_mainkar(&g);
        prop_assert_eq!(alg.b(), g.vertex_count());
        prop_assert_eq!(alg.c(), g.edge_count());
        let brute = brute_force_independence(&g, &lim()).unwrap();
        prop_assert_eq!(&independence_polynomial(&alg, &lim()).unwrap(), &brute);

        let set = find_max_independent_set(&alg, &lim()).unwrap();
        prop_assert_eq!(set.len(), brute.degree());
        prop_assert!(is_independent_set(&alg, &set.indices, &lim()).unwrap());
        prop_assert!(g.is_independent(set.monomial().bits()));

        let (lower, upper) = graph_bounds(&g);
        let alpha = brute.degree() as f64;
        prop_assert!(lower <= alpha + 1e-9 && alpha <= upper + 1e-9);
    }

    #[test]
    fn subgraph_polynomial_specialisations(g in graph_on(5)) {
        let f = trinks_polynomial(&g, &lim()).unwrap();
        let i_poly = f.substitute([Some(1), Some(1), Some(0), None]).as_t_polynomial().unwrap();
        prop_assert_eq!(i_poly, brute_force_independence(&g, &lim()).unwrap());
        let z = graph_partition_function(&g, &lim()).unwrap();
        prop_assert!(subgraph_counts(&g, 0).approx_eq(&z, 0.0));
        // r = 1 weights each vertex subset by 2^{e(U)}; it only agrees without edges
        prop_assert_eq!(subgraph_counts(&g, 1).approx_eq(&z, 0.0), g.edge_count() == 0);
    }

    #[test]
    fn kernel_is_metric_independent(seed in any::<u64>()) {
        let alg = &corpus::random_adapted_algebras(seed, 1, 6, 4)[0];
        let ipoly = independence_polynomial(alg, &lim()).unwrap();
        let mut rng = corpus::rng(seed ^ 0x5A5A);
        for _ in 0..3 {
            let mp = MetricPair::new(alg.clone(), corpus::random_gram(&mut rng, alg.dim())).unwrap();
            let z = partition_function(&mp, &lim(), &Tolerances::default()).unwrap();
            prop_assert_eq!(&z.zero_energy_polynomial(0.0), &ipoly);
            for k in 0..=alg.b() {
                let total: u64 = z.terms.iter().filter(|t| t.degree == k).map(|t| t.mult).sum();
                prop_assert_eq!(total, binomial(alg.b(), k) as u64);
            }
            prop_assert!(z.terms.iter().all(|t| t.energy >= 0.0));
        }
    }
}

#[test]
fn lower_bound_is_exact_on_heisenberg() {
    for n in 1..=30u64 {
        let (lower, _) = lower_bound(2 * n + 1, 2 * n).unwrap();
        assert!((lower - n as f64).abs() < 1e-9, "h_{n}: {lower}");
        assert_eq!(lower_bound_ceil(2 * n + 1, 2 * n).unwrap(), n);
    }
    for n in 1..=5 {
        let alg = heisenberg(n).unwrap();
        assert_eq!(independence_polynomial(&alg, &lim()).unwrap().degree(), n);
    }
}
