//! Seeded test corpora: labeled graphs, random 2-step algebras, invertible matrices and
//! Gram matrices. Every generator is deterministic in its seed.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{binomial, Rational};
use crate::lie::{adapt_basis, Graph, RawAlgebra, TwoStepAlgebra};
use crate::linalg::{self, RatMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = binomial(n, 2);
    (0u64..1 << pairs).map(move |mask| Graph::from_pair_mask(n, mask))
}

/// Every labeled graph on at most `max_n` vertices.
pub fn all_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (0..=max_n).flat_map(all_graphs).collect()
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).expect("simple graph")
}

/// `count` graphs with vertex counts drawn uniformly from `sizes` and edge density 1/2.
pub fn random_graphs(seed: u64, count: usize, sizes: std::ops::RangeInclusive<usize>) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(sizes.clone());
            random_graph(&mut r, n, 0.5)
        })
        .collect()
}

fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::from_integer(rng.gen_range(-bound..=bound).into())
}

/// Random invertible integer matrix: permuted product of unit lower and upper
/// triangular matrices with entries in `-1..=1`.
pub fn random_invertible<R: Rng>(rng: &mut R, d: usize) -> RatMatrix {
    let mut l = linalg::identity(d);
    let mut u = linalg::identity(d);
    for i in 0..d {
        for j in 0..i {
            l[i][j] = small_int(rng, 1);
            u[j][i] = small_int(rng, 1);
        }
    }
    let mut m = linalg::mat_mul(&l, &u);
    m.shuffle(rng);
    m
}

/// Random positive-definite Gram matrix `M^T M + I`, `M` with entries in `-2..=2`.
pub fn random_gram<R: Rng>(rng: &mut R, d: usize) -> RatMatrix {
    let m: RatMatrix = (0..d)
        .map(|_| (0..d).map(|_| small_int(rng, 2)).collect())
        .collect();
    let mut g = linalg::mat_mul(&linalg::transpose(&m), &m);
    for (i, row) in g.iter_mut().enumerate() {
        row[i] += Rational::one();
    }
    g
}

/// Random adapted algebra with first Betti number `b` and commutator dimension `c`:
/// sparse structure constants in `-2..=2`, redrawn until they have full rank.
pub fn random_adapted<R: Rng>(rng: &mut R, b: usize, c: usize) -> TwoStepAlgebra {
    assert!(c <= binomial(b, 2), "c exceeds C(b, 2)");
    loop {
        let mut entries = Vec::new();
        for i in 0..b {
            for j in i + 1..b {
                for k in 0..c {
                    if rng.gen_bool(0.3) {
                        let v = small_int(rng, 2);
                        if !v.is_zero() {
                            entries.push((i, j, k, v));
                        }
                    }
                }
            }
        }
        if let Ok(alg) = TwoStepAlgebra::new(b, c, entries) {
            return alg;
        }
    }
}

/// A random algebra written in a random basis, so that adapting it is nontrivial.
pub fn random_raw<R: Rng>(rng: &mut R, b: usize, c: usize) -> RawAlgebra {
    let alg = random_adapted(rng, b, c);
    let p = random_invertible(rng, alg.dim());
    alg.to_raw().change_basis(&p).expect("invertible change of basis")
}

/// `count` validated algebras with `2 <= b <= max_b` and `c <= min(max_c, C(b, 2))`,
/// each generated in a random basis and then adapted.
pub fn random_algebras(seed: u64, count: usize, max_b: usize, max_c: usize) -> Vec<TwoStepAlgebra> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let b = r.gen_range(2..=max_b);
            let c = r.gen_range(0..=max_c.min(binomial(b, 2)));
            let raw = random_raw(&mut r, b, c);
            adapt_basis(&raw).expect("random algebra is 2-step").algebra
        })
        .collect()
}

/// `count` algebras drawn directly in adapted form, with structure constants in `-2..=2`.
/// Spectra of these stay within a few decades, unlike adapted random-basis algebras.
pub fn random_adapted_algebras(seed: u64, count: usize, max_b: usize, max_c: usize) -> Vec<TwoStepAlgebra> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let b = r.gen_range(2..=max_b);
            let c = r.gen_range(0..=max_c.min(binomial(b, 2)));
            random_adapted(&mut r, b, c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| all_graphs(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 8, 64, 1024]);
        assert_eq!(all_graphs_up_to(3).len(), 12);
    }

    #[test]
    fn generators_are_seeded() {
        assert_eq!(random_graphs(7, 5, 6..=7), random_graphs(7, 5, 6..=7));
        let a = random_algebras(3, 4, 6, 4);
        let b = random_algebras(3, 4, 6, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn invertible_and_positive_definite() {
        let mut r = rng(11);
        for d in 1..8 {
            assert!(linalg::inverse(&random_invertible(&mut r, d)).is_some());
            assert!(linalg::check_positive_definite(&random_gram(&mut r, d)).is_ok());
        }
    }

    #[test]
    fn adapted_shape_is_preserved() {
        let mut r = rng(5);
        for _ in 0..20 {
            let b = r.gen_range(2..=6);
            let c = r.gen_range(0..=binomial(b, 2).min(4));
            let alg = adapt_basis(&random_raw(&mut r, b, c)).unwrap().algebra;
            assert_eq!((alg.b(), alg.c()), (b, c));
        }
    }
}
