//! Brute-force graph oracles: independent-set counts and the four-variable subgraph
//! counting polynomial `F(G; q, r, s, t)`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cohomology::GradedPolynomial;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::lie::Graph;

/// `s_k(G)` for every `k`, by subset enumeration with adjacency-mask pruning.
pub fn brute_force_independence(g: &Graph, limits: &Limits) -> Result<GradedPolynomial> {
    Limits::check("enumeration vertex count", g.vertex_count(), limits.enumeration)?;
    let n = g.vertex_count();
    let mut counts = vec![0u64; n + 1];
    fn walk(g: &Graph, cand: u64, size: usize, counts: &mut [u64]) {
        counts[size] += 1;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // only vertices above v remain candidates, so each set is counted once
            walk(g, rest & !g.neighbours(v), size + 1, counts);
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    walk(g, all, 0, &mut counts);
    Ok(GradedPolynomial::new(counts))
}

/// Number of connected components of `(vertices, edges)`, isolated vertices included.
pub fn connected_components(vertices: u64, edges: &[(usize, usize)]) -> Result<usize> {
    let mut parent: Vec<usize> = (0..64).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut count = vertices.count_ones() as usize;
    for &(i, j) in edges {
        if i >= 64 || j >= 64 || vertices >> i & 1 == 0 || vertices >> j & 1 == 0 {
            return Err(Error::InvalidGraph(format!(
                "edge ({}, {}) leaves the vertex subset",
                i + 1,
                j + 1
            )));
        }
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    Ok(count)
}

/// Polynomial in `q, r, s, t` with nonnegative integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<[u32; 4], u64>,
}

impl MultiPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, exps: [u32; 4], c: u64) {
        if c == 0 {
            return;
        }
        *self.terms.entry(exps).or_insert(0) += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u32; 4], u64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn coeff(&self, exps: [u32; 4]) -> u64 {
        self.terms.get(&exps).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitutes nonnegative integers for some of the variables (`[q, r, s, t]`), with
    /// `0^0 = 1`. Substituted variables keep exponent 0 in the result.
    pub fn substitute(&self, values: [Option<u64>; 4]) -> MultiPoly {
        let mut out = MultiPoly::new();
        for (exps, c) in &self.terms {
            let mut coeff = *c;
            let mut e = *exps;
            for v in 0..4 {
                if let Some(x) = values[v] {
                    coeff *= x.pow(e[v]);
                    e[v] = 0;
                }
            }
            out.add_term(e, coeff);
        }
        out
    }

    /// Reads a polynomial in `t` alone (all other exponents zero).
    pub fn as_t_polynomial(&self) -> Option<GradedPolynomial> {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e[..3] != [0, 0, 0] {
                return None;
            }
            let t = e[3] as usize;
            if coeffs.len() <= t {
                coeffs.resize(t + 1, 0);
            }
            coeffs[t] += c;
        }
        Some(GradedPolynomial::new(coeffs))
    }

    pub fn eval(&self, q: f64, r: f64, s: f64, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, &c)| {
                c as f64 * q.powi(e[0] as i32) * r.powi(e[1] as i32) * s.powi(e[2] as i32)
                    * t.powi(e[3] as i32)
            })
            .sum()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let vars: String = ["q", "r", "s", "t"]
                    .iter()
                    .zip(e)
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
                    .collect();
                match (c, vars.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => vars,
                    _ => format!("{c}{vars}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    q: u32,
    r: u32,
    s: u32,
    t: u32,
    c: u64,
}

#[derive(Serialize, Deserialize)]
struct MultiPolyJson {
    terms: Vec<TermJson>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MultiPolyJson {
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| TermJson {
                    q: e[0],
                    r: e[1],
                    s: e[2],
                    t: e[3],
                    c,
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = MultiPolyJson::deserialize(de)?;
        let mut out = MultiPoly::new();
        for t in raw.terms {
            out.add_term([t.q, t.r, t.s, t.t], t.c);
        }
        Ok(out)
    }
}

/// `F(G; q, r, s, t) = Σ_U Σ_{A ⊆ E(G[U])} q^{k(U, A)} r^{|A|} s^{|E(G[U])|} t^{|U|}`.
pub fn trinks_polynomial(g: &Graph, limits: &Limits) -> Result<MultiPoly> {
    Limits::check("subgraph-polynomial vertex count", g.vertex_count(), limits.trinks_vertices)?;
    Limits::check("subgraph-polynomial edge count", g.edge_count(), limits.trinks_edges)?;
    let n = g.vertex_count();
    let parts: Vec<MultiPoly> = (0..1u64 << n)
        .into_par_iter()
        .map(|u| {
            let induced: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .copied()
                .filter(|&(i, j)| u >> i & 1 == 1 && u >> j & 1 == 1)
                .collect();
            let e = induced.len() as u32;
            let size = u.count_ones();
            let mut local = MultiPoly::new();
            let mut chosen = Vec::with_capacity(induced.len());
            for a in 0..1u64 << induced.len() {
                chosen.clear();
                chosen.extend((0..induced.len()).filter(|&i| a >> i & 1 == 1).map(|i| induced[i]));
                let k = connected_components(u, &chosen).expect("induced edges lie in U") as u32;
                local.add_term([k, a.count_ones(), e, size], 1);
            }
            local
        })
        .collect();
    let mut out = MultiPoly::new();
    for p in parts {
        for (e, c) in p.terms() {
            out.add_term(e, c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn naive_counts(g: &Graph) -> Vec<u64> {
        let n = g.vertex_count();
        let mut counts = vec![0u64; n + 1];
        for mask in 0u64..1 << n {
            if g.is_independent(mask) {
                counts[mask.count_ones() as usize] += 1;
            }
        }
        GradedPolynomial::new(counts).coeffs().to_vec()
    }

    #[test]
    fn independence_examples() {
        let p3 = brute_force_independence(&Graph::path(3), &lim()).unwrap();
        assert_eq!(p3.coeffs(), &[1, 3, 1]);
        let p5 = brute_force_independence(&Graph::path(5), &lim()).unwrap();
        assert_eq!(p5.coeffs(), &[1, 5, 6, 1]);
        for n in 1..8 {
            let kn = brute_force_independence(&Graph::complete(n), &lim()).unwrap();
            assert_eq!(kn.coeffs(), &[1, n as u64]);
        }
        assert_eq!(
            brute_force_independence(&Graph::empty(0), &lim()).unwrap().coeffs(),
            &[1]
        );
        let tight = Limits {
            enumeration: 4,
            ..Limits::default()
        };
        assert!(brute_force_independence(&Graph::path(5), &tight).is_err());
    }

    #[test]
    fn display_orders_by_exponent() {
        let f = trinks_polynomial(&Graph::complete(2), &lim()).unwrap();
        assert_eq!(f.to_string(), "1 + 2qt + qrst^2 + q^2st^2");
        assert_eq!(MultiPoly::new().to_string(), "0");
    }

    #[test]
    fn path_formula() {
        for n in 1..15i64 {
            let p = brute_force_independence(&Graph::path(n as usize), &lim()).unwrap();
            for k in 0..=n {
                let expect = crate::exterior::binomial_signed(n + 1 - k, k) as u64;
                assert_eq!(p.coeff(k as usize), expect);
            }
        }
    }

    #[test]
    fn component_examples() {
        assert_eq!(connected_components(0b111, &[]).unwrap(), 3);
        assert_eq!(connected_components(0b111, &[(0, 1), (1, 2)]).unwrap(), 1);
        assert_eq!(connected_components(0b1111, &[(0, 1), (2, 3)]).unwrap(), 2);
        assert_eq!(connected_components(0, &[]).unwrap(), 0);
        assert!(connected_components(0b011, &[(1, 2)]).is_err());
    }

    #[test]
    fn trinks_examples() {
        let k1 = trinks_polynomial(&Graph::empty(1), &lim()).unwrap();
        let mut expect = MultiPoly::new();
        expect.add_term([0, 0, 0, 0], 1);
        expect.add_term([1, 0, 0, 1], 1);
        assert_eq!(k1, expect);
        // K_2: empty, two single vertices, the edgeless pair and the edge
        let k2 = trinks_polynomial(&Graph::complete(2), &lim()).unwrap();
        assert_eq!(k2.coeff([1, 0, 0, 1]), 2);
        assert_eq!(k2.coeff([2, 0, 1, 2]), 1);
        assert_eq!(k2.coeff([1, 1, 1, 2]), 1);
        assert_eq!(k2.len(), 4);
        let tight = Limits {
            trinks_edges: 2,
            ..Limits::default()
        };
        assert!(trinks_polynomial(&Graph::path(4), &tight).is_err());
    }

    #[test]
    fn trinks_counts_vertex_subsets_weighted_by_edge_subsets() {
        for g in [Graph::path(4), Graph::cycle(5), Graph::complete(4)] {
            let f = trinks_polynomial(&g, &lim()).unwrap();
            let at_one = f.substitute([Some(1), Some(1), Some(1), Some(1)]).coeff([0; 4]);
            let expect: u64 = (0u64..1 << g.vertex_count())
                .map(|u| 1u64 << g.induced_edge_count(u))
                .sum();
            assert_eq!(at_one, expect);
        }
    }

    #[test]
    fn zero_power_zero_is_one() {
        let f = trinks_polynomial(&Graph::path(3), &lim()).unwrap();
        let at_r0 = f.substitute([Some(1), Some(0), None, None]);
        // r = 0 keeps only A = ∅
        assert_eq!(at_r0.eval(1.0, 1.0, 1.0, 1.0), 8.0);
    }

    #[test]
    fn json_round_trip() {
        let f = trinks_polynomial(&Graph::path(2), &lim()).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.starts_with("{\"terms\":[{\"q\":0,\"r\":0,\"s\":0,\"t\":0,\"c\":1}"));
        let back: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    proptest! {
        #[test]
        fn pruned_enumeration_matches_subset_scan(n in 0usize..10, mask in any::<u64>()) {
            let g = Graph::from_pair_mask(n, mask);
            let fast = brute_force_independence(&g, &lim()).unwrap();
            prop_assert_eq!(fast.coeffs(), &naive_counts(&g)[..]);
        }

        #[test]
        fn trinks_at_s_zero_is_independence_polynomial(n in 0usize..6, mask in any::<u64>()) {
            let g = Graph::from_pair_mask(n, mask);
            let f = trinks_polynomial(&g, &lim()).unwrap();
            let i = f.substitute([Some(1), Some(1), Some(0), None]).as_t_polynomial().unwrap();
            prop_assert_eq!(i, brute_force_independence(&g, &lim()).unwrap());
        }
    }
}
