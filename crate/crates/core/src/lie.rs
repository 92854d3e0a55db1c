//! 2-step nilpotent Lie algebras: raw bracket tables, adapted presentations, and the
//! Dani–Mainkar and Heisenberg constructions.
//!
//! Indices are 0-based in the API. File formats and user-facing labels are 1-based.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{ExteriorPoly, Monomial, Rational, MAX_GENERATORS};
use crate::linalg::{self, RatMatrix};

/// A finite simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from 0-based edges. Loops, repeated edges and out-of-range
    /// endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_GENERATORS {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds the supported maximum of {MAX_GENERATORS}"
            )));
        }
        let mut adj = vec![0u64; n];
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{}, {}}} has an endpoint outside 1..={n}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", a + 1)));
            }
            let (i, j) = (a.min(b), a.max(b));
            if adj[i] >> j & 1 == 1 {
                return Err(Error::InvalidGraph(format!(
                    "repeated edge {{{}, {}}}",
                    i + 1,
                    j + 1
                )));
            }
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
            list.push((i, j));
        }
        list.sort_unstable();
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).expect("empty graph")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("K_n")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("P_n")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("C_n")
    }

    /// Graph whose edge set is given by the bits of `mask` over the lexicographic list of
    /// all vertex pairs; used to enumerate every labeled graph on `n` vertices.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::new(
            n,
            pairs
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, p)| p),
        )
        .expect("pair mask graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbourhood of `v` as a bitmask.
    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i] >> j & 1 == 1
    }

    /// Number of edges of the subgraph induced on the vertex set `mask`.
    pub fn induced_edge_count(&self, mask: u64) -> usize {
        let mut total = 0;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            total += (self.adj[v] & m).count_ones() as usize;
        }
        total
    }

    pub fn is_independent(&self, mask: u64) -> bool {
        self.induced_edge_count(mask) == 0
    }
}

/// An antisymmetric bracket table on a `dim`-dimensional space, in an arbitrary basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAlgebra {
    dim: usize,
    // (i, j) with i < j -> coefficient vector of [e_i, e_j]; zero vectors are not stored
    brackets: BTreeMap<(usize, usize), Vec<Rational>>,
}

impl RawAlgebra {
    pub fn new(dim: usize) -> Self {
        RawAlgebra {
            dim,
            brackets: BTreeMap::new(),
        }
    }

    /// Builds a table from `(i, j, [e_i, e_j])` entries. Listing both `(i, j)` and
    /// `(j, i)` is allowed when the two vectors are negatives of each other.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<Rational>)>,
    {
        let mut raw = RawAlgebra::new(dim);
        let mut seen: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
        for (i, j, v) in entries {
            if i >= dim || j >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket index ({}, {}) outside 1..={dim}",
                    i + 1,
                    j + 1
                )));
            }
            if v.len() != dim {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket ({}, {}) has {} coefficients, expected {dim}",
                    i + 1,
                    j + 1,
                    v.len()
                )));
            }
            let nonzero = v.iter().any(|x| !x.is_zero());
            if i == j {
                if nonzero {
                    return Err(Error::NotAntisymmetric { i: i + 1, j: j + 1 });
                }
                continue;
            }
            let (key, v) = if i < j {
                ((i, j), v)
            } else {
                ((j, i), v.into_iter().map(|x| -x).collect())
            };
            if let Some(prev) = seen.get(&key) {
                if *prev != v {
                    return Err(Error::NotAntisymmetric { i: i + 1, j: j + 1 });
                }
                continue;
            }
            seen.insert(key, v.clone());
            if nonzero {
                raw.brackets.insert(key, v);
            }
        }
        Ok(raw)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient vector of `[e_i, e_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        let zero = || vec![Rational::zero(); self.dim];
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => zero(),
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_else(zero),
            std::cmp::Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|x| -x).collect())
                .unwrap_or_else(zero),
        }
    }

    /// Nonzero brackets `(i, j, [e_i, e_j])` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &[Rational])> {
        self.brackets.iter().map(|(&(i, j), v)| (i, j, v.as_slice()))
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket_vectors(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), v) in &self.brackets {
            let coef = &x[i] * &y[j] - &x[j] * &y[i];
            if coef.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(v) {
                *o += &coef * c;
            }
        }
        out
    }

    /// Rewrites the table in the basis whose `a`-th vector is column `a` of `p`.
    pub fn change_basis(&self, p: &RatMatrix) -> Result<RawAlgebra> {
        if p.len() != self.dim || p.iter().any(|r| r.len() != self.dim) {
            return Err(Error::InvalidInput(format!(
                "change of basis must be {0}x{0}",
                self.dim
            )));
        }
        let inv = linalg::inverse(p)
            .ok_or_else(|| Error::InvalidInput("change of basis is singular".into()))?;
        let cols = linalg::transpose(p);
        let mut entries = Vec::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let v = self.bracket_vectors(&cols[a], &cols[b]);
                entries.push((a, b, linalg::mat_vec(&inv, &v)));
            }
        }
        RawAlgebra::from_entries(self.dim, entries)
    }
}

/// Checks `[x, [y, z]] = 0` on all basis triples, reporting the first violation in
/// lexicographic order of 1-based triples.
pub fn validate_two_step(raw: &RawAlgebra) -> Result<()> {
    let d = raw.dim();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let inner = raw.bracket(y, z);
                if inner.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut ex = vec![Rational::zero(); d];
                ex[x] = Rational::one();
                if raw.bracket_vectors(&ex, &inner).iter().any(|c| !c.is_zero()) {
                    return Err(Error::NotTwoStep {
                        x: x + 1,
                        y: y + 1,
                        z: z + 1,
                    });
                }
            }
        }
    }
    Ok(())
}

/// A 2-step nilpotent Lie algebra in an adapted basis `y_1..y_b, z_1..z_c` with
/// `[y_i, y_j] = Σ_k γ^k_{ij} z_k` and the `z_k` spanning `[g, g]`.
///
/// Generator indices for cochains: `y_i -> i - 1`, `z_k -> b + k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStepAlgebra {
    b: usize,
    c: usize,
    // (i, j), i < j < b -> γ^·_{ij}, length c, never all zero
    gamma: BTreeMap<(usize, usize), Vec<Rational>>,
    labels: Vec<String>,
}

impl TwoStepAlgebra {
    /// Builds an algebra from 0-based `(i, j, k, γ^k_{ij})` entries with `i != j`.
    /// Rejects data whose `c x C(b,2)` structure matrix is not of full row rank.
    pub fn new<I>(b: usize, c: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        if b + c > MAX_GENERATORS {
            return Err(Error::InvalidAlgebra(format!(
                "dimension {} exceeds the supported maximum of {MAX_GENERATORS}",
                b + c
            )));
        }
        let mut gamma: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
        for (i, j, k, v) in entries {
            if i >= b || j >= b || k >= c || i == j {
                return Err(Error::InvalidAlgebra(format!(
                    "structure constant ({}, {}, {}) out of range for b={b}, c={c}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), -v) };
            gamma
                .entry(key)
                .or_insert_with(|| vec![Rational::zero(); c])[k] += v;
        }
        gamma.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        let alg = TwoStepAlgebra {
            b,
            c,
            gamma,
            labels: default_labels(b, c),
        };
        let rank = linalg::rank(&alg.structure_matrix());
        if rank < c {
            return Err(Error::InvalidAlgebra(format!(
                "structure constants span a {rank}-dimensional commutator, but c = {c}"
            )));
        }
        Ok(alg)
    }

    /// The abelian algebra of dimension `d` (`b = d`, `c = 0`).
    pub fn abelian(d: usize) -> Self {
        TwoStepAlgebra::new(d, 0, []).expect("abelian algebra")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "{} labels for a {}-dimensional algebra",
                labels.len(),
                self.dim()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// First Betti number.
    pub fn b(&self) -> usize {
        self.b
    }

    /// Dimension of the commutator ideal.
    pub fn c(&self) -> usize {
        self.c
    }

    pub fn dim(&self) -> usize {
        self.b + self.c
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> Rational {
        let (key, neg) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.gamma.get(&key) {
            Some(v) if neg => -v[k].clone(),
            Some(v) => v[k].clone(),
            None => Rational::zero(),
        }
    }

    /// Nonzero bracket vectors `(i, j, γ^·_{ij})` with `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = (usize, usize, &[Rational])> {
        self.gamma.iter().map(|(&(i, j), v)| (i, j, v.as_slice()))
    }

    /// Whether `[y_i, y_j] = 0`.
    pub fn commutes(&self, i: usize, j: usize) -> bool {
        !self.gamma.contains_key(&(i.min(j), i.max(j)))
    }

    /// `d z_k^* = Σ_{i<j} γ^k_{ij} y_i^* y_j^*` as `(monomial, coefficient)` pairs.
    pub fn dz_terms(&self, k: usize) -> Vec<(Monomial, Rational)> {
        self.gamma
            .iter()
            .filter(|(_, v)| !v[k].is_zero())
            .map(|(&(i, j), v)| (Monomial::from_bits(1 << i | 1 << j), v[k].clone()))
            .collect()
    }

    /// `d z_k^*` as a polynomial on `generators >= b` generators.
    pub fn dz(&self, k: usize, generators: usize) -> ExteriorPoly {
        let mut p = ExteriorPoly::zero(generators);
        for (m, c) in self.dz_terms(k) {
            p.add_term(m, c);
        }
        p
    }

    /// The `c x C(b,2)` matrix of structure constants.
    pub fn structure_matrix(&self) -> RatMatrix {
        let pairs: Vec<(usize, usize)> = (0..self.b)
            .flat_map(|i| (i + 1..self.b).map(move |j| (i, j)))
            .collect();
        (0..self.c)
            .map(|k| pairs.iter().map(|&(i, j)| self.gamma(i, j, k)).collect())
            .collect()
    }

    /// Bracket of two coordinate vectors of length `b + c`.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (&(i, j), v) in &self.gamma {
            let coef = &x[i] * &y[j] - &x[j] * &y[i];
            if coef.is_zero() {
                continue;
            }
            for (k, g) in v.iter().enumerate() {
                out[self.b + k] += &coef * g;
            }
        }
        out
    }

    pub fn to_raw(&self) -> RawAlgebra {
        let d = self.dim();
        let entries = self.gamma.iter().map(|(&(i, j), v)| {
            let mut full = vec![Rational::zero(); d];
            for (k, g) in v.iter().enumerate() {
                full[self.b + k] = g.clone();
            }
            (i, j, full)
        });
        RawAlgebra::from_entries(d, entries).expect("adapted algebra is antisymmetric")
    }
}

fn default_labels(b: usize, c: usize) -> Vec<String> {
    (1..=b)
        .map(|i| format!("y{i}"))
        .chain((1..=c).map(|k| format!("z{k}")))
        .collect()
}

/// An adapted algebra together with the change of basis that produced it.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    pub algebra: TwoStepAlgebra,
    /// Column `a` holds the `a`-th adapted basis vector in the original coordinates.
    pub transition: RatMatrix,
}

/// Finds an adapted basis: `[g, g]` is the row space of the bracket vectors, its reduced
/// echelon rows become `z_1..z_c`, and the standard vectors outside the pivot columns
/// (in index order) become `y_1..y_b`.
pub fn adapt_basis(raw: &RawAlgebra) -> Result<AdaptedBasis> {
    validate_two_step(raw)?;
    let d = raw.dim();
    let mut span: RatMatrix = raw.entries().map(|(_, _, v)| v.to_vec()).collect();
    let pivots = if span.is_empty() {
        Vec::new()
    } else {
        linalg::rref(&mut span)
    };
    let c = pivots.len();
    span.truncate(c);
    let ys: Vec<usize> = (0..d).filter(|i| !pivots.contains(i)).collect();
    let b = ys.len();

    let mut entries = Vec::new();
    for (a, &ya) in ys.iter().enumerate() {
        for (bb, &yb) in ys.iter().enumerate().skip(a + 1) {
            let v = raw.bracket(ya, yb);
            // v lies in the row space of `span`; its pivot entries are the z-coordinates
            for (k, &p) in pivots.iter().enumerate() {
                if !v[p].is_zero() {
                    entries.push((a, bb, k, v[p].clone()));
                }
            }
        }
    }
    let algebra = TwoStepAlgebra::new(b, c, entries)?;

    let mut transition = vec![vec![Rational::zero(); d]; d];
    for (col, &y) in ys.iter().enumerate() {
        transition[y][col] = Rational::one();
    }
    for (k, row) in span.iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            transition[i][b + k] = v.clone();
        }
    }
    Ok(AdaptedBasis {
        algebra,
        transition,
    })
}

/// The Dani–Mainkar algebra of `g`: one `y` per vertex, one `z` per edge (edges in
/// lexicographic order), `[y_i, y_j] = z_{ij}` on edges.
pub fn dani_mainkar(g: &Graph) -> TwoStepAlgebra {
    let entries = g
        .edges()
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| (i, j, k, Rational::one()));
    let labels = (1..=g.vertex_count())
        .map(|i| format!("x{i}"))
        .chain(g.edges().iter().map(|(i, j)| format!("x{}_{}", i + 1, j + 1)))
        .collect();
    TwoStepAlgebra::new(g.vertex_count(), g.edge_count(), entries)
        .and_then(|a| a.with_labels(labels))
        .expect("Dani-Mainkar structure constants have full rank")
}

/// The Heisenberg algebra `h_n`: `[y_i, y_{i+n}] = z` for `i = 1..n`.
pub fn heisenberg(n: usize) -> Result<TwoStepAlgebra> {
    if n == 0 {
        return Err(Error::InvalidInput("Heisenberg algebra needs n >= 1".into()));
    }
    TwoStepAlgebra::new(2 * n, 1, (0..n).map(|i| (i, i + n, 0, Rational::one())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn validation_examples() {
        assert_eq!(validate_two_step(&RawAlgebra::new(3)), Ok(()));
        let h1 = RawAlgebra::from_entries(3, [(0, 1, v(&[0, 0, 1]))]).unwrap();
        assert_eq!(validate_two_step(&h1), Ok(()));
        let sl2ish = RawAlgebra::from_entries(2, [(0, 1, v(&[0, 2]))]).unwrap();
        assert_eq!(
            validate_two_step(&sl2ish),
            Err(Error::NotTwoStep { x: 1, y: 1, z: 2 })
        );
    }

    #[test]
    fn antisymmetry_enforced() {
        assert_eq!(
            RawAlgebra::from_entries(2, [(0, 0, v(&[1, 0]))]),
            Err(Error::NotAntisymmetric { i: 1, j: 1 })
        );
        assert!(RawAlgebra::from_entries(3, [(0, 1, v(&[0, 0, 1])), (1, 0, v(&[0, 0, 1]))]).is_err());
        let ok = RawAlgebra::from_entries(3, [(0, 1, v(&[0, 0, 1])), (1, 0, v(&[0, 0, -1]))]).unwrap();
        assert_eq!(ok.bracket(1, 0), v(&[0, 0, -1]));
    }

    #[test]
    fn adapt_identity_on_adapted_input() {
        let h1 = heisenberg(1).unwrap();
        let adapted = adapt_basis(&h1.to_raw()).unwrap();
        assert_eq!(adapted.transition, linalg::identity(3));
        assert_eq!(adapted.algebra, h1);
        let h3 = heisenberg(3).unwrap();
        assert_eq!(adapt_basis(&h3.to_raw()).unwrap().algebra, h3);
    }

    #[test]
    fn adapt_example_path_algebra() {
        // [u1,u2] = [u2,u3] = [u3,u4] = w
        let raw = RawAlgebra::from_entries(
            5,
            [
                (0, 1, v(&[0, 0, 0, 0, 1])),
                (1, 2, v(&[0, 0, 0, 0, 1])),
                (2, 3, v(&[0, 0, 0, 0, 1])),
            ],
        )
        .unwrap();
        let a = adapt_basis(&raw).unwrap().algebra;
        assert_eq!((a.b(), a.c()), (4, 1));
    }

    #[test]
    fn adapt_drops_dependent_commutators() {
        // z2 is never hit, and the bracket lands in a non-final coordinate
        let raw = RawAlgebra::from_entries(4, [(0, 2, v(&[0, 3, 0, 0]))]).unwrap();
        let ad = adapt_basis(&raw).unwrap();
        assert_eq!((ad.algebra.b(), ad.algebra.c()), (3, 1));
        // y's are e1, e3, e4 and z1 = e2
        assert_eq!(ad.algebra.gamma(0, 1, 0), q(3));
        let back = raw.change_basis(&ad.transition).unwrap();
        assert_eq!(back, ad.algebra.to_raw());
    }

    #[test]
    fn adapt_rejects_non_two_step() {
        let sl2ish = RawAlgebra::from_entries(2, [(0, 1, v(&[0, 2]))]).unwrap();
        assert!(matches!(adapt_basis(&sl2ish), Err(Error::NotTwoStep { .. })));
    }

    #[test]
    fn dani_mainkar_structure() {
        let k2 = dani_mainkar(&Graph::complete(2));
        assert_eq!((k2.b(), k2.c()), (2, 1));
        assert_eq!(k2.gamma(0, 1, 0), q(1));
        assert_eq!(k2.brackets().count(), heisenberg(1).unwrap().brackets().count());
        let e = dani_mainkar(&Graph::empty(4));
        assert_eq!((e.b(), e.c()), (4, 0));
        let p3 = dani_mainkar(&Graph::path(3));
        assert_eq!((p3.b(), p3.c()), (3, 2));
        assert_eq!(p3.gamma(0, 1, 0), q(1));
        assert_eq!(p3.gamma(1, 2, 1), q(1));
        assert_eq!(p3.gamma(0, 2, 0), q(0));
        assert_eq!(p3.gamma(0, 2, 1), q(0));
        assert_eq!(p3.labels()[3], "x1_2");
    }

    #[test]
    fn dani_mainkar_counts_for_all_small_graphs() {
        for n in 0..=5 {
            for mask in 0..1u64 << (n * (n.max(1) - 1) / 2) {
                let g = Graph::from_pair_mask(n, mask);
                let a = dani_mainkar(&g);
                assert_eq!(a.b(), g.vertex_count());
                assert_eq!(a.dim() - a.b(), g.edge_count());
            }
        }
    }

    #[test]
    fn heisenberg_shapes() {
        assert!(heisenberg(0).is_err());
        for n in 1..=8 {
            let h = heisenberg(n).unwrap();
            assert_eq!(h.dim(), 2 * n + 1);
            assert_eq!(h.b(), 2 * n);
        }
        let h2 = heisenberg(2).unwrap();
        assert_eq!(h2.gamma(0, 2, 0), q(1));
        assert_eq!(h2.gamma(1, 3, 0), q(1));
        assert_eq!(h2.gamma(0, 1, 0), q(0));
    }

    #[test]
    fn rank_deficient_algebra_rejected() {
        let r = TwoStepAlgebra::new(2, 2, [(0, 1, 0, q(1)), (0, 1, 1, q(1))]);
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        let c5 = Graph::cycle(5);
        assert_eq!(c5.induced_edge_count(0b11111), 5);
        assert!(c5.is_independent(0b00101));
    }
}
