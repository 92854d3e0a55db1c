//! Metric pairs, the basic Laplacian `Δ_B` and the basic partition function
//! `Z(s, t) = tr(s^{Δ_B} t^{deg})` over the basic complex.
//!
//! The eigensolve path is double precision. The combinatorial graph path and the
//! Heisenberg closed form are exact and serve as independent oracles for it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::GradedPolynomial;
use crate::config::{Limits, Tolerances};
use crate::error::{Error, Result};
use crate::exterior::{binomial, monomials_of_degree, rational_to_f64, Monomial, Rational};
use crate::lie::{Graph, TwoStepAlgebra};
use crate::linalg::{self, RatMatrix};

/// Orthonormality residual accepted from [`orthonormalize_adapted`].
pub const ORTHONORMAL_TOL: f64 = 1e-12;

/// A 2-step algebra in adapted coordinates with a positive-definite inner product.
#[derive(Clone, Debug)]
pub struct MetricPair {
    alg: TwoStepAlgebra,
    gram: RatMatrix,
}

impl MetricPair {
    /// Checks that `gram` is `d x d`, symmetric and positive definite (exactly).
    pub fn new(alg: TwoStepAlgebra, gram: RatMatrix) -> Result<Self> {
        let d = alg.dim();
        if gram.len() != d || gram.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidInput(format!(
                "Gram matrix must be {d} x {d} for this algebra"
            )));
        }
        for i in 0..d {
            for j in i + 1..d {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "Gram matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        linalg::check_positive_definite(&gram).map_err(Error::NotPositiveDefinite)?;
        Ok(MetricPair { alg, gram })
    }

    /// The inner product making the adapted basis orthonormal.
    pub fn canonical(alg: TwoStepAlgebra) -> Self {
        let gram = linalg::identity(alg.dim());
        MetricPair { alg, gram }
    }

    pub fn algebra(&self) -> &TwoStepAlgebra {
        &self.alg
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }
}

/// An orthonormal adapted frame and the structure constants in it.
#[derive(Clone, Debug)]
pub struct OrthonormalFrame {
    pub b: usize,
    pub c: usize,
    /// Columns are the frame vectors in adapted coordinates; the last `c` span `[g, g]`.
    pub vectors: DMatrix<f64>,
    /// `gamma[l][(a, b)] = γ̃^l_{ab}`, antisymmetric.
    pub gamma: Vec<DMatrix<f64>>,
    /// `max |P^T G P - I|`.
    pub residual: f64,
}

fn to_f64_matrix(m: &RatMatrix) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, n, |i, j| rational_to_f64(&m[i][j]))
}

/// Gram–Schmidt with respect to `G`: the `[g, g]` block first, then its complement.
pub fn orthonormalize_adapted(mp: &MetricPair) -> Result<OrthonormalFrame> {
    let (b, c) = (mp.alg.b(), mp.alg.c());
    let d = b + c;
    let g = to_f64_matrix(&mp.gram);
    let inner = |x: &nalgebra::DVector<f64>, y: &nalgebra::DVector<f64>| x.dot(&(&g * y));

    let mut frame: Vec<nalgebra::DVector<f64>> = Vec::with_capacity(d);
    // z-block occupies frame[0..c], y-block frame[c..d]
    let order = (b..d).chain(0..b);
    for i in order {
        let mut v = nalgebra::DVector::<f64>::zeros(d);
        v[i] = 1.0;
        // two passes keep the residual at rounding level
        for _ in 0..2 {
            for u in &frame {
                let p = inner(u, &v);
                v -= u * p;
            }
        }
        let norm = inner(&v, &v);
        if norm.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::NotPositiveDefinite(frame.len() + 1));
        }
        frame.push(v / norm.sqrt());
    }
    let mut vectors = DMatrix::<f64>::zeros(d, d);
    for (a, v) in frame[c..].iter().chain(&frame[..c]).enumerate() {
        vectors.set_column(a, v);
    }
    let residual = (vectors.transpose() * &g * &vectors - DMatrix::<f64>::identity(d, d))
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    if residual > ORTHONORMAL_TOL {
        return Err(Error::Numerical {
            residual,
            tol: ORTHONORMAL_TOL,
        });
    }

    // [u_a, u_b] = Σ_{i<j} (A_ia A_jb - A_ja A_ib) γ_ij, A the y-block of the frame
    let a = vectors.view((0, 0), (b, b)).into_owned();
    let brackets: Vec<(usize, usize, Vec<f64>)> = mp
        .alg
        .brackets()
        .map(|(i, j, v)| (i, j, v.iter().map(rational_to_f64).collect()))
        .collect();
    let fz: Vec<nalgebra::DVector<f64>> = (0..c).map(|l| &g * vectors.column(b + l)).collect();
    let mut gamma = vec![DMatrix::<f64>::zeros(b, b); c];
    for p in 0..b {
        for q in p + 1..b {
            let mut w = nalgebra::DVector::<f64>::zeros(d);
            for (i, j, v) in &brackets {
                let coef = a[(*i, p)] * a[(*j, q)] - a[(*j, p)] * a[(*i, q)];
                if coef != 0.0 {
                    for (k, gk) in v.iter().enumerate() {
                        w[b + k] += coef * gk;
                    }
                }
            }
            for l in 0..c {
                let val = w.dot(&fz[l]);
                gamma[l][(p, q)] = val;
                gamma[l][(q, p)] = -val;
            }
        }
    }
    Ok(OrthonormalFrame {
        b,
        c,
        vectors,
        gamma,
        residual,
    })
}

/// `Δ_B = Σ_l (ω_l ∧)(ω_l ∧)^*` on the degree-`k` monomials (lexicographic order) of the
/// orthonormal frame, `ω_l = Σ_{a<b} γ̃^l_{ab} y_a^* y_b^*`.
pub fn basic_laplacian_matrix(frame: &OrthonormalFrame, k: usize) -> Result<DMatrix<f64>> {
    let b = frame.b;
    if k > b {
        return Err(Error::DegreeOutOfRange { degree: k, max: b });
    }
    let n = binomial(b, k);
    let mut m = DMatrix::<f64>::zeros(n, n);
    if k < 2 {
        return Ok(m);
    }
    let index: HashMap<u64, usize> = monomials_of_degree(b, k)
        .enumerate()
        .map(|(i, mono)| (mono.bits(), i))
        .collect();
    let forms: Vec<Vec<(Monomial, f64)>> = frame
        .gamma
        .iter()
        .map(|gl| {
            let mut t = Vec::new();
            for i in 0..b {
                for j in i + 1..b {
                    if gl[(i, j)] != 0.0 {
                        t.push((Monomial::from_bits(1 << i | 1 << j), gl[(i, j)]));
                    }
                }
            }
            t
        })
        .collect();
    let mut col: Vec<(usize, f64)> = Vec::new();
    for form in &forms {
        for low in monomials_of_degree(b, k - 2) {
            col.clear();
            for (w, g) in form {
                if let Some((prod, odd)) = w.wedge(low) {
                    col.push((index[&prod.bits()], if odd { -g } else { *g }));
                }
            }
            for &(r, x) in &col {
                for &(s, y) in &col {
                    m[(r, s)] += x * y;
                }
            }
        }
    }
    Ok(m)
}

/// One term `mult · s^energy · t^degree`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionTerm {
    pub energy: f64,
    pub exact_energy: Option<String>,
    pub degree: usize,
    pub mult: u64,
}

/// A basic partition function, terms sorted by `(degree, energy)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PartitionFunction {
    pub terms: Vec<PartitionTerm>,
}

impl PartitionFunction {
    pub fn from_terms(mut terms: Vec<PartitionTerm>) -> Self {
        terms.retain(|t| t.mult > 0);
        terms.sort_by(|a, b| {
            a.degree
                .cmp(&b.degree)
                .then(a.energy.total_cmp(&b.energy))
        });
        PartitionFunction { terms }
    }

    /// Builds a function with exact integer energies from `(energy, degree) -> mult`.
    pub fn from_integer_counts(counts: &BTreeMap<(u64, usize), u64>) -> Self {
        PartitionFunction::from_terms(
            counts
                .iter()
                .map(|(&(e, k), &m)| PartitionTerm {
                    energy: e as f64,
                    exact_energy: Some(e.to_string()),
                    degree: k,
                    mult: m,
                })
                .collect(),
        )
    }

    /// `Z(0, t)`: multiplicities of energies within `zero_tol` of 0.
    pub fn zero_energy_polynomial(&self, zero_tol: f64) -> GradedPolynomial {
        self.collect_by_degree(|t| t.energy.abs() <= zero_tol)
    }

    /// `Z(1, t)`.
    pub fn degree_polynomial(&self) -> GradedPolynomial {
        self.collect_by_degree(|_| true)
    }

    fn collect_by_degree(&self, keep: impl Fn(&PartitionTerm) -> bool) -> GradedPolynomial {
        let top = self.terms.iter().map(|t| t.degree).max().unwrap_or(0);
        let mut coeffs = vec![0u64; top + 1];
        for t in self.terms.iter().filter(|t| keep(t)) {
            coeffs[t.degree] += t.mult;
        }
        GradedPolynomial::new(coeffs)
    }

    pub fn eval(&self, s: f64, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|x| x.mult as f64 * s.powf(x.energy) * t.powi(x.degree as i32))
            .sum()
    }

    /// Term-by-term comparison: same degrees and multiplicities, energies within
    /// `tol · max(1, |energy|)`.
    pub fn approx_eq(&self, other: &PartitionFunction, tol: f64) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| {
                a.degree == b.degree
                    && a.mult == b.mult
                    && (a.energy - b.energy).abs() <= tol * a.energy.abs().max(1.0)
            })
    }
}

fn format_energy(t: &PartitionTerm) -> String {
    if let Some(e) = &t.exact_energy {
        return e.clone();
    }
    let s = format!("{:.10}", t.energy);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

impl fmt::Display for PartitionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for t in &self.terms {
            let e = format_energy(t);
            let mut s = String::new();
            if t.mult != 1 {
                s.push_str(&t.mult.to_string());
            }
            match e.as_str() {
                "0" => {}
                "1" => s.push('s'),
                e => s.push_str(&format!("s^{e}")),
            }
            match t.degree {
                0 => {}
                1 => s.push('t'),
                k => s.push_str(&format!("t^{k}")),
            }
            if s.is_empty() {
                s.push('1');
            }
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Groups sorted eigenvalues into `(value, multiplicity)` clusters.
fn cluster(mut eig: Vec<f64>, zero: f64, tol: f64) -> Vec<(f64, u64)> {
    for x in eig.iter_mut() {
        if x.abs() <= zero {
            *x = 0.0;
        }
    }
    eig.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, u64, f64)> = Vec::new();
    for x in eig {
        match out.last_mut() {
            Some((first, m, sum)) if x - *first <= tol * first.abs().max(1.0) => {
                *m += 1;
                *sum += x;
            }
            _ => out.push((x, 1, x)),
        }
    }
    out.into_iter()
        .map(|(first, m, sum)| (if first == 0.0 { 0.0 } else { sum / m as f64 }, m))
        .collect()
}

/// Eigenvalues of `Δ_B` in degree `k`, clustered.
pub fn degree_spectrum(frame: &OrthonormalFrame, k: usize, tol: &Tolerances) -> Result<Vec<(f64, u64)>> {
    let b = frame.b;
    if k > b {
        return Err(Error::DegreeOutOfRange { degree: k, max: b });
    }
    if k < 2 || frame.c == 0 {
        return Ok(vec![(0.0, binomial(b, k) as u64)]);
    }
    let m = basic_laplacian_matrix(frame, k)?;
    let norm = m
        .row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let n = m.nrows();
    let eig = SymmetricEigen::try_new(m, f64::EPSILON, 1000 * n.max(1))
        .ok_or(Error::EigenFailure(k))?;
    Ok(cluster(
        eig.eigenvalues.iter().copied().collect(),
        tol.zero * norm.max(1.0),
        tol.cluster,
    ))
}

/// Eigensolve path: per-degree spectra of `Δ_B`, computed in parallel.
pub fn partition_function(mp: &MetricPair, limits: &Limits, tol: &Tolerances) -> Result<PartitionFunction> {
    Limits::check("spectral first Betti number", mp.alg.b(), limits.spectral)?;
    let frame = orthonormalize_adapted(mp)?;
    let per_degree: Vec<Vec<(f64, u64)>> = (0..=frame.b)
        .into_par_iter()
        .map(|k| degree_spectrum(&frame, k, tol))
        .collect::<Result<_>>()?;
    let terms = per_degree
        .into_iter()
        .enumerate()
        .flat_map(|(k, spec)| {
            spec.into_iter().map(move |(e, m)| PartitionTerm {
                energy: e,
                exact_energy: (e == 0.0).then(|| "0".to_string()),
                degree: k,
                mult: m,
            })
        })
        .collect();
    Ok(PartitionFunction::from_terms(terms))
}

/// Combinatorial path for `L(G)` with the canonical metric: one term per vertex subset,
/// energy = number of induced edges.
pub fn graph_partition_function(g: &Graph, limits: &Limits) -> Result<PartitionFunction> {
    Limits::check("graph partition vertex count", g.vertex_count(), limits.graph_spectral)?;
    let n = g.vertex_count();
    let counts = (0..1u64 << n)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<(u64, usize), u64>, u| {
            *acc.entry((g.induced_edge_count(u) as u64, u.count_ones() as usize))
                .or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(PartitionFunction::from_integer_counts(&counts))
}

/// Spectrum of the Johnson graph `J(n, k)`: `(θ_j, f_j)` for `j = 0..min(k, n-k)` with
/// `θ_j = (k-j)(n-k-j) - j` and `f_j = C(n,j) - C(n,j-1)`.
pub fn johnson_spectrum(n: usize, k: usize) -> Result<Vec<(i64, u64)>> {
    if k > n {
        return Err(Error::InvalidInput(format!("J({n}, {k}) needs k <= n")));
    }
    let (n, k) = (n as i64, k as i64);
    Ok((0..=k.min(n - k))
        .map(|j| {
            let theta = (k - j) * (n - k - j) - j;
            let f = crate::exterior::binomial_signed(n, j) - crate::exterior::binomial_signed(n, j - 1);
            (theta, f as u64)
        })
        .collect())
}

/// Adjacency matrix of `J(n, k)` on the lexicographically ordered `k`-subsets.
pub fn johnson_adjacency(n: usize, k: usize) -> DMatrix<f64> {
    let verts: Vec<Monomial> = monomials_of_degree(n, k).collect();
    DMatrix::from_fn(verts.len(), verts.len(), |i, j| {
        let common = (verts[i].bits() & verts[j].bits()).count_ones() as usize;
        if k > 0 && common + 1 == k { 1.0 } else { 0.0 }
    })
}

fn multinomial(n: u64, parts: &[u64]) -> u128 {
    let mut out: u128 = 1;
    let mut left = n;
    for &p in parts {
        out *= binomial(left as usize, p as usize) as u128;
        left -= p;
    }
    out
}

/// Closed form for `(h_n, canonical metric)`:
/// `Σ_{k,m,j} N_{n,k,j} s^{(m-j)(n-k-m-j+1)} t^{2m+k}` with
/// `N_{n,k,j} = 2^k · multinomial(n; k, j, n-k-j) · (n-k-2j+1) / (n-k-j+1)`.
pub fn heisenberg_partition_closed_form(n: usize) -> Result<PartitionFunction> {
    if n == 0 {
        return Err(Error::InvalidInput("Heisenberg algebra needs n >= 1".into()));
    }
    let n = n as u64;
    let mut counts: BTreeMap<(u64, usize), u64> = BTreeMap::new();
    for k in 0..=n {
        for m in 0..=n - k {
            for j in 0..=m.min(n - k - m) {
                let num = (1u128 << k) * multinomial(n, &[k, j, n - k - j]) * (n - k - 2 * j + 1) as u128;
                let den = (n - k - j + 1) as u128;
                if !num.is_multiple_of(den) {
                    return Err(Error::Numerical {
                        residual: (num % den) as f64,
                        tol: 0.0,
                    });
                }
                let energy = (m - j) * (n - k - m - j + 1);
                *counts.entry((energy, (2 * m + k) as usize)).or_insert(0) += (num / den) as u64;
            }
        }
    }
    Ok(PartitionFunction::from_integer_counts(&counts))
}

/// Exact rational matrix of `Δ_B` in the adapted (not orthonormalised) monomial basis for
/// the canonical metric; used as an oracle for the floating path.
pub fn canonical_laplacian_exact(alg: &TwoStepAlgebra, k: usize) -> RatMatrix {
    let b = alg.b();
    let index: HashMap<u64, usize> = monomials_of_degree(b, k)
        .enumerate()
        .map(|(i, m)| (m.bits(), i))
        .collect();
    let n = index.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    if k < 2 {
        return out;
    }
    for l in 0..alg.c() {
        let form = alg.dz_terms(l);
        for low in monomials_of_degree(b, k - 2) {
            let mut col: Vec<(usize, Rational)> = Vec::new();
            for (w, g) in &form {
                if let Some((prod, odd)) = w.wedge(low) {
                    col.push((index[&prod.bits()], if odd { -g.clone() } else { g.clone() }));
                }
            }
            for (r, x) in &col {
                for (s, y) in &col {
                    out[*r][*s] += x * y;
                }
            }
        }
    }
    out
}
