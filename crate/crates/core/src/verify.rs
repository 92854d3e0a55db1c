//! The cross-check suite behind `nilcomb verify` and the acceptance tests.
//!
//! Each criterion runs over a seeded corpus and yields one [`CheckResult`]. The quick
//! scope uses graphs on at most 5 vertices, `h_n` for `n <= 3` and small random samples;
//! the full scope is the complete acceptance corpus.

use std::time::Instant;

use nalgebra::SymmetricEigen;
use serde::Serialize;

use crate::bounds::{bound_report, graph_bounds, naive_lower_bound, upper_bound};
use crate::cohomology::{
    basic_betti, betti_numbers, cce_differential, certify_no_isotropic_plane, independence_number,
    independence_polynomial, is_abelian, max_abelian_subalgebra, GradedPolynomial,
};
use crate::config::{Limits, Tolerances};
use crate::corpus;
use crate::error::{Error, Result};
use crate::exterior::{binomial_signed, monomials_of_degree, ExteriorPoly, Rational};
use crate::graph_tools::{brute_force_independence, trinks_polynomial};
use crate::lie::{adapt_basis, dani_mainkar, heisenberg, Graph, TwoStepAlgebra};
use crate::linalg::RatMatrix;
use crate::spectral::{
    graph_partition_function, heisenberg_partition_closed_form, johnson_adjacency,
    johnson_spectrum, partition_function, MetricPair, PartitionFunction, PartitionTerm,
};

pub const GRAPH_SEED: u64 = 0x6AA9_0001;
pub const ALGEBRA_SEED: u64 = 0x5EED_A16E;
pub const DUAL_PATH_SEED: u64 = 0xD0A1_0004;
pub const PROPERTY_SEED: u64 = 0x960F_0007;

/// Energy tolerance for partition-function comparisons.
pub const ENERGY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Quick,
    Full,
}

impl std::str::FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scope> {
        match s {
            "quick" => Ok(Scope::Quick),
            "full" => Ok(Scope::Full),
            other => Err(Error::Parse(format!("unknown scope `{other}` (quick | full)"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

/// Inputs for every criterion at a given scope.
pub struct Corpus {
    /// Graphs for the Dani–Mainkar equivalence (criterion 2) and the bound corpus.
    pub graphs: Vec<Graph>,
    pub heisenberg_max: usize,
    pub heisenberg_spectral_max: usize,
    pub random_algebras: Vec<TwoStepAlgebra>,
    pub dual_path_graphs: Vec<Graph>,
    pub johnson_max: usize,
    pub property_instances: usize,
}

impl Corpus {
    pub fn for_scope(scope: Scope) -> Corpus {
        match scope {
            Scope::Full => {
                let mut graphs = corpus::all_graphs_up_to(5);
                graphs.extend(corpus::random_graphs(GRAPH_SEED, 100, 6..=7));
                Corpus {
                    graphs,
                    heisenberg_max: 6,
                    heisenberg_spectral_max: 4,
                    random_algebras: corpus::random_algebras(ALGEBRA_SEED, 200, 8, 6),
                    dual_path_graphs: corpus::random_graphs(DUAL_PATH_SEED, 50, 1..=6),
                    johnson_max: 8,
                    property_instances: 50,
                }
            }
            Scope::Quick => Corpus {
                graphs: corpus::all_graphs_up_to(5),
                heisenberg_max: 3,
                heisenberg_spectral_max: 3,
                random_algebras: Vec::new(),
                dual_path_graphs: corpus::random_graphs(DUAL_PATH_SEED, 10, 1..=6),
                johnson_max: 6,
                property_instances: 10,
            },
        }
    }

    /// Algebras for the bound sandwich and the abelian-subalgebra check.
    fn algebra_corpus(&self) -> Result<Vec<(String, TwoStepAlgebra)>> {
        let mut out: Vec<(String, TwoStepAlgebra)> = Vec::new();
        for (i, g) in self.graphs.iter().enumerate() {
            out.push((format!("L(graph #{i})"), dani_mainkar(g)));
        }
        for n in 1..=self.heisenberg_max {
            out.push((format!("h_{n}"), heisenberg(n)?));
        }
        for (i, a) in self.random_algebras.iter().enumerate() {
            out.push((format!("random #{i}"), a.clone()));
        }
        Ok(out)
    }
}

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "Heisenberg independence polynomials"),
    (2, "Dani-Mainkar basic Betti numbers equal independent-set counts"),
    (3, "partition-function golden values"),
    (4, "dual-path spectra"),
    (5, "Johnson spectrum oracle"),
    (6, "bound sandwich and naive-bound counterexample"),
    (7, "property suites"),
    (8, "abelian subalgebra of dimension alpha + d - b"),
];

/// Runs every criterion.
pub fn run(scope: Scope, limits: &Limits, tol: &Tolerances) -> Vec<CheckResult> {
    let corpus = Corpus::for_scope(scope);
    CRITERIA
        .iter()
        .map(|&(id, _)| run_criterion(id, &corpus, limits, tol))
        .collect()
}

pub fn run_criterion(id: u8, corpus: &Corpus, limits: &Limits, tol: &Tolerances) -> CheckResult {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .unwrap_or("unknown criterion");
    let start = Instant::now();
    let outcome = match id {
        1 => heisenberg_polynomials(corpus, limits),
        2 => dani_mainkar_equivalence(corpus, limits),
        3 => golden_partition_functions(limits, tol),
        4 => dual_path_spectra(corpus, limits, tol),
        5 => johnson_oracle(corpus),
        6 => bound_sandwich(corpus, limits),
        7 => property_suites(corpus, limits, tol),
        8 => abelian_subalgebras(corpus, limits),
        _ => Err(Error::InvalidInput(format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckResult {
        criterion: id,
        name,
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

type Outcome = Result<(bool, String)>;

fn summarize(total: usize, failures: &[String], what: &str) -> (bool, String) {
    if failures.is_empty() {
        (true, format!("{total} {what} checked"))
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        (
            false,
            format!("{} of {total} {what} failed; first: {}", failures.len(), shown.join("; ")),
        )
    }
}

/// `Σ_{k<=n} (C(2n,k) - C(2n,k-2)) t^k`.
pub fn heisenberg_independence_formula(n: usize) -> GradedPolynomial {
    let m = 2 * n as i64;
    GradedPolynomial::new(
        (0..=n as i64)
            .map(|k| (binomial_signed(m, k) - binomial_signed(m, k - 2)) as u64)
            .collect(),
    )
}

fn heisenberg_polynomials(corpus: &Corpus, limits: &Limits) -> Outcome {
    let mut failures = Vec::new();
    for n in 1..=corpus.heisenberg_max {
        let h = heisenberg(n)?;
        let got = independence_polynomial(&h, limits)?;
        let expect = heisenberg_independence_formula(n);
        if got != expect || got.degree() != n {
            failures.push(format!("h_{n}: got {got}, expected {expect}"));
        }
    }
    Ok(summarize(corpus.heisenberg_max, &failures, "Heisenberg algebras"))
}

fn dani_mainkar_equivalence(corpus: &Corpus, limits: &Limits) -> Outcome {
    let mut failures = Vec::new();
    for (i, g) in corpus.graphs.iter().enumerate() {
        let lie = independence_polynomial(&dani_mainkar(g), limits)?;
        let graph = brute_force_independence(g, limits)?;
        if lie != graph {
            failures.push(format!("graph #{i}: b_B = {lie}, s = {graph}"));
        }
    }
    Ok(summarize(corpus.graphs.len(), &failures, "graphs"))
}

/// `h_2` with `[y1, y2] = [y3, y4] = z`, the presentation in which `h'` is written.
pub fn paired_heisenberg_2() -> TwoStepAlgebra {
    let one = Rational::from_integer(1.into());
    TwoStepAlgebra::new(4, 1, [(0, 1, 0, one.clone()), (2, 3, 0, one)]).expect("valid algebra")
}

/// The Gram matrix `h'` on `(y1, y2, y3, y4, z)`.
pub fn hprime_gram() -> RatMatrix {
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    vec![
        vec![r(1, 1), r(0, 1), r(1, 2), r(0, 1), r(0, 1)],
        vec![r(0, 1), r(5, 4), r(0, 1), r(1, 2), r(0, 1)],
        vec![r(1, 2), r(0, 1), r(5, 4), r(0, 1), r(0, 1)],
        vec![r(0, 1), r(1, 2), r(0, 1), r(1, 1), r(0, 1)],
        vec![r(0, 1), r(0, 1), r(0, 1), r(0, 1), r(1, 1)],
    ]
}

fn term(energy: f64, degree: usize, mult: u64) -> PartitionTerm {
    PartitionTerm {
        energy,
        exact_energy: None,
        degree,
        mult,
    }
}

/// `1 + 4t + 5t² + s²t² + 4st³ + s²t⁴`.
pub fn golden_h2_canonical() -> PartitionFunction {
    PartitionFunction::from_terms(vec![
        term(0.0, 0, 1),
        term(0.0, 1, 4),
        term(0.0, 2, 5),
        term(2.0, 2, 1),
        term(1.0, 3, 4),
        term(2.0, 4, 1),
    ])
}

/// `1 + 4t + 5t² + s³t² + 2s^{(3-√5)/2}t³ + 2s^{(3+√5)/2}t³ + s³t⁴`.
pub fn golden_h2_hprime() -> PartitionFunction {
    let r5 = 5f64.sqrt();
    PartitionFunction::from_terms(vec![
        term(0.0, 0, 1),
        term(0.0, 1, 4),
        term(0.0, 2, 5),
        term(3.0, 2, 1),
        term((3.0 - r5) / 2.0, 3, 2),
        term((3.0 + r5) / 2.0, 3, 2),
        term(3.0, 4, 1),
    ])
}

fn golden_partition_functions(limits: &Limits, tol: &Tolerances) -> Outcome {
    let canonical = partition_function(&MetricPair::canonical(heisenberg(2)?), limits, tol)?;
    let hprime = partition_function(
        &MetricPair::new(paired_heisenberg_2(), hprime_gram())?,
        limits,
        tol,
    )?;
    let mut failures = Vec::new();
    if !canonical.approx_eq(&golden_h2_canonical(), ENERGY_TOL) {
        failures.push(format!("(h_2, h): got {canonical}"));
    }
    if !hprime.approx_eq(&golden_h2_hprime(), ENERGY_TOL) {
        failures.push(format!("(h_2, h'): got {hprime}"));
    }
    Ok(summarize(2, &failures, "metric pairs"))
}

/// `F(G; 1, 0, s, t)` as a partition function (energy = `s`-exponent).
fn trinks_partition(g: &Graph, limits: &Limits) -> Result<PartitionFunction> {
    let f = trinks_polynomial(g, limits)?.substitute([Some(1), Some(0), None, None]);
    let mut counts = std::collections::BTreeMap::new();
    for (e, c) in f.terms() {
        *counts.entry((e[2] as u64, e[3] as usize)).or_insert(0) += c;
    }
    Ok(PartitionFunction::from_integer_counts(&counts))
}

fn dual_path_spectra(corpus: &Corpus, limits: &Limits, tol: &Tolerances) -> Outcome {
    let mut failures = Vec::new();
    for n in 1..=corpus.heisenberg_spectral_max {
        let eig = partition_function(&MetricPair::canonical(heisenberg(n)?), limits, tol)?;
        let closed = heisenberg_partition_closed_form(n)?;
        if !eig.approx_eq(&closed, ENERGY_TOL) {
            failures.push(format!("h_{n}: eigensolve {eig} vs closed form {closed}"));
        }
    }
    // the subgraph polynomial is enumerated over all edge subsets; allow K_6
    let trinks_limits = Limits {
        trinks_edges: limits.trinks_edges.max(15),
        trinks_vertices: limits.trinks_vertices.max(6),
        ..*limits
    };
    for (i, g) in corpus.dual_path_graphs.iter().enumerate() {
        let eig = partition_function(&MetricPair::canonical(dani_mainkar(g)), limits, tol)?;
        let comb = graph_partition_function(g, limits)?;
        let trinks = trinks_partition(g, &trinks_limits)?;
        if !eig.approx_eq(&comb, ENERGY_TOL) || !comb.approx_eq(&trinks, 0.0) {
            failures.push(format!(
                "graph #{i}: eigensolve {eig}, combinatorial {comb}, F(G,1,0,s,t) {trinks}"
            ));
        }
    }
    let total = corpus.heisenberg_spectral_max + corpus.dual_path_graphs.len();
    Ok(summarize(total, &failures, "metric pairs"))
}

fn johnson_oracle(corpus: &Corpus) -> Outcome {
    let mut failures = Vec::new();
    let mut total = 0;
    for n in 0..=corpus.johnson_max {
        for k in 0..=n {
            total += 1;
            let mut eig: Vec<f64> = SymmetricEigen::new(johnson_adjacency(n, k))
                .eigenvalues
                .iter()
                .copied()
                .collect();
            eig.sort_by(f64::total_cmp);
            let mut expect: Vec<f64> = johnson_spectrum(n, k)?
                .into_iter()
                .flat_map(|(theta, f)| std::iter::repeat_n(theta as f64, f as usize))
                .collect();
            expect.sort_by(f64::total_cmp);
            let ok = eig.len() == expect.len()
                && eig.iter().zip(&expect).all(|(a, b)| (a - b).abs() <= ENERGY_TOL);
            if !ok {
                failures.push(format!("J({n},{k})"));
            }
        }
    }
    Ok(summarize(total, &failures, "Johnson graphs"))
}

fn bound_sandwich(corpus: &Corpus, limits: &Limits) -> Outcome {
    let mut failures = Vec::new();
    let algebras = corpus.algebra_corpus()?;
    let mut checked = 0;
    for (label, alg) in &algebras {
        if alg.b() == 0 {
            // the zero algebra has no first Betti number to bound with
            continue;
        }
        checked += 1;
        let alpha = independence_number(alg, limits)? as u64;
        let report = bound_report(alg.dim() as u64, alg.b() as u64, Some(alpha))?;
        if !report.sandwich_holds() {
            failures.push(format!(
                "{label}: {} <= {alpha} <= {} fails",
                report.lower_ceil, report.upper_floor
            ));
        }
    }
    for (i, g) in corpus.graphs.iter().enumerate() {
        if g.vertex_count() == 0 {
            continue;
        }
        let lie = upper_bound((g.vertex_count() + g.edge_count()) as u64, g.vertex_count() as u64)?;
        let graph = graph_bounds(g).1;
        if (lie - graph).abs() > 1e-12 * graph.max(1.0) {
            failures.push(format!("graph #{i}: Lie upper bound {lie} != graph upper bound {graph}"));
        }
    }
    for n in 2..=corpus.heisenberg_max {
        let naive = naive_lower_bound(2 * n as u64 + 1, 2 * n as u64)?;
        if naive <= n as f64 {
            failures.push(format!("h_{n}: naive bound {naive} does not exceed alpha = {n}"));
        }
    }
    let total = checked + corpus.graphs.len() + corpus.heisenberg_max.saturating_sub(1);
    Ok(summarize(total, &failures, "bound checks"))
}

fn property_suites(corpus: &Corpus, limits: &Limits, tol: &Tolerances) -> Outcome {
    let count = corpus.property_instances;
    let mut rng = corpus::rng(PROPERTY_SEED);
    let mut failures = Vec::new();

    // complex-level properties on algebras with b + c <= 10
    let small = corpus::random_algebras(PROPERTY_SEED, count, 6, 4);
    for (i, alg) in small.iter().enumerate() {
        let d = alg.dim();
        for k in 0..=d {
            for m in monomials_of_degree(d, k) {
                let p = ExteriorPoly::monomial(d, m, Rational::from_integer(1.into()));
                if !cce_differential(alg, &cce_differential(alg, &p)?)?.is_zero() {
                    failures.push(format!("d∘d != 0 on algebra #{i}"));
                }
            }
        }
        let bs = betti_numbers(alg, limits)?;
        if (0..=d).any(|k| bs[k] != bs[d - k]) {
            failures.push(format!("Poincaré duality fails on algebra #{i}: {bs:?}"));
        }
    }

    // basis-change invariance of the independence polynomial
    for i in 0..count {
        let b = rand::Rng::gen_range(&mut rng, 2..=6);
        let c = rand::Rng::gen_range(&mut rng, 0..=4usize.min(b * (b - 1) / 2));
        let raw = corpus::random_raw(&mut rng, b, c);
        let p = corpus::random_invertible(&mut rng, raw.dim());
        let before = independence_polynomial(&adapt_basis(&raw)?.algebra, limits)?;
        let after = independence_polynomial(&adapt_basis(&raw.change_basis(&p)?)?.algebra, limits)?;
        if before != after {
            failures.push(format!("basis change #{i}: {before} vs {after}"));
        }
    }

    // spectral properties with three random metrics per algebra
    let metric_algs = corpus::random_adapted_algebras(PROPERTY_SEED ^ 1, count, 7, 5);
    for (i, alg) in metric_algs.iter().enumerate() {
        let ipoly = independence_polynomial(alg, limits)?;
        let betti: Vec<u64> = (0..=alg.b())
            .map(|k| basic_betti(alg, k, limits).map(|x| x as u64))
            .collect::<Result<_>>()?;
        for g in 0..3 {
            let gram = corpus::random_gram(&mut rng, alg.dim());
            let z = partition_function(&MetricPair::new(alg.clone(), gram)?, limits, tol)?;
            if z.zero_energy_polynomial(0.0) != ipoly {
                failures.push(format!("Z(0,t) != I(g,t) on algebra #{i}, metric {g}: {z}"));
            }
            if z.degree_polynomial() != GradedPolynomial::binomial(alg.b()) {
                failures.push(format!("Z(1,t) != (1+t)^b on algebra #{i}, metric {g}"));
            }
            for (k, &bk) in betti.iter().enumerate() {
                let zero_mult: u64 = z
                    .terms
                    .iter()
                    .filter(|t| t.degree == k && t.energy == 0.0)
                    .map(|t| t.mult)
                    .sum();
                if zero_mult != bk {
                    failures.push(format!("zero multiplicity != b_B^{k} on algebra #{i}, metric {g}"));
                }
            }
            if z.terms.iter().any(|t| t.energy < 0.0) {
                failures.push(format!("negative energy on algebra #{i}, metric {g}"));
            }
        }
    }
    failures.dedup();
    Ok(summarize(3 * count, &failures, "property instances"))
}

fn abelian_subalgebras(corpus: &Corpus, limits: &Limits) -> Outcome {
    let algebras = corpus.algebra_corpus()?;
    let mut failures = Vec::new();
    let mut certified = 0;
    for (label, alg) in &algebras {
        let alpha = independence_number(alg, limits)?;
        match max_abelian_subalgebra(alg, limits) {
            Ok(ab) => {
                if ab.dim() != alpha + alg.c() || !is_abelian(alg, &ab.basis) {
                    failures.push(format!("{label}: invalid subalgebra of dimension {}", ab.dim()));
                }
            }
            Err(Error::AbelianSearchExhausted { target, found, .. }) => {
                let proof = certify_no_isotropic_plane(alg, limits)?;
                certified += usize::from(proof);
                failures.push(format!(
                    "{label} (b={}, c={}): best {found} < {target}{}",
                    alg.b(),
                    alg.c(),
                    if proof { ", provably none exists" } else { "" }
                ));
            }
            Err(e) => return Err(e),
        }
    }
    let (passed, mut detail) = summarize(algebras.len(), &failures, "algebras");
    if certified > 0 {
        detail.push_str(&format!(
            " ({certified} failures carry an exact proof that no such subalgebra exists)"
        ));
    }
    Ok((passed, detail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scope_parsing() {
        assert_eq!("quick".parse::<Scope>().unwrap(), Scope::Quick);
        assert!("medium".parse::<Scope>().is_err());
    }

    #[test]
    fn heisenberg_formula() {
        assert_eq!(heisenberg_independence_formula(2).coeffs(), &[1, 4, 5]);
        assert_eq!(heisenberg_independence_formula(3).coeffs(), &[1, 6, 14, 14]);
    }

    #[test]
    fn cheap_criteria_pass_at_quick_scope() {
        let corpus = Corpus::for_scope(Scope::Quick);
        for id in [1, 3, 5] {
            let r = run_criterion(id, &corpus, &Limits::default(), &Tolerances::default());
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
        let bad = run_criterion(9, &corpus, &Limits::default(), &Tolerances::default());
        assert!(!bad.passed);
    }
}
