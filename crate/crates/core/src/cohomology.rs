//! Chevalley–Eilenberg cohomology and the basic (pulled-back) part of it.
//!
//! Cochains are exterior polynomials on `b + c` generators, `y_i^* -> i` and
//! `z_k^* -> b + k`. The differential is `d = Σ_k (d z_k^*) ∂/∂z_k^*` with
//! `d z_k^* = Σ_{i<j} γ^k_{ij} y_i^* y_j^*`.
//!
//! The basic Betti number in degree `k` is `C(b, k)` minus the rank of the boundaries
//! `d(z_j^* m) = (d z_j^*) ∧ m`, `m` ranging over degree-`(k-2)` monomials in the `y^*`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::exterior::{binomial, monomials_of_degree, ExteriorPoly, Monomial, Rational};
use crate::linalg::{self, Echelon, RatMatrix};
use crate::lie::TwoStepAlgebra;

/// Univariate polynomial with nonnegative integer coefficients, indexed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedPolynomial {
    coeffs: Vec<u64>,
}

impl GradedPolynomial {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        GradedPolynomial { coeffs }
    }

    /// `(1 + t)^n`.
    pub fn binomial(n: usize) -> Self {
        GradedPolynomial::new((0..=n).map(|k| binomial(n, k) as u64).collect())
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Highest degree with a nonzero coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c as f64)
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A set of `y^*` generators (1-based) whose wedge is nonzero in basic cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSet {
    pub indices: Vec<usize>,
}

impl IndependentSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `det(S)` as a bitmask monomial on the `y^*`.
    pub fn monomial(&self) -> Monomial {
        Monomial::from_bits(self.indices.iter().fold(0, |acc, &i| acc | 1 << (i - 1)))
    }
}

fn dz_table(alg: &TwoStepAlgebra) -> Vec<Vec<(Monomial, Rational)>> {
    (0..alg.c()).map(|k| alg.dz_terms(k)).collect()
}

fn differential_of_monomial(
    b: usize,
    dz: &[Vec<(Monomial, Rational)>],
    m: Monomial,
    out: &mut BTreeMap<Monomial, Rational>,
) {
    for (k, terms) in dz.iter().enumerate() {
        let Some((rest, odd)) = m.remove(b + k) else {
            continue;
        };
        for (w, g) in terms {
            if let Some((prod, odd2)) = w.wedge(rest) {
                let c = if odd ^ odd2 { -g.clone() } else { g.clone() };
                let e = out.entry(prod).or_insert_with(Rational::zero);
                *e += c;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
}

/// Applies the Chevalley–Eilenberg differential to a cochain on the `b + c` generators.
pub fn cce_differential(alg: &TwoStepAlgebra, p: &ExteriorPoly) -> Result<ExteriorPoly> {
    if p.generators() != alg.dim() {
        return Err(Error::GeneratorMismatch {
            left: alg.dim(),
            right: p.generators(),
        });
    }
    let dz = dz_table(alg);
    let mut acc = BTreeMap::new();
    let mut out = ExteriorPoly::zero(alg.dim());
    for (m, c) in p.terms() {
        acc.clear();
        differential_of_monomial(alg.b(), &dz, m, &mut acc);
        for (pm, pc) in &acc {
            out.add_term(*pm, pc * c);
        }
    }
    Ok(out)
}

/// Rank of `d` restricted to degree-`k` cochains of the full complex.
fn differential_rank(alg: &TwoStepAlgebra, dz: &[Vec<(Monomial, Rational)>], k: usize) -> usize {
    let d = alg.dim();
    if k >= d || alg.c() == 0 {
        return 0;
    }
    let zmask = ((1u64 << alg.c()) - 1) << alg.b();
    let mut ech = Echelon::new();
    let mut acc = BTreeMap::new();
    for m in monomials_of_degree(d, k) {
        if m.bits() & zmask == 0 {
            continue;
        }
        acc.clear();
        differential_of_monomial(alg.b(), dz, m, &mut acc);
        if !acc.is_empty() {
            ech.insert(acc.iter().map(|(m, c)| (m.bits(), c)));
        }
    }
    ech.rank()
}

fn check_full(alg: &TwoStepAlgebra, limits: &Limits) -> Result<()> {
    Limits::check("full-complex generator count", alg.dim(), limits.full_complex)
}

fn check_basic(alg: &TwoStepAlgebra, limits: &Limits) -> Result<()> {
    Limits::check("basic-complex generator count", alg.b(), limits.single_degree)
}

/// `b^k = dim ker d_k - rank d_{k-1}`.
pub fn betti(alg: &TwoStepAlgebra, k: usize, limits: &Limits) -> Result<usize> {
    check_full(alg, limits)?;
    let d = alg.dim();
    if k > d {
        return Err(Error::DegreeOutOfRange { degree: k, max: d });
    }
    let dz = dz_table(alg);
    let below = if k == 0 { 0 } else { differential_rank(alg, &dz, k - 1) };
    Ok(binomial(d, k) - differential_rank(alg, &dz, k) - below)
}

/// All Betti numbers `b^0..b^d`; degree slices are ranked in parallel.
pub fn betti_numbers(alg: &TwoStepAlgebra, limits: &Limits) -> Result<Vec<usize>> {
    check_full(alg, limits)?;
    let d = alg.dim();
    let dz = dz_table(alg);
    let ranks: Vec<usize> = (0..=d)
        .into_par_iter()
        .map(|k| differential_rank(alg, &dz, k))
        .collect();
    Ok((0..=d)
        .map(|k| binomial(d, k) - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] })
        .collect())
}

/// Echelonized span of the degree-`k` boundaries `(d z_j^*) ∧ m`. Stops early once the
/// span is the whole degree-`k` slice.
pub(crate) fn boundary_echelon(alg: &TwoStepAlgebra, k: usize) -> Echelon {
    let b = alg.b();
    let full = binomial(b, k);
    let mut ech = Echelon::new();
    if k < 2 {
        return ech;
    }
    let dz = dz_table(alg);
    let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
    'outer: for terms in &dz {
        for m in monomials_of_degree(b, k - 2) {
            acc.clear();
            for (w, g) in terms {
                if let Some((prod, odd)) = w.wedge(m) {
                    let e = acc.entry(prod).or_insert_with(Rational::zero);
                    if odd {
                        *e -= g;
                    } else {
                        *e += g;
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            if !acc.is_empty() {
                ech.insert(acc.iter().map(|(m, c)| (m.bits(), c)));
                if ech.rank() == full {
                    break 'outer;
                }
            }
        }
    }
    ech
}

/// `b_B^k = C(b, k) - rank{(d z_j^*) ∧ m}`.
pub fn basic_betti(alg: &TwoStepAlgebra, k: usize, limits: &Limits) -> Result<usize> {
    check_basic(alg, limits)?;
    if k > alg.b() {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            max: alg.b(),
        });
    }
    Ok(binomial(alg.b(), k) - boundary_echelon(alg, k).rank())
}

/// `I(g, t) = Σ_k b_B^k t^k`. The degree (the independence number) is located top-down
/// first; the lower coefficients are then computed in parallel.
pub fn independence_polynomial(alg: &TwoStepAlgebra, limits: &Limits) -> Result<GradedPolynomial> {
    check_basic(alg, limits)?;
    let b = alg.b();
    let mut alpha = 0;
    let mut top = 1;
    for k in (0..=b).rev() {
        let v = basic_betti(alg, k, limits)?;
        if v != 0 {
            alpha = k;
            top = v;
            break;
        }
    }
    let mut coeffs: Vec<u64> = (0..alpha)
        .into_par_iter()
        .map(|k| basic_betti(alg, k, limits).map(|v| v as u64))
        .collect::<Result<_>>()?;
    coeffs.push(top as u64);
    Ok(GradedPolynomial::new(coeffs))
}

pub fn independence_number(alg: &TwoStepAlgebra, limits: &Limits) -> Result<usize> {
    check_basic(alg, limits)?;
    for k in (0..=alg.b()).rev() {
        if basic_betti(alg, k, limits)? != 0 {
            return Ok(k);
        }
    }
    Ok(0)
}

/// Whether `det(S)` (1-based indices) is nonzero in basic cohomology.
pub fn is_independent_set(alg: &TwoStepAlgebra, indices: &[usize], limits: &Limits) -> Result<bool> {
    check_basic(alg, limits)?;
    if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > alg.b()) {
        return Err(Error::GeneratorOutOfRange {
            index: bad,
            count: alg.b(),
        });
    }
    let Some((m, _)) = Monomial::from_indices(&indices.iter().map(|i| i - 1).collect::<Vec<_>>())
    else {
        return Ok(false);
    };
    Ok(!boundary_echelon(alg, m.degree()).contains_unit(m.bits()))
}

/// A maximum independent set: the lexicographically smallest `α`-subset whose wedge is
/// not a boundary.
pub fn find_max_independent_set(alg: &TwoStepAlgebra, limits: &Limits) -> Result<IndependentSet> {
    let alpha = independence_number(alg, limits)?;
    let ech = boundary_echelon(alg, alpha);
    monomials_of_degree(alg.b(), alpha)
        .find(|m| !ech.contains_unit(m.bits()))
        .map(|m| IndependentSet {
            indices: m.indices().map(|i| i + 1).collect(),
        })
        .ok_or_else(|| {
            Error::InvalidAlgebra("no independent set of maximal size; rank computation is inconsistent".into())
        })
}

/// An abelian subalgebra, given by a basis in the adapted coordinates `(y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSubalgebra {
    pub basis: Vec<Vec<Rational>>,
    /// Set when the `y`-part is spanned by coordinate vectors `y_i`, `i ∈ S`.
    pub coordinate_set: Option<IndependentSet>,
}

impl AbelianSubalgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Exhaustive pairwise bracket check.
pub fn is_abelian(alg: &TwoStepAlgebra, basis: &[Vec<Rational>]) -> bool {
    basis.iter().enumerate().all(|(a, x)| {
        basis[a + 1..]
            .iter()
            .all(|y| alg.bracket(x, y).iter().all(Zero::is_zero))
    })
}

/// Searches for an abelian subalgebra of dimension `α + d - b` of the form
/// `span(U) ⊕ [g, g]` with `U ⊂ span(y)` isotropic for every bracket form.
///
/// The search first tries coordinate sets (the set from [`find_max_independent_set`],
/// then every pairwise-commuting `α`-subset of generators in lexicographic order), then a
/// depth-first isotropic extension over rational vectors bounded by
/// `limits.abelian_search_nodes`. Such a subspace need not exist for every algebra (the
/// quaternionic Heisenberg algebra has `α = 2` but no commuting pair of independent
/// vectors), so exhaustion is reported as [`Error::AbelianSearchExhausted`].
pub fn max_abelian_subalgebra(alg: &TwoStepAlgebra, limits: &Limits) -> Result<AbelianSubalgebra> {
    let alpha = independence_number(alg, limits)?;
    let b = alg.b();
    let target = alpha + alg.c();

    let first = find_max_independent_set(alg, limits)?;
    let pairwise = |s: &[usize]| {
        s.iter()
            .enumerate()
            .all(|(a, &i)| s[a + 1..].iter().all(|&j| alg.commutes(i - 1, j - 1)))
    };
    let coordinate = if pairwise(&first.indices) {
        Some(first)
    } else {
        let ech = boundary_echelon(alg, alpha);
        commuting_subsets(alg, alpha)
            .into_iter()
            .map(|s| IndependentSet { indices: s })
            .find(|s| !ech.contains_unit(s.monomial().bits()))
    };
    if let Some(set) = coordinate {
        let basis = set
            .indices
            .iter()
            .map(|&i| unit(alg.dim(), i - 1))
            .chain((0..alg.c()).map(|k| unit(alg.dim(), b + k)))
            .collect::<Vec<_>>();
        return finish(alg, basis, Some(set), target);
    }

    let mut search = IsotropicSearch::new(alg, alpha, limits.abelian_search_nodes);
    let found = search.run();
    match found {
        Some(us) => {
            let basis = us
                .into_iter()
                .map(|u| {
                    let mut v = u;
                    v.resize(alg.dim(), Rational::zero());
                    v
                })
                .chain((0..alg.c()).map(|k| unit(alg.dim(), b + k)))
                .collect();
            finish(alg, basis, None, target)
        }
        None => Err(Error::AbelianSearchExhausted {
            target,
            found: search.best + alg.c(),
            explored: search.nodes,
        }),
    }
}

/// Exact proof that a 4-generator algebra with `α = 2` has no 2-dimensional subspace
/// of `span(y)` on which all bracket forms vanish.
///
/// Such a plane gives a nonzero decomposable bivector `u ∧ v` annihilating the degree-2
/// boundaries. In four variables `ξ` is decomposable iff `(ξ ∧ ξ)_{1234} = 0`, so the plane
/// cannot exist when that quadratic form is definite on the annihilator. Returns `false`
/// whenever the certificate does not apply or does not decide.
pub fn certify_no_isotropic_plane(alg: &TwoStepAlgebra, limits: &Limits) -> Result<bool> {
    if alg.b() != 4 || independence_number(alg, limits)? != 2 {
        return Ok(false);
    }
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let boundaries: RatMatrix = (0..alg.c())
        .map(|k| pairs.iter().map(|&(i, j)| alg.gamma(i, j, k)).collect())
        .collect();
    let ann = if boundaries.is_empty() {
        linalg::identity(6)
    } else {
        linalg::nullspace(&boundaries, 6)
    };
    // (ξ ∧ ξ)_{1234} / 2 = ξ12 ξ34 - ξ13 ξ24 + ξ14 ξ23, polarised
    let plucker = |x: &[Rational], y: &[Rational]| -> Rational {
        (&x[0] * &y[5] + &x[5] * &y[0] - &x[1] * &y[4] - &x[4] * &y[1] + &x[2] * &y[3]
            + &x[3] * &y[2])
            / Rational::from_integer(2.into())
    };
    let gram: RatMatrix = ann
        .iter()
        .map(|x| ann.iter().map(|y| plucker(x, y)).collect())
        .collect();
    let neg: RatMatrix = gram.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
    Ok(!gram.is_empty()
        && (linalg::check_positive_definite(&gram).is_ok()
            || linalg::check_positive_definite(&neg).is_ok()))
}

fn finish(
    alg: &TwoStepAlgebra,
    basis: Vec<Vec<Rational>>,
    coordinate_set: Option<IndependentSet>,
    target: usize,
) -> Result<AbelianSubalgebra> {
    if basis.len() != target || !is_abelian(alg, &basis) || linalg::rank(&basis) != target {
        return Err(Error::InvalidAlgebra(
            "abelian subalgebra candidate failed verification".into(),
        ));
    }
    Ok(AbelianSubalgebra {
        basis,
        coordinate_set,
    })
}

fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[i] = Rational::one();
    v
}

/// All `size`-subsets (1-based, lexicographic) of pairwise-commuting generators.
fn commuting_subsets(alg: &TwoStepAlgebra, size: usize) -> Vec<Vec<usize>> {
    fn grow(
        alg: &TwoStepAlgebra,
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.iter().map(|i| i + 1).collect());
            return;
        }
        for v in start..alg.b() {
            if alg.b() - v < size - cur.len() {
                break;
            }
            if cur.iter().all(|&u| alg.commutes(u, v)) {
                cur.push(v);
                grow(alg, size, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(alg, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Depth-first search for an `α`-dimensional subspace of `span(y)` on which every
/// bracket form vanishes.
///
/// At each node, with `U` the vectors chosen so far and `W ⊇ U` the common orthogonal of
/// `U` under all forms, candidates are tried in this order: the common radical of the
/// forms restricted to `W`, the radicals of single forms and of sums and differences of
/// two forms on `W`, a basis of `W` and pairwise sums of it (plus `e_i ± e_j` at the root).
struct IsotropicSearch {
    forms: Vec<RatMatrix>,
    b: usize,
    alpha: usize,
    budget: usize,
    nodes: usize,
    best: usize,
}

impl IsotropicSearch {
    fn new(alg: &TwoStepAlgebra, alpha: usize, budget: usize) -> Self {
        let b = alg.b();
        let forms = (0..alg.c())
            .map(|k| {
                (0..b)
                    .map(|i| (0..b).map(|j| alg.gamma(i, j, k)).collect())
                    .collect()
            })
            .collect();
        IsotropicSearch {
            forms,
            b,
            alpha,
            budget,
            nodes: 0,
            best: 0,
        }
    }

    fn run(&mut self) -> Option<Vec<Vec<Rational>>> {
        let mut cur = Vec::new();
        self.extend(&mut cur).then_some(cur)
    }

    /// Vectors `v` with `ω_k(u, v) = 0` for every `u` in `cur` and every form.
    fn perp(&self, cur: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let rows: RatMatrix = cur
            .iter()
            .flat_map(|u| {
                self.forms.iter().map(move |om| {
                    (0..self.b)
                        .map(|j| (0..self.b).map(|i| &u[i] * &om[i][j]).sum())
                        .collect()
                })
            })
            .collect();
        if rows.is_empty() {
            return (0..self.b).map(|i| unit(self.b, i)).collect();
        }
        linalg::nullspace(&rows, self.b)
    }

    fn candidates(&self, cur: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let w = self.perp(cur);
        let m = w.len();
        // forms restricted to W, in the coordinates of the basis `w`
        let restricted: Vec<RatMatrix> = self
            .forms
            .iter()
            .map(|om| {
                let ow: Vec<Vec<Rational>> = w.iter().map(|x| linalg::mat_vec(om, x)).collect();
                (0..m)
                    .map(|i| (0..m).map(|j| dot(&w[i], &ow[j])).collect())
                    .collect()
            })
            .collect();
        let lift = |coords: Vec<Rational>| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); self.b];
            for (c, x) in coords.iter().zip(&w) {
                if !c.is_zero() {
                    for (vi, xi) in v.iter_mut().zip(x) {
                        *vi += c * xi;
                    }
                }
            }
            v
        };
        let mut out: Vec<Vec<Rational>> = Vec::new();
        let mut stacked: RatMatrix = restricted.iter().flatten().cloned().collect();
        if stacked.is_empty() {
            stacked = vec![vec![Rational::zero(); m]];
        }
        out.extend(linalg::nullspace(&stacked, m).into_iter().map(lift));
        let mut combos: Vec<RatMatrix> = restricted.clone();
        for i in 0..restricted.len() {
            for j in i + 1..restricted.len() {
                for sign in [1i64, -1] {
                    let s = Rational::from_integer(sign.into());
                    combos.push(
                        restricted[i]
                            .iter()
                            .zip(&restricted[j])
                            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + &s * y).collect())
                            .collect(),
                    );
                }
            }
        }
        for c in &combos {
            out.extend(linalg::nullspace(c, m).into_iter().map(lift));
        }
        out.extend(w.iter().cloned());
        for i in 0..m {
            for j in i + 1..m {
                out.push(w[i].iter().zip(&w[j]).map(|(a, b)| a + b).collect());
            }
        }
        if cur.is_empty() {
            for i in 0..self.b {
                for j in i + 1..self.b {
                    let mut v = unit(self.b, i);
                    v[j] = -Rational::one();
                    out.push(v);
                }
            }
        }
        // keep primitive integer representatives outside span(cur), without repeats
        let mut span = Echelon::new();
        for u in cur {
            span.insert(u.iter().enumerate().map(|(i, x)| (i as u64, x)));
        }
        let mut seen = std::collections::BTreeSet::new();
        out.into_iter()
            .filter_map(primitive)
            .filter(|v| {
                seen.insert(v.clone()) && !span.contains(v.iter().enumerate().map(|(i, x)| (i as u64, x)))
            })
            .collect()
    }

    fn extend(&mut self, cur: &mut Vec<Vec<Rational>>) -> bool {
        self.nodes += 1;
        self.best = self.best.max(cur.len());
        if cur.len() == self.alpha {
            return true;
        }
        if self.nodes >= self.budget {
            return false;
        }
        for v in self.candidates(cur) {
            cur.push(v);
            if self.extend(cur) {
                return true;
            }
            cur.pop();
            if self.nodes >= self.budget {
                return false;
            }
        }
        false
    }
}

/// The primitive integer multiple of `v` with positive leading entry; `None` for zero.
fn primitive(v: Vec<Rational>) -> Option<Vec<Rational>> {
    use num_integer::Integer;
    let lead = v.iter().find(|x| !x.is_zero())?;
    let positive = lead > &Rational::zero();
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
    Some(
        ints.into_iter()
            .map(|x| {
                let y = x / &g;
                Rational::from_integer(if positive { y } else { -y })
            })
            .collect(),
    )
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
