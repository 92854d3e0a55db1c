//! Exterior (Grassmann) algebra on `n <= 64` anticommuting generators with exact
//! rational coefficients.
//!
//! A monomial is a bitmask of generator indices; its canonical form lists the indices in
//! increasing order. Every sign in the crate comes from the two primitives here:
//! [`Monomial::wedge`] and [`Monomial::remove`].

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Echelon;

pub type Rational = num_rational::BigRational;

/// Largest generator count a [`Monomial`] can address.
pub const MAX_GENERATORS: usize = 64;

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a rational number")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a rational number")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// A squarefree monomial `e_{i_1} ... e_{i_k}` with `i_1 < ... < i_k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u64) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn generator(index: usize) -> Self {
        debug_assert!(index < MAX_GENERATORS);
        Monomial(1 << index)
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_GENERATORS && self.0 >> index & 1 == 1
    }

    /// Indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Normalizes an arbitrary index list. Returns `None` when an index repeats
    /// (the product vanishes); otherwise the canonical monomial and whether the
    /// sorting permutation is odd.
    pub fn from_indices(indices: &[usize]) -> Option<(Monomial, bool)> {
        let mut bits = 0u64;
        let mut odd = false;
        for &i in indices {
            assert!(i < MAX_GENERATORS, "generator index {i} exceeds 63");
            if bits >> i & 1 == 1 {
                return None;
            }
            // inversions contributed by i: earlier indices greater than i
            odd ^= (bits >> i).count_ones() & 1 == 1;
            bits |= 1 << i;
        }
        Some((Monomial(bits), odd))
    }

    /// `self ∧ rhs` as `(product, negate)`, or `None` if the factors share a generator.
    pub fn wedge(self, rhs: Monomial) -> Option<(Monomial, bool)> {
        if self.0 & rhs.0 != 0 {
            return None;
        }
        // count pairs (i in self, j in rhs) with i > j
        let mut parity = 0u32;
        let mut r = rhs.0;
        while r != 0 {
            let j = r.trailing_zeros();
            r &= r - 1;
            parity ^= (self.0 >> j).count_ones() & 1;
        }
        Some((Monomial(self.0 | rhs.0), parity == 1))
    }

    /// Left derivative `∂/∂e_index`: drops the generator, negating when it sits at an
    /// odd position of the canonical order.
    pub fn remove(self, index: usize) -> Option<(Monomial, bool)> {
        if !self.contains(index) {
            return None;
        }
        let below = self.0 & ((1u64 << index) - 1);
        Some((Monomial(self.0 & !(1 << index)), below.count_ones() & 1 == 1))
    }

    pub(crate) fn fits(self, generators: usize) -> bool {
        generators >= MAX_GENERATORS || self.0 >> generators == 0
    }
}

/// All degree-`k` monomials on `n` generators in lexicographic order of their index lists.
pub fn monomials_of_degree(n: usize, k: usize) -> impl Iterator<Item = Monomial> {
    (0..n).combinations(k).map(|c| {
        Monomial(c.iter().fold(0u64, |acc, &i| acc | 1 << i))
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Binomial coefficient with the convention `C(m, r) = 0` for `r < 0` or `r > m`.
pub fn binomial_signed(m: i64, r: i64) -> i64 {
    if r < 0 || m < 0 || r > m {
        0
    } else {
        binomial(m as usize, r as usize) as i64
    }
}

/// A sparse exact-rational element of the exterior algebra on `generators` generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExteriorPoly {
    generators: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl ExteriorPoly {
    pub fn zero(generators: usize) -> Self {
        assert!(generators <= MAX_GENERATORS);
        ExteriorPoly {
            generators,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(generators: usize) -> Self {
        Self::monomial(generators, Monomial::ONE, Rational::one())
    }

    /// The degree-one generator `e_index`.
    pub fn generator(generators: usize, index: usize) -> Result<Self> {
        if index >= generators {
            return Err(Error::GeneratorOutOfRange {
                index,
                count: generators,
            });
        }
        Ok(Self::monomial(
            generators,
            Monomial::generator(index),
            Rational::one(),
        ))
    }

    pub fn monomial(generators: usize, m: Monomial, coeff: Rational) -> Self {
        assert!(m.fits(generators), "monomial outside generator range");
        let mut p = Self::zero(generators);
        p.add_term(m, coeff);
        p
    }

    /// Builds a polynomial from `(index list, coefficient)` pairs in any order,
    /// normalizing each index list with its permutation sign.
    pub fn from_terms<I>(generators: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let mut p = Self::zero(generators);
        for (idx, c) in terms {
            if let Some(&bad) = idx.iter().find(|&&i| i >= generators) {
                return Err(Error::GeneratorOutOfRange {
                    index: bad,
                    count: generators,
                });
            }
            if let Some((m, odd)) = Monomial::from_indices(&idx) {
                p.add_term(m, if odd { -c } else { c });
            }
        }
        Ok(p)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The single degree shared by every term, if any. The zero polynomial has none.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.generators);
        for (m, c) in self.terms() {
            out.add_term(m, c * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, -c.clone());
        }
        Ok(out)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.generators != other.generators {
            return Err(Error::GeneratorMismatch {
                left: self.generators,
                right: other.generators,
            });
        }
        Ok(())
    }

    /// The exterior product `self ∧ other`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.generators);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                if let Some((m, odd)) = m1.wedge(m2) {
                    let c = c1 * c2;
                    out.add_term(m, if odd { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// The odd derivation `∂/∂e_gen`, acting from the left.
    pub fn interior_derivative(&self, gen: usize) -> Result<Self> {
        if gen >= self.generators {
            return Err(Error::GeneratorOutOfRange {
                index: gen,
                count: self.generators,
            });
        }
        let mut out = Self::zero(self.generators);
        for (m, c) in self.terms() {
            if let Some((rest, odd)) = m.remove(gen) {
                out.add_term(rest, if odd { -c.clone() } else { c.clone() });
            }
        }
        Ok(out)
    }

    /// The degree-`k` part.
    pub fn graded_slice(&self, k: usize) -> Self {
        ExteriorPoly {
            generators: self.generators,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for ExteriorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let word: String = m.indices().map(|i| format!("y{i}*")).collect();
            match (mag.is_one(), word.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{word}")?,
                (false, true) => write!(f, "{}", format_rational(&mag))?,
                (false, false) => write!(f, "{} {word}", format_rational(&mag))?,
            }
        }
        Ok(())
    }
}

/// Dimension of the span of homogeneous degree-`k` polynomials, by exact fraction-free
/// elimination over the sparse monomial basis.
pub fn rank_of_span(vectors: &[ExteriorPoly], k: usize) -> Result<usize> {
    let mut ech = Echelon::new();
    let mut generators = None;
    for v in vectors {
        match generators {
            None => generators = Some(v.generators),
            Some(n) if n != v.generators => {
                return Err(Error::GeneratorMismatch {
                    left: n,
                    right: v.generators,
                })
            }
            _ => {}
        }
        if let Some(bad) = v.terms.keys().find(|m| m.degree() != k) {
            return Err(Error::NotHomogeneous {
                expected: k,
                found: bad.degree(),
            });
        }
        ech.insert(v.terms().map(|(m, c)| (m.bits(), c)));
    }
    Ok(ech.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mono(n: usize, idx: &[usize]) -> ExteriorPoly {
        ExteriorPoly::from_terms(n, [(idx.to_vec(), q(1))]).unwrap()
    }

    #[test]
    fn wedge_signs() {
        let y0 = mono(4, &[0]);
        let y1 = mono(4, &[1]);
        assert_eq!(y0.wedge(&y1).unwrap(), mono(4, &[0, 1]));
        assert_eq!(y1.wedge(&y0).unwrap(), mono(4, &[0, 1]).scale(&q(-1)));
        assert!(y0.wedge(&y0).unwrap().is_zero());
        // (0,1,2,3) has no inversions, (0,2,1,3) has one
        let a = mono(4, &[0, 1]).wedge(&mono(4, &[2, 3])).unwrap();
        assert_eq!(a.coeff(Monomial::from_bits(0b1111)), q(1));
        let b = mono(4, &[0, 2]).wedge(&mono(4, &[1, 3])).unwrap();
        assert_eq!(b.coeff(Monomial::from_bits(0b1111)), q(-1));
    }

    #[test]
    fn wedge_generator_mismatch() {
        assert_eq!(
            mono(3, &[0]).wedge(&mono(4, &[1])),
            Err(Error::GeneratorMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn derivative_examples() {
        let p = mono(3, &[0, 1, 2]);
        assert_eq!(p.interior_derivative(1).unwrap(), mono(3, &[0, 2]).scale(&q(-1)));
        assert!(mono(4, &[0, 1]).interior_derivative(3).unwrap().is_zero());
        let twice = mono(2, &[0, 1])
            .interior_derivative(1)
            .unwrap()
            .interior_derivative(0)
            .unwrap();
        assert_eq!(twice, ExteriorPoly::one(2).scale(&q(-1)));
        assert!(mono(2, &[0]).interior_derivative(2).is_err());
    }

    /// Monomial inner product: monomials orthonormal.
    fn pairing(a: &ExteriorPoly, b: &ExteriorPoly) -> Rational {
        a.terms().map(|(m, c)| c * b.coeff(m)).sum()
    }

    #[test]
    fn derivative_is_adjoint_of_left_wedge() {
        // brute force over all monomial pairs for n <= 4
        for n in 1..=4usize {
            let all: Vec<Monomial> = (0..1u64 << n).map(Monomial::from_bits).collect();
            for i in 0..n {
                let yi = mono(n, &[i]);
                for &a in &all {
                    for &b in &all {
                        let p = ExteriorPoly::monomial(n, a, q(1));
                        let r = ExteriorPoly::monomial(n, b, q(1));
                        let lhs = pairing(&p.interior_derivative(i).unwrap(), &r);
                        let rhs = pairing(&p, &yi.wedge(&r).unwrap());
                        assert_eq!(lhs, rhs, "n={n} i={i} a={a:?} b={b:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn slices() {
        let p = ExteriorPoly::one(3).add(&mono(3, &[0, 1])).unwrap();
        assert_eq!(p.graded_slice(2), mono(3, &[0, 1]));
        assert!(ExteriorPoly::zero(3).graded_slice(1).is_zero());
        let mut sum = ExteriorPoly::zero(3);
        for k in 0..=3 {
            sum = sum.add(&p.graded_slice(k)).unwrap();
        }
        assert_eq!(sum, p);
    }

    #[test]
    fn rank_examples() {
        let a = mono(4, &[0, 1]);
        assert_eq!(rank_of_span(&[a.clone(), a.scale(&q(2))], 2).unwrap(), 1);
        let b = mono(4, &[2, 3]);
        let v = [a.add(&b).unwrap(), a.sub(&b).unwrap()];
        assert_eq!(rank_of_span(&v, 2).unwrap(), 2);
        assert_eq!(
            rank_of_span(&[ExteriorPoly::one(4).add(&a).unwrap()], 2),
            Err(Error::NotHomogeneous {
                expected: 2,
                found: 0
            })
        );
        assert_eq!(rank_of_span(&[], 3).unwrap(), 0);
    }

    #[test]
    fn display_notation() {
        let p = ExteriorPoly::from_terms(
            3,
            [
                (vec![], q(1)),
                (vec![1, 0], q(1)),
                (vec![2], Rational::new(3.into(), 2.into())),
            ],
        )
        .unwrap();
        assert_eq!(p.to_string(), "1 - y0*y1* + 3/2 y2*");
        assert_eq!(ExteriorPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("2/4").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational(" -3 ").unwrap(), q(-3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(format_rational(&parse_rational("6/-4").unwrap()), "-3/2");
    }

    fn inversion_parity(idx: &[usize]) -> bool {
        let mut inv = 0;
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                if idx[a] > idx[b] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 1
    }

    fn small_poly(n: usize) -> impl Strategy<Value = ExteriorPoly> {
        prop::collection::vec((0u64..(1u64 << n), -3i64..=3), 0..6).prop_map(move |ts| {
            let mut p = ExteriorPoly::zero(n);
            for (bits, c) in ts {
                p.add_term(Monomial::from_bits(bits), q(c));
            }
            p
        })
    }

    fn homogeneous(n: usize) -> impl Strategy<Value = ExteriorPoly> {
        (0..=n, small_poly(n)).prop_map(|(k, p)| p.graded_slice(k))
    }

    proptest! {
        #[test]
        fn canonicalization_matches_inversions(perm in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle(), len in 0..7usize) {
            let idx = &perm[..len];
            let (m, odd) = Monomial::from_indices(idx).unwrap();
            prop_assert_eq!(odd, inversion_parity(idx));
            prop_assert_eq!(m.degree(), len);
            let sorted: Vec<usize> = m.indices().collect();
            let (m2, odd2) = Monomial::from_indices(&sorted).unwrap();
            prop_assert_eq!(m2, m);
            prop_assert!(!odd2);
        }

        #[test]
        fn graded_commutativity(a in 0u64..256, b in 0u64..256) {
            let (ma, mb) = (Monomial::from_bits(a), Monomial::from_bits(b));
            match (ma.wedge(mb), mb.wedge(ma)) {
                (None, None) => {}
                (Some((p, s1)), Some((p2, s2))) => {
                    prop_assert_eq!(p, p2);
                    let swap = (ma.degree() * mb.degree()) % 2 == 1;
                    prop_assert_eq!(s1 ^ s2, swap);
                }
                _ => prop_assert!(false, "asymmetric vanishing"),
            }
        }

        #[test]
        fn derivative_is_odd_derivation(p in homogeneous(5), r in small_poly(5), i in 0usize..5) {
            let deg = p.homogeneous_degree().unwrap_or(0);
            let lhs = p.wedge(&r).unwrap().interior_derivative(i).unwrap();
            let first = p.interior_derivative(i).unwrap().wedge(&r).unwrap();
            let mut second = p.wedge(&r.interior_derivative(i).unwrap()).unwrap();
            if deg % 2 == 1 {
                second = second.scale(&q(-1));
            }
            prop_assert_eq!(lhs, first.add(&second).unwrap());
        }
    }
}
