//! Exact linear algebra.
//!
//! [`Echelon`] is an incremental sparse row-echelon form over the integers: rows are kept
//! primitive (content divided out) and new vectors are reduced fraction-free, so no
//! rational arithmetic happens inside the elimination loop. It supports "build once,
//! test many" membership queries.
//!
//! The dense helpers at the bottom handle the small `d x d` matrices used for basis
//! changes and Gram matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exterior::Rational;

type Row = Vec<(u64, BigInt)>;

/// Incremental fraction-free echelon form keyed by `u64` column labels.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<u64, Row>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a vector; returns `true` if it was independent of the rows already present.
    pub fn insert<'a, I>(&mut self, entries: I) -> bool
    where
        I: IntoIterator<Item = (u64, &'a Rational)>,
    {
        let row = self.reduce(integer_row(entries));
        match row.first() {
            None => false,
            Some(&(lead, _)) => {
                self.rows.insert(lead, row);
                true
            }
        }
    }

    /// Whether the vector lies in the span of the stored rows.
    pub fn contains<'a, I>(&self, entries: I) -> bool
    where
        I: IntoIterator<Item = (u64, &'a Rational)>,
    {
        self.reduce(integer_row(entries)).is_empty()
    }

    /// Membership of a single basis vector `e_col`.
    pub fn contains_unit(&self, col: u64) -> bool {
        self.reduce(vec![(col, BigInt::one())]).is_empty()
    }

    fn reduce(&self, mut row: Row) -> Row {
        while let Some(&(lead, _)) = row.first() {
            match self.rows.get(&lead) {
                Some(pivot) => row = eliminate(&row, pivot),
                None => break,
            }
        }
        row
    }
}

fn integer_row<'a, I>(entries: I) -> Row
where
    I: IntoIterator<Item = (u64, &'a Rational)>,
{
    let mut merged: BTreeMap<u64, Rational> = BTreeMap::new();
    for (k, v) in entries {
        *merged.entry(k).or_insert_with(Rational::zero) += v;
    }
    merged.retain(|_, v| !v.is_zero());
    let lcm = merged
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut row: Row = merged
        .into_iter()
        .map(|(k, v)| (k, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(&mut row);
    row
}

fn make_primitive(row: &mut Row) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    let flip = first.1.is_negative();
    if !g.is_one() || flip {
        for (_, v) in row.iter_mut() {
            if !g.is_one() {
                *v = &*v / &g;
            }
            if flip {
                *v = -&*v;
            }
        }
    }
}

/// `a * v - x * p` with `a`, `x` the leading coefficients of `p` and `v` divided by their gcd.
fn eliminate(v: &Row, p: &Row) -> Row {
    let a = &p[0].1;
    let x = &v[0].1;
    let g = a.gcd(x);
    let a = a / &g;
    let x = x / &g;
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push((v[i].0, &a * &v[i].1));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(&x * &p[j].1)));
            j += 1;
        } else {
            let val = &a * &v[i].1 - &x * &p[j].1;
            if !val.is_zero() {
                out.push((v[i].0, val));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Dense rational matrix, row-major.
pub type RatMatrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut m = m.clone();
    rref(&mut m).len()
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut aug: RatMatrix = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// A basis of `{x : m x = 0}` for a matrix with `cols` columns.
pub fn nullspace(m: &RatMatrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn mat_vec(m: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(m: &RatMatrix) -> RatMatrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Checks positive definiteness of a symmetric matrix by exact elimination without
/// pivoting (all pivots positive iff all leading principal minors positive).
/// On failure returns the order of the first non-positive leading minor.
pub fn check_positive_definite(m: &RatMatrix) -> Result<(), usize> {
    let n = m.len();
    let mut a = m.clone();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return Err(k + 1);
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn rq(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        let v1 = [(0u64, q(2)), (3, q(4))];
        assert!(e.insert(v1.iter().map(|(k, v)| (*k, v))));
        assert!(!e.insert([(0u64, &q(-1)), (3, &q(-2))]));
        assert!(e.contains([(0u64, &rq(1, 3)), (3, &rq(2, 3))]));
        assert!(!e.contains_unit(0));
        assert!(e.insert([(3u64, &q(5))]));
        assert!(e.contains_unit(0));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(std::iter::empty()));
    }

    #[test]
    fn dense_helpers() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert!(inverse(&vec![vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
        let ns = nullspace(&vec![vec![q(1), q(1), q(0)]], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&vec![vec![q(1), q(1), q(0)]], v)[0].is_zero());
        }
        assert_eq!(check_positive_definite(&m), Ok(()));
        let indefinite = vec![vec![q(1), q(2)], vec![q(2), q(1)]];
        assert_eq!(check_positive_definite(&indefinite), Err(2));
        assert_eq!(check_positive_definite(&vec![vec![q(0)]]), Err(1));
    }

    fn float_rank(rows: &[Vec<i64>], cols: usize) -> usize {
        if rows.is_empty() {
            return 0;
        }
        let m = DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j] as f64);
        let sv = m.svd(false, false).singular_values;
        let max = sv.iter().cloned().fold(0.0, f64::max);
        sv.iter().filter(|&&s| s > 1e-8 * max.max(1e-300)).count()
    }

    proptest! {
        #[test]
        fn exact_rank_matches_float_rank(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 8), 0..10),
            dens in prop::collection::vec(1i64..=4, 10),
        ) {
            let mut ech = Echelon::new();
            for (r, row) in rows.iter().enumerate() {
                let vals: Vec<Rational> = row.iter().map(|&x| rq(x, dens[r])).collect();
                ech.insert(vals.iter().enumerate().map(|(c, v)| (c as u64, v)));
            }
            prop_assert_eq!(ech.rank(), float_rank(&rows, 8));
            let dense: RatMatrix = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            prop_assert_eq!(rank(&dense), ech.rank());
        }
    }
}
