//! Closed-form bounds on the independence number `α` of a 2-step nilpotent Lie algebra
//! in terms of its dimension `d` and first Betti number `b`, and their graph analogues.
//!
//! Every real bound comes with an exact integer rounding (`floor` of the upper bound,
//! `ceil` of the lower bound) computed in integer arithmetic, so the sandwich
//! `lower_ceil ≤ α ≤ upper_floor` never depends on floating-point rounding.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundCase {
    /// `d < b + 1`, i.e. the algebra is abelian.
    Abelian,
    /// `d = b + 1`.
    CorankOne,
    /// `d > b + 1`.
    General,
}

impl BoundCase {
    pub fn of(d: u64, b: u64) -> BoundCase {
        match d.cmp(&(b + 1)) {
            std::cmp::Ordering::Less => BoundCase::Abelian,
            std::cmp::Ordering::Equal => BoundCase::CorankOne,
            std::cmp::Ordering::Greater => BoundCase::General,
        }
    }
}

fn check(d: u64, b: u64) -> Result<()> {
    if b == 0 || b > d {
        return Err(Error::InvalidInput(format!(
            "bounds need 1 <= b <= d, got d = {d}, b = {b}"
        )));
    }
    Ok(())
}

/// `b² + b - 2d`, the radicand of the upper bound minus `1/4`.
fn upper_radicand(d: u64, b: u64) -> Result<BigInt> {
    let (d, b) = (BigInt::from(d), BigInt::from(b));
    let r: BigInt = &b * &b + &b - BigInt::from(2) * d;
    if r.is_negative() {
        return Err(Error::InvalidInput(
            "b² + b - 2d < 0: no 2-step algebra has these dimensions".into(),
        ));
    }
    Ok(r)
}

/// `1/2 + sqrt(1/4 + b² + b - 2d)`.
pub fn upper_bound(d: u64, b: u64) -> Result<f64> {
    check(d, b)?;
    let r = upper_radicand(d, b)?.to_f64().unwrap_or(f64::INFINITY);
    Ok(0.5 + (0.25 + r).sqrt())
}

/// Largest integer `a` with `a(a - 1) ≤ b² + b - 2d`, which is `floor(upper_bound)`.
pub fn upper_bound_floor(d: u64, b: u64) -> Result<u64> {
    check(d, b)?;
    let r = upper_radicand(d, b)?;
    let fits = |a: u64| -> bool {
        let a = BigInt::from(a);
        &a * (&a - 1) <= r
    };
    let mut a = upper_bound(d, b)?.floor() as u64;
    while !fits(a) {
        a -= 1;
    }
    while fits(a + 1) {
        a += 1;
    }
    Ok(a)
}

/// Three-case lower bound; returns the value and the case.
pub fn lower_bound(d: u64, b: u64) -> Result<(f64, BoundCase)> {
    check(d, b)?;
    let case = BoundCase::of(d, b);
    let value = match case {
        BoundCase::Abelian => d as f64,
        BoundCase::CorankOne => (d - 1) as f64 / 2.0,
        BoundCase::General => {
            // (sqrt(M) - S) / (2(d-b-1)) rewritten as 2(b²+b) / (sqrt(M) + S)
            let (m, s) = general_terms(d, b);
            let bb = BigInt::from(b) * BigInt::from(b) + BigInt::from(b);
            2.0 * bb.to_f64().unwrap() / (m.to_f64().unwrap().sqrt() + s.to_f64().unwrap())
        }
    };
    Ok((value, case))
}

/// `M = 4(d-b-1)(b²+b) + (d+b+1)²` and `S = d+b+1`.
fn general_terms(d: u64, b: u64) -> (BigInt, BigInt) {
    let (bd, bb) = (BigInt::from(d), BigInt::from(b));
    let s = &bd + &bb + 1;
    let m = 4 * (&bd - &bb - 1) * (&bb * &bb + &bb) + &s * &s;
    (m, s)
}

/// `ceil(lower_bound)`, exact.
pub fn lower_bound_ceil(d: u64, b: u64) -> Result<u64> {
    check(d, b)?;
    Ok(match BoundCase::of(d, b) {
        BoundCase::Abelian => d,
        BoundCase::CorankOne => (d - 1).div_ceil(2),
        BoundCase::General => {
            // m ≥ L  ⇔  (d-b-1) m² + (d+b+1) m ≥ b² + b  for m ≥ 0
            let (_, s) = general_terms(d, b);
            let c1 = BigInt::from(d - b - 1);
            let target = BigInt::from(b) * BigInt::from(b) + BigInt::from(b);
            let ok = |m: u64| {
                let m = BigInt::from(m);
                &c1 * &m * &m + &s * &m >= target
            };
            let mut m = lower_bound(d, b)?.0.ceil().max(0.0) as u64;
            while m > 0 && ok(m - 1) {
                m -= 1;
            }
            while !ok(m) {
                m += 1;
            }
            m
        }
    })
}

/// The naive bound `b² / (2d - b)`, which fails on Heisenberg algebras.
pub fn naive_lower_bound(d: u64, b: u64) -> Result<f64> {
    check(d, b)?;
    Ok((b * b) as f64 / (2 * d - b) as f64)
}

/// Turán-type lower and Hansen-type upper bounds on `α(G)`.
pub fn graph_bounds(g: &Graph) -> (f64, f64) {
    let n = g.vertex_count() as f64;
    let e = g.edge_count() as f64;
    if g.vertex_count() == 0 {
        return (0.0, 0.0);
    }
    (n * n / (2.0 * e + n), 0.5 + (0.25 + n * n - n - 2.0 * e).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbelianDimBounds {
    pub lower: f64,
    pub upper: f64,
    /// `α + d - b`, when `α` is known.
    pub exact: Option<u64>,
}

/// Bounds on the dimension of the largest abelian subalgebra: the `α` bounds shifted by
/// `d - b`.
pub fn abelian_dim_bounds(d: u64, b: u64, alpha: Option<u64>) -> Result<AbelianDimBounds> {
    let shift = (d - b.min(d)) as f64;
    Ok(AbelianDimBounds {
        lower: lower_bound(d, b)?.0 + shift,
        upper: upper_bound(d, b)? + shift,
        exact: alpha.map(|a| a + d - b),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub d: u64,
    pub b: u64,
    pub lower: f64,
    pub upper: f64,
    pub lower_ceil: u64,
    pub upper_floor: u64,
    pub alpha_exact: Option<u64>,
    pub abelian_lower: f64,
    pub abelian_upper: f64,
    pub abelian_exact: Option<u64>,
    pub case_tag: BoundCase,
}

impl BoundReport {
    /// `lower_ceil ≤ α ≤ upper_floor`, vacuously true without `α`.
    pub fn sandwich_holds(&self) -> bool {
        self.alpha_exact
            .is_none_or(|a| self.lower_ceil <= a && a <= self.upper_floor)
    }
}

pub fn bound_report(d: u64, b: u64, alpha: Option<u64>) -> Result<BoundReport> {
    let (lower, case_tag) = lower_bound(d, b)?;
    let ab = abelian_dim_bounds(d, b, alpha)?;
    Ok(BoundReport {
        d,
        b,
        lower,
        upper: upper_bound(d, b)?,
        lower_ceil: lower_bound_ceil(d, b)?,
        upper_floor: upper_bound_floor(d, b)?,
        alpha_exact: alpha,
        abelian_lower: ab.lower,
        abelian_upper: ab.upper,
        abelian_exact: ab.exact,
        case_tag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn upper_examples() {
        assert!(close(upper_bound(5, 4).unwrap(), 0.5 + 10.25f64.sqrt()));
        assert_eq!(upper_bound_floor(5, 4).unwrap(), 3);
        for b in 1..20 {
            assert!(close(upper_bound(b, b).unwrap(), b as f64));
            assert_eq!(upper_bound_floor(b, b).unwrap(), b);
        }
        assert!(matches!(upper_bound(100, 4), Err(Error::InvalidInput(_))));
        assert!(upper_bound(3, 4).is_err());
        assert!(upper_bound(3, 0).is_err());
    }

    #[test]
    fn lower_examples() {
        for n in 1..10u64 {
            let (v, case) = lower_bound(2 * n + 1, 2 * n).unwrap();
            assert_eq!(case, BoundCase::CorankOne);
            assert!(close(v, n as f64));
            assert_eq!(lower_bound_ceil(2 * n + 1, 2 * n).unwrap(), n);
        }
        assert_eq!(lower_bound(6, 6).unwrap(), (6.0, BoundCase::Abelian));
        // L(K_4): M = 4·5·20 + 15² = 625
        let (v, case) = lower_bound(10, 4).unwrap();
        assert_eq!(case, BoundCase::General);
        assert!(close(v, 1.0));
        assert_eq!(lower_bound_ceil(10, 4).unwrap(), 1);
    }

    #[test]
    fn graph_examples() {
        for n in 1..8 {
            let (lo, hi) = graph_bounds(&Graph::complete(n));
            assert!(close(lo, 1.0) && close(hi, 1.0));
            let (lo, hi) = graph_bounds(&Graph::empty(n));
            assert!(close(lo, n as f64) && hi >= n as f64 - 1e-12);
        }
        let (lo, hi) = graph_bounds(&Graph::path(3));
        assert!(close(lo, 9.0 / 7.0));
        assert!(close(hi, 2.0));
    }

    #[test]
    fn abelian_dimension_examples() {
        for n in 1..6u64 {
            let ab = abelian_dim_bounds(2 * n + 1, 2 * n, Some(n)).unwrap();
            assert!(close(ab.lower, (n + 1) as f64));
            assert_eq!(ab.exact, Some(n + 1));
        }
        let ab = abelian_dim_bounds(4, 4, Some(4)).unwrap();
        assert!(close(ab.lower, 4.0) && close(ab.upper, 4.0));
        assert_eq!(abelian_dim_bounds(10, 4, Some(1)).unwrap().exact, Some(7));
    }

    #[test]
    fn naive_bound_fails_on_heisenberg() {
        for n in 2..10u64 {
            assert!(naive_lower_bound(2 * n + 1, 2 * n).unwrap() > n as f64);
        }
        assert!(close(naive_lower_bound(3, 2).unwrap(), 1.0));
    }

    #[test]
    fn report_fields() {
        let r = bound_report(5, 4, Some(2)).unwrap();
        assert_eq!((r.lower_ceil, r.upper_floor), (2, 3));
        assert!(r.sandwich_holds());
        assert_eq!(r.case_tag, BoundCase::CorankOne);
        let json = serde_json::to_string(&r.case_tag).unwrap();
        assert_eq!(json, "\"corank-one\"");
        assert!(!bound_report(5, 4, Some(4)).unwrap().sandwich_holds());
    }

    #[test]
    fn large_inputs_use_big_integers() {
        let d = 1_000_000u64;
        let b = 2_000u64;
        let c = lower_bound_ceil(d, b).unwrap();
        let (l, _) = lower_bound(d, b).unwrap();
        assert!((c as f64) >= l - 1e-9 && (c as f64) < l + 1.0);
        let f = upper_bound_floor(d, b).unwrap();
        let u = upper_bound(d, b).unwrap();
        assert!((f as f64) <= u + 1e-9 && (f as f64) > u - 1.0);
    }

    proptest! {
        #[test]
        fn integer_roundings_agree_with_floats(b in 1u64..60, extra in 0u64..1800) {
            let d = b + extra.min(b * (b - 1) / 2);
            let (l, _) = lower_bound(d, b).unwrap();
            let u = upper_bound(d, b).unwrap();
            let lc = lower_bound_ceil(d, b).unwrap() as f64;
            let uf = upper_bound_floor(d, b).unwrap() as f64;
            prop_assert!(lc + 1e-9 >= l && lc - 1.0 < l + 1e-9);
            prop_assert!(uf <= u + 1e-9 && uf + 1.0 > u - 1e-9);
            prop_assert!(l <= u + 1e-9);
        }

        #[test]
        fn graph_upper_equals_lie_upper(n in 1usize..12, mask in any::<u64>()) {
            let g = Graph::from_pair_mask(n, mask);
            let d = (n + g.edge_count()) as u64;
            let (_, hi) = graph_bounds(&g);
            prop_assert!(close(upper_bound(d, n as u64).unwrap(), hi));
        }
    }
}
