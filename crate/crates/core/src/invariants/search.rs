//! Exhaustive searches over the Apollonius and cuspidal families.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{apollonius_cherns, cuspidal_cherns};
use crate::numerics::Weight;

/// An Apollonius weight vector `(a; b_1, ..., b_n)` with the `b_i` sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple {
    pub a: Weight,
    pub bs: Vec<Weight>,
}

impl Tuple {
    pub fn new(a: Weight, bs: &[Weight]) -> Tuple {
        let mut bs = bs.to_vec();
        bs.sort();
        Tuple { a, bs }
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bs: Vec<String> = self.bs.iter().map(|b| b.to_string()).collect();
        write!(f, "({};{})", self.a, bs.join(","))
    }
}

/// Solution sets of the four equality clauses, within a weight cap.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParabolicSolutions {
    pub cap: u64,
    /// `2e = c1^2` with `a != 2`; the `a = 2` family is reported symbolically.
    pub polydisk: Vec<Tuple>,
    /// Number of admissible `a = 2` tuples checked against `2e = c1^2`.
    pub family_checked: usize,
    /// `a = 2` tuples violating `2e = c1^2` (expected empty).
    pub family_failures: Vec<Tuple>,
    /// `e = c1^2 = 0`.
    pub flat: Vec<Tuple>,
    /// `3e = c1^2 > 0`.
    pub ball: Vec<Tuple>,
    /// `c1^2 = 0 < e`.
    pub zero_c1: Vec<Tuple>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Calls `f` on every non-decreasing sequence over `values` of length `n`.
fn multisets<F: FnMut(&[Weight])>(values: &[Weight], n: usize, f: &mut F) {
    fn go<F: FnMut(&[Weight])>(values: &[Weight], start: usize, cur: &mut Vec<Weight>, n: usize, f: &mut F) {
        if cur.len() == n {
            f(cur);
            return;
        }
        for i in start..values.len() {
            cur.push(values[i]);
            go(values, i, cur, n, f);
            cur.pop();
        }
    }
    go(values, 0, &mut Vec::new(), n, f);
}

/// Enumerates admissible `(a; b_1..b_n)` with `n <= 6` and weights in
/// `{2..cap} ∪ {INF}`, sorting each tuple into the clauses it satisfies.
///
/// Admissibility only constrains the tacnodes, `1/a + 1/b >= 1/2`, so for a
/// given `a` the line weights range over the values compatible with it.
pub fn search_parabolic(cap: u64) -> ParabolicSolutions {
    let mut values: Vec<Weight> = (2..=cap).map(Weight::Fin).collect();
    values.push(Weight::Inf);
    let half = BigRational::new(1.into(), 2.into());
    let mut out = ParabolicSolutions { cap, ..Default::default() };
    for &a in &values {
        let allowed: Vec<Weight> =
            values.iter().copied().filter(|b| a.reciprocal() + b.reciprocal() >= half).collect();
        for n in 0..=6 {
            multisets(&allowed, n, &mut |bs| {
                let Ok(p) = apollonius_cherns(a, bs) else { return };
                let (c, e) = (p.c1sq(), p.euler());
                let t = Tuple::new(a, bs);
                if rat(2) * e == *c {
                    if a == Weight::Fin(2) {
                        out.family_checked += 1;
                    } else {
                        out.polydisk.push(t.clone());
                    }
                } else if a == Weight::Fin(2) {
                    out.family_checked += 1;
                    out.family_failures.push(t.clone());
                }
                if c.is_zero() && e.is_zero() {
                    out.flat.push(t.clone());
                }
                if c.is_positive() && rat(3) * e == *c {
                    out.ball.push(t.clone());
                }
                if c.is_zero() && e.is_positive() {
                    out.zero_c1.push(t);
                }
            });
        }
    }
    for v in [&mut out.polydisk, &mut out.flat, &mut out.ball, &mut out.zero_c1] {
        v.sort();
    }
    out
}

/// A row `(d, kappa, nu, b, g)` of the cuspidal ball-quotient table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspidalRow {
    pub d: u32,
    pub kappa: u32,
    pub nu: u32,
    pub b: u64,
    pub g: u32,
}

/// All `(d, kappa, nu, b)` with `d <= d_max`, `b` in `b_set`, nonnegative
/// genus and `3e = c1^2`, sorted by `(d, nu, b, kappa)`.
///
/// For fixed `(d, b, kappa)` the defect `3e - c1^2` is affine in `nu` with
/// nonzero slope `3(1/b^2 - 1)`, so each `kappa` admits at most one `nu`.
pub fn enumerate_cuspidal(d_max: u32, b_set: &[u64]) -> Vec<CuspidalRow> {
    let mut rows = Vec::new();
    for d in 1..=d_max {
        let top = (d as i64 - 1) * (d as i64 - 2) / 2;
        for &b in b_set {
            let w = Weight::Fin(b);
            let defect = |kappa: u32, nu: u32| {
                let p = cuspidal_cherns(d, kappa, nu, w).expect("genus checked by caller");
                rat(3) * p.euler() - p.c1sq()
            };
            let slope = rat(3) * (w.reciprocal() * w.reciprocal() - rat(1));
            for kappa in 0..=top as u32 {
                let f0 = defect(kappa, 0);
                let nu = -f0 / &slope;
                if !nu.is_integer() || nu.is_negative() {
                    continue;
                }
                let nu: i64 = nu.to_integer().try_into().unwrap_or(i64::MAX);
                let g = top - kappa as i64 - nu;
                if g < 0 {
                    continue;
                }
                let nu = nu as u32;
                debug_assert!(defect(kappa, nu).is_zero());
                rows.push(CuspidalRow { d, kappa, nu, b, g: g as u32 });
            }
        }
    }
    rows.sort_by_key(|r| (r.d, r.nu, r.b, r.kappa));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Weight::{Fin, Inf};

    #[test]
    fn affine_solve_matches_brute_force() {
        let mut brute = Vec::new();
        for d in 1..=9u32 {
            let top = (d as i64 - 1) * (d as i64 - 2) / 2;
            for b in 2..=6u64 {
                for kappa in 0..=top {
                    for nu in 0..=top - kappa {
                        let p = cuspidal_cherns(d, kappa as u32, nu as u32, Fin(b)).unwrap();
                        if rat(3) * p.euler() == *p.c1sq() {
                            let g = (top - kappa - nu) as u32;
                            brute.push(CuspidalRow { d, kappa: kappa as u32, nu: nu as u32, b, g });
                        }
                    }
                }
            }
        }
        brute.sort_by_key(|r| (r.d, r.nu, r.b, r.kappa));
        assert_eq!(enumerate_cuspidal(9, &[2, 3, 4, 5, 6]), brute);
    }

    #[test]
    fn nothing_below_six_with_cusps_at_b2() {
        assert!(enumerate_cuspidal(5, &[2]).iter().all(|r| r.kappa == 0));
        assert!(enumerate_cuspidal(6, &[2]).contains(&CuspidalRow { d: 6, kappa: 9, nu: 0, b: 2, g: 1 }));
    }

    #[test]
    fn ball_clause() {
        let s = search_parabolic(12);
        let want: Vec<Tuple> = vec![
            Tuple::new(Fin(3), &[Fin(2), Fin(6), Fin(6)]),
            Tuple::new(Fin(3), &[Fin(3), Fin(3), Fin(6)]),
            Tuple::new(Fin(3), &[Fin(3), Fin(4), Fin(4)]),
            Tuple::new(Fin(4), &[Fin(4), Fin(4), Fin(4)]),
        ];
        assert_eq!(s.ball, want);
        assert!(s.family_failures.is_empty());
        assert!(s.flat.contains(&Tuple::new(Fin(2), &[Inf, Inf])));
    }
}
