//! Presentations of the orbifold groups of the Apollonius family.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{todd_coxeter, Presentation, Word};
use crate::numerics::Weight;

fn power(p: &mut Presentation, w: &Word, b: Weight) {
    if let Weight::Fin(n) = b {
        p.relate(w.pow(n as i64));
    }
}

/// `pi_1` of the complement of a conic and `n` tangent lines.
///
/// Generators `t1..tn` (lines) and `k1..kn` (conic meridians).
pub fn build_apollonius_pi1(n: usize) -> Presentation {
    let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).chain((1..=n).map(|i| format!("k{i}"))).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut p = Presentation::new(&refs);
    let t = |i: usize| Word::gen(i - 1);
    let k = |i: usize| Word::gen(n + i - 1);
    for i in 2..=n {
        p.equate(&k(i), &t(i).mul(&k(i - 1)).mul(&t(i).inverse()));
    }
    for i in 1..=n {
        p.equate(&k(i).mul(&t(i)).pow(2), &t(i).mul(&k(i)).pow(2));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let conj = k(i).inverse().mul(&t(i)).mul(&k(i));
            p.relate(Word::commutator(&conj, &t(j)));
        }
    }
    let mut last = Word::identity();
    for i in (1..=n).rev() {
        last = last.mul(&t(i));
    }
    p.relate(last.mul(&k(1).pow(2)));
    p
}

/// The orbifold group of `A(a; b1, b2, b3)`, generators `k t s`.
/// Infinite weights drop their power relator.
pub fn build_modular(a: Weight, b1: Weight, b2: Weight, b3: Weight) -> Presentation {
    let mut p = Presentation::new(&["k", "t", "s"]);
    let (k, t, s) = (Word::gen(0), Word::gen(1), Word::gen(2));
    p.equate(&t.mul(&k).pow(2), &k.mul(&t).pow(2));
    p.equate(&s.mul(&k).pow(2), &k.mul(&s).pow(2));
    p.relate(Word::commutator(&s, &t));
    power(&mut p, &k, a);
    power(&mut p, &t, b1);
    power(&mut p, &s, b2);
    power(&mut p, &k.mul(&t).mul(&k).mul(&s), b3);
    p
}

/// The orbifold group of `A(a; b, b)`, generators `t k`; the second line's
/// meridian is `k^-2 t^-1`.
pub fn build_a2(a: Weight, b: Weight) -> Presentation {
    let mut p = Presentation::new(&["t", "k"]);
    let (t, k) = (Word::gen(0), Word::gen(1));
    p.equate(&t.mul(&k).pow(2), &k.mul(&t).pow(2));
    power(&mut p, &k, a);
    power(&mut p, &t, b);
    power(&mut p, &k.pow(-2).mul(&t.inverse()), b);
    p
}

/// Orbifold group of weighted lines in general position. The complement
/// group is abelian, so this is `Z^n` modulo the weights and the product of
/// all meridians.
pub fn line_arrangement_group(weights: &[Weight]) -> Presentation {
    let names: Vec<String> = (1..=weights.len()).map(|i| format!("t{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut p = Presentation::new(&refs);
    for i in 0..weights.len() {
        for j in i + 1..weights.len() {
            p.relate(Word::commutator(&Word::gen(i), &Word::gen(j)));
        }
    }
    for (i, &w) in weights.iter().enumerate() {
        power(&mut p, &Word::gen(i), w);
    }
    p.relate(Word::from_syllables((0..weights.len()).rev().map(|i| (i, 1))));
    p
}

/// `(P^2, m T1 + m T2 + m T3)` for the coordinate triangle.
pub fn coordinate_triangle(m: u64) -> Presentation {
    line_arrangement_group(&[Weight::Fin(m); 3])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderOutcome {
    Pass,
    Fail { got: usize },
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCheck {
    pub case: String,
    pub expected: u64,
    pub outcome: OrderOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrderReport {
    pub checks: Vec<OrderCheck>,
}

impl OrderReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.outcome == OrderOutcome::Pass)
    }

    pub fn overflows(&self) -> impl Iterator<Item = &OrderCheck> {
        self.checks.iter().filter(|c| c.outcome == OrderOutcome::Overflow)
    }
}

impl fmt::Display for OrderCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            OrderOutcome::Pass => write!(f, "PASS {} = {}", self.case, self.expected),
            OrderOutcome::Fail { got } => write!(f, "FAIL {} = {got}, expected {}", self.case, self.expected),
            OrderOutcome::Overflow => write!(f, "OVERFLOW {} (expected {})", self.case, self.expected),
        }
    }
}

/// `8 [1/b1 + 1/b2 + 1/b3 - 1]^-2` for a spherical triple.
fn triangle_formula(bs: [u64; 3]) -> u64 {
    let s: BigRational = bs.iter().map(|&b| BigRational::new(BigInt::one(), BigInt::from(b))).sum::<BigRational>()
        - BigRational::one();
    let v = BigRational::from_integer(BigInt::from(8)) / (&s * &s);
    assert!(v.is_integer(), "spherical triple gives an integral order");
    v.to_integer().to_u64().expect("order fits")
}

/// Compares enumerated orders with the closed forms `2b^2`,
/// `8[sum 1/b - 1]^-2` and `4a^3`.
pub fn verify_orders(max_weight: u64, max_cosets: usize) -> OrderReport {
    let mut report = OrderReport::default();
    let mut check = |case: String, p: Presentation, expected: u64| {
        let outcome = match todd_coxeter(&p, max_cosets) {
            Ok(t) if t.order() as u64 == expected => OrderOutcome::Pass,
            Ok(t) => OrderOutcome::Fail { got: t.order() },
            Err(_) => OrderOutcome::Overflow,
        };
        report.checks.push(OrderCheck { case, expected, outcome });
    };
    let w = Weight::Fin;
    for b in 2..=max_weight {
        check(format!("A(2;{b},{b})"), build_a2(w(2), w(b)), 2 * b * b);
    }
    for b1 in 2..=max_weight {
        for b2 in b1..=max_weight {
            for b3 in b2..=max_weight {
                if b1 * b2 + b1 * b3 + b2 * b3 > b1 * b2 * b3 {
                    let name = format!("A(2;{b1},{b2},{b3})");
                    check(name, build_modular(w(2), w(b1), w(b2), w(b3)), triangle_formula([b1, b2, b3]));
                }
            }
        }
    }
    for a in 2..=max_weight {
        check(format!("A({a};2,2,2)"), build_modular(w(a), w(2), w(2), w(2)), 4 * a * a * a);
    }
    report
}
