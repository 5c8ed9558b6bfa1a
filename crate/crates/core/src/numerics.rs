//! Exact rationals extended by a single unsigned infinity.
//!
//! Every invariant in the crate is an [`XRat`]. Local orders use the infinite
//! value for log-canonical boundary points, and weights use [`Weight::Inf`]
//! for cusp-like branch orders.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arithmetic failures on the extended line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("undefined form: {0}")]
    UndefinedForm(&'static str),
    #[error("cannot parse `{0}` as an extended rational")]
    Parse(String),
    #[error("negative infinity is not representable")]
    NegativeInfinity,
}

/// A reduced fraction or `INF`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum XRat {
    Fin(BigRational),
    Inf,
}

impl XRat {
    pub fn int(n: i64) -> Self {
        XRat::Fin(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        XRat::Fin(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        XRat::int(0)
    }

    pub fn one() -> Self {
        XRat::int(1)
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, XRat::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, XRat::Fin(r) if r.is_zero())
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            XRat::Fin(r) => Some(r),
            XRat::Inf => None,
        }
    }

    /// Finite value, panicking on `INF`. For code paths where infinity was ruled out.
    pub fn expect_finite(&self) -> &BigRational {
        self.finite().expect("finite value required")
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, XRat::Fin(r) if r.is_integer())
    }

    pub fn add(&self, rhs: &XRat) -> Result<XRat, NumError> {
        match (self, rhs) {
            (XRat::Fin(a), XRat::Fin(b)) => Ok(XRat::Fin(a + b)),
            (XRat::Inf, XRat::Inf) => Ok(XRat::Inf),
            (XRat::Inf, XRat::Fin(_)) | (XRat::Fin(_), XRat::Inf) => Ok(XRat::Inf),
        }
    }

    pub fn sub(&self, rhs: &XRat) -> Result<XRat, NumError> {
        match (self, rhs) {
            (XRat::Fin(a), XRat::Fin(b)) => Ok(XRat::Fin(a - b)),
            (XRat::Inf, XRat::Fin(_)) => Ok(XRat::Inf),
            (XRat::Inf, XRat::Inf) => Err(NumError::UndefinedForm("INF - INF")),
            (XRat::Fin(_), XRat::Inf) => Err(NumError::NegativeInfinity),
        }
    }

    pub fn mul(&self, rhs: &XRat) -> Result<XRat, NumError> {
        match (self, rhs) {
            (XRat::Fin(a), XRat::Fin(b)) => Ok(XRat::Fin(a * b)),
            (XRat::Inf, XRat::Inf) => Ok(XRat::Inf),
            (XRat::Inf, XRat::Fin(r)) | (XRat::Fin(r), XRat::Inf) => {
                if r.is_zero() {
                    Err(NumError::UndefinedForm("0 * INF"))
                } else if r.is_negative() {
                    Err(NumError::NegativeInfinity)
                } else {
                    Ok(XRat::Inf)
                }
            }
        }
    }

    pub fn div(&self, rhs: &XRat) -> Result<XRat, NumError> {
        match (self, rhs) {
            (_, XRat::Fin(b)) if b.is_zero() => Err(NumError::UndefinedForm("division by zero")),
            (XRat::Fin(a), XRat::Fin(b)) => Ok(XRat::Fin(a / b)),
            (XRat::Fin(_), XRat::Inf) => Ok(XRat::zero()),
            (XRat::Inf, XRat::Inf) => Err(NumError::UndefinedForm("INF / INF")),
            (XRat::Inf, XRat::Fin(b)) => {
                if b.is_negative() {
                    Err(NumError::NegativeInfinity)
                } else {
                    Ok(XRat::Inf)
                }
            }
        }
    }

    /// `1/x`, with `1/INF = 0`.
    pub fn recip(&self) -> Result<XRat, NumError> {
        XRat::one().div(self)
    }
}

impl From<BigRational> for XRat {
    fn from(r: BigRational) -> Self {
        XRat::Fin(r)
    }
}

impl From<i64> for XRat {
    fn from(n: i64) -> Self {
        XRat::int(n)
    }
}

impl PartialOrd for XRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for XRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (XRat::Fin(a), XRat::Fin(b)) => a.cmp(b),
            (XRat::Inf, XRat::Inf) => Ordering::Equal,
            (XRat::Inf, _) => Ordering::Greater,
            (_, XRat::Inf) => Ordering::Less,
        }
    }
}

impl fmt::Display for XRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XRat::Inf => f.write_str("INF"),
            XRat::Fin(r) => fmt_rational(r, f),
        }
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders a plain rational the same way `XRat` does.
pub fn render(r: &BigRational) -> String {
    XRat::Fin(r.clone()).to_string()
}

impl FromStr for XRat {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "INF" {
            return Ok(XRat::Inf);
        }
        let bad = || NumError::Parse(s.to_string());
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p, q),
            None => (t, "1"),
        };
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(XRat::Fin(BigRational::new(p, q)))
    }
}

/// A branch order: an integer at least 1, or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Fin(u64),
    Inf,
}

impl Weight {
    /// `1/w` as an exact rational; `1/INF = 0`.
    pub fn reciprocal(self) -> BigRational {
        match self {
            Weight::Fin(w) => BigRational::new(BigInt::one(), BigInt::from(w)),
            Weight::Inf => BigRational::zero(),
        }
    }

    /// `1 - 1/w`.
    pub fn defect(self) -> BigRational {
        BigRational::one() - self.reciprocal()
    }

    pub fn is_inf(self) -> bool {
        self == Weight::Inf
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Weight::Fin(w) => Some(w),
            Weight::Inf => None,
        }
    }

    pub fn as_xrat(self) -> XRat {
        match self {
            Weight::Fin(w) => XRat::Fin(BigRational::from_integer(BigInt::from(w))),
            Weight::Inf => XRat::Inf,
        }
    }
}

/// Free-function form of [`Weight::reciprocal`].
pub fn weight_reciprocal(w: Weight) -> XRat {
    XRat::Fin(w.reciprocal())
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Fin(w) => write!(f, "{w}"),
            Weight::Inf => f.write_str("INF"),
        }
    }
}

impl FromStr for Weight {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "INF" {
            return Ok(Weight::Inf);
        }
        match t.parse::<u64>() {
            Ok(w) if w >= 1 => Ok(Weight::Fin(w)),
            _ => Err(NumError::Parse(s.to_string())),
        }
    }
}

/// Shorthand for building rationals in tables and tests.
pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reciprocals() {
        assert_eq!(weight_reciprocal(Weight::Fin(2)), XRat::frac(1, 2));
        assert_eq!(weight_reciprocal(Weight::Inf), XRat::zero());
        assert_eq!(weight_reciprocal(Weight::Fin(1)), XRat::one());
    }

    #[test]
    fn infinity_rules() {
        let inf = XRat::Inf;
        assert_eq!(inf.add(&XRat::frac(1, 3)).unwrap(), XRat::Inf);
        assert_eq!(inf.mul(&XRat::int(2)).unwrap(), XRat::Inf);
        assert_eq!(inf.recip().unwrap(), XRat::zero());
        assert!(inf.mul(&XRat::zero()).is_err());
        assert!(inf.sub(&XRat::Inf).is_err());
        assert!(XRat::one().div(&XRat::zero()).is_err());
        assert!(XRat::Inf > XRat::int(1_000_000));
    }

    #[test]
    fn basic_arith_and_render() {
        let s = XRat::frac(1, 2).add(&XRat::frac(1, 3)).unwrap();
        assert_eq!(s.to_string(), "5/6");
        assert_eq!(XRat::frac(4, 2).to_string(), "2");
        assert_eq!(XRat::frac(-3, 6).to_string(), "-1/2");
        assert_eq!(XRat::frac(1, 6).cmp(&XRat::frac(2, 12)), Ordering::Equal);
    }

    fn arb_rat() -> impl Strategy<Value = BigRational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(p, d)| q(p, d))
    }

    fn arb_xrat() -> impl Strategy<Value = XRat> {
        prop_oneof![9 => arb_rat().prop_map(XRat::Fin), 1 => Just(XRat::Inf)]
    }

    proptest! {
        #[test]
        fn add_mul_laws(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            let (a, b, c) = (XRat::Fin(a), XRat::Fin(b), XRat::Fin(c));
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn render_parse_round_trip(x in arb_xrat()) {
            let back: XRat = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn always_reduced(a in arb_rat(), b in arb_rat()) {
            let s = XRat::Fin(a).add(&XRat::Fin(b)).unwrap();
            let r = s.expect_finite();
            prop_assert!(r.denom().is_positive());
            prop_assert!(num_integer::Integer::gcd(r.numer(), r.denom()).is_one());
        }
    }
}
