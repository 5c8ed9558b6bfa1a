//! Local orbifold orders and the global Chern numbers.
//!
//! For a divisor `B = sum b_i B_i` on the plane,
//!
//! ```text
//! c1^2 = [-3 + sum d_i (1 - 1/b_i)]^2
//! e    = 3 - sum (1 - 1/b_i) e(B_i minus sing B) - sum_p (1 - 1/beta(p))
//! ```

mod apollonius;
mod cuspidal;
mod search;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::configuration::{normalize, LocalType, OrbifoldConfig};
use crate::numerics::{Weight, XRat};

pub use apollonius::{apollonius_cherns, splitting_identities};
pub use cuspidal::cuspidal_cherns;
pub use search::{enumerate_cuspidal, search_parabolic, CuspidalRow, ParabolicSolutions, Tuple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("inadmissible weights: {0}")]
    Inadmissible(String),
    #[error("non-integral local order {0}")]
    NonIntegral(XRat),
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("point {point}: {source}")]
    Point { point: String, source: OrderError },
    #[error("negative genus {0}")]
    NegativeGenus(i64),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
}

/// Orbifold Chern numbers `(c1^2, e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChernPair {
    pub c1sq: XRat,
    pub euler: XRat,
}

impl ChernPair {
    pub fn new(c1sq: BigRational, euler: BigRational) -> Self {
        ChernPair { c1sq: XRat::Fin(c1sq), euler: XRat::Fin(euler) }
    }

    pub fn c1sq(&self) -> &BigRational {
        self.c1sq.expect_finite()
    }

    pub fn euler(&self) -> &BigRational {
        self.euler.expect_finite()
    }

    /// Both numbers multiplied by a covering degree.
    pub fn scaled(&self, k: i64) -> ChernPair {
        let k = BigRational::from_integer(BigInt::from(k));
        ChernPair::new(self.c1sq() * &k, self.euler() * &k)
    }
}

impl fmt::Display for ChernPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c1sq={} e={}", self.c1sq, self.euler)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn finish(order: BigRational) -> Result<XRat, OrderError> {
    if order.is_integer() {
        Ok(XRat::Fin(order))
    } else {
        Err(OrderError::NonIntegral(XRat::Fin(order)))
    }
}

/// `num / x^2`, infinite when `x = 0`, inadmissible when `x < 0`.
fn inverse_square(num: BigRational, x: BigRational, what: &str) -> Result<XRat, OrderError> {
    if x.is_negative() {
        return Err(OrderError::Inadmissible(format!("{what} bracket is {}", XRat::Fin(x))));
    }
    if x.is_zero() {
        return Ok(XRat::Inf);
    }
    finish(num / (&x * &x))
}

/// Order of the local orbifold group at a point with the given branch weights.
///
/// * `r` transversal branches: product for `r = 2`; `4[sum 1/b - 1]^-2` for
///   `r = 3`; for `r >= 4` only the boundary case `sum (1 - 1/b) = 2` is
///   admissible, with infinite order.
/// * two branches with contact `c`, optionally crossed by a line of weight
///   `e`: `(4/c)[1/b1 + 1/b2 + d - 1]^-2` with `d = 1/(c e)`, or `d = 1/c`
///   without the line. `c = 2` is the tacnode formula `2[1/b1 + 1/b2 - 1/2]^-2`.
/// * three or more mutually tangent branches: boundary case only.
/// * simple cusp: `(2/3)[1/b - 1/6]^-2`; `x^2 = y^m` with weight 2: `2m`.
pub fn local_order(t: LocalType, ws: &[Weight]) -> Result<XRat, OrderError> {
    if ws.len() != t.branch_count() {
        return Err(OrderError::Unsupported(format!("{t} needs {} weights, got {}", t.branch_count(), ws.len())));
    }
    if !t.is_well_formed() {
        return Err(OrderError::Unsupported(format!("malformed local type {t}")));
    }
    let recip = |w: &Weight| w.reciprocal();
    match t {
        LocalType::Ordinary(2) => Ok(match (ws[0], ws[1]) {
            (Weight::Fin(a), Weight::Fin(b)) => XRat::int((a * b) as i64),
            _ => XRat::Inf,
        }),
        LocalType::Ordinary(3) => {
            let x: BigRational = ws.iter().map(recip).sum::<BigRational>() - BigRational::one();
            inverse_square(rat(4), x, "triple point")
        }
        LocalType::Ordinary(r) => {
            let s: BigRational = ws.iter().map(|w| w.defect()).sum();
            if s == rat(2) {
                Ok(XRat::Inf)
            } else {
                Err(OrderError::Inadmissible(format!(
                    "{r} transversal branches need sum(1-1/b) = 2, got {}",
                    XRat::Fin(s)
                )))
            }
        }
        LocalType::Cluster { contact, branches, line } => {
            let c = rat(contact as i64);
            let n = branches as usize;
            let down = if line { recip(&ws[n]) / &c } else { BigRational::one() / &c };
            if n == 2 {
                let x = recip(&ws[0]) + recip(&ws[1]) + down - BigRational::one();
                inverse_square(rat(4) / c, x, "tangency")
            } else {
                let s: BigRational = ws[..n].iter().map(|w| w.defect()).sum::<BigRational>() + BigRational::one() - down;
                if s == rat(2) {
                    Ok(XRat::Inf)
                } else {
                    Err(OrderError::Inadmissible(format!(
                        "{n} mutually tangent branches off the boundary case ({})",
                        XRat::Fin(s)
                    )))
                }
            }
        }
        LocalType::Unibranch(3) => {
            let x = recip(&ws[0]) - BigRational::new(BigInt::one(), BigInt::from(6));
            inverse_square(BigRational::new(BigInt::from(2), BigInt::from(3)), x, "cusp")
        }
        LocalType::Unibranch(m) => match ws[0] {
            Weight::Fin(2) => Ok(XRat::int(2 * m as i64)),
            w => Err(OrderError::Unsupported(format!("x^2=y^{m} has no order formula at weight {w}"))),
        },
    }
}

/// `1 - 1/beta`, with `1/INF = 0`.
fn point_defect(order: &XRat) -> BigRational {
    match order {
        XRat::Inf => BigRational::one(),
        XRat::Fin(o) => BigRational::one() - o.recip(),
    }
}

/// `c1^2` of the normalized configuration.
pub fn c1sq_orbifold(config: &OrbifoldConfig) -> BigRational {
    let k: BigRational = config.components.iter().map(|c| rat(c.degree as i64) * c.weight.defect()).sum::<BigRational>() - rat(3);
    &k * &k
}

/// `e` of the normalized configuration. Weight-1 components are stripped first.
pub fn euler_orbifold(config: &OrbifoldConfig) -> Result<BigRational, InvariantError> {
    let c = normalize(config);
    let mut e = rat(3);
    for x in &c.components {
        let open = x.euler_set - c.points_on(&x.id) as i64;
        e -= x.weight.defect() * rat(open);
    }
    for p in &c.points {
        let ws = c.branch_weights(p).map_err(|_| InvariantError::UnknownComponent(p.id.clone()))?;
        let o = local_order(p.local_type, &ws).map_err(|source| InvariantError::Point { point: p.id.clone(), source })?;
        e -= point_defect(&o);
    }
    Ok(e)
}

/// Both Chern numbers, after normalization.
pub fn chern_pair(config: &OrbifoldConfig) -> Result<ChernPair, InvariantError> {
    let e = euler_orbifold(config)?;
    Ok(ChernPair::new(c1sq_orbifold(&normalize(config)), e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTag {
    /// `3e = c1^2 > 0`.
    BallCandidate,
    /// `2e = c1^2` and not flat.
    PolydiskCandidate,
    /// `e = c1^2 = 0`.
    Flat,
    /// `c1^2 = 0 < e`.
    ZeroC1,
    /// None of the above, with negative orbifold canonical degree.
    Spherical,
    Other,
}

impl ClassTag {
    pub fn name(self) -> &'static str {
        match self {
            ClassTag::BallCandidate => "BallCandidate",
            ClassTag::PolydiskCandidate => "PolydiskCandidate",
            ClassTag::Flat => "Flat",
            ClassTag::ZeroC1 => "ZeroC1",
            ClassTag::Spherical => "Spherical",
            ClassTag::Other => "Other",
        }
    }

    /// Tags whose defining ratio is preserved by finite coverings.
    pub fn is_ratio_class(self) -> bool {
        matches!(self, ClassTag::BallCandidate | ClassTag::PolydiskCandidate | ClassTag::Flat)
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A necessary-condition report; never a uniformization proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub tag: ClassTag,
    pub note: String,
}

/// Tag from the Chern numbers and the sign of the canonical degree.
pub fn classify_pair(pair: &ChernPair, canonical_degree: &BigRational) -> ClassTag {
    let (c, e) = (pair.c1sq(), pair.euler());
    if c.is_zero() && e.is_zero() {
        ClassTag::Flat
    } else if rat(3) * e == *c && c.is_positive() {
        ClassTag::BallCandidate
    } else if rat(2) * e == *c {
        ClassTag::PolydiskCandidate
    } else if c.is_zero() && e.is_positive() {
        ClassTag::ZeroC1
    } else if canonical_degree.is_negative() {
        ClassTag::Spherical
    } else {
        ClassTag::Other
    }
}

/// `-3 + sum d_i (1 - 1/b_i)`.
pub fn canonical_degree(config: &OrbifoldConfig) -> BigRational {
    config.components.iter().map(|c| rat(c.degree as i64) * c.weight.defect()).sum::<BigRational>() - rat(3)
}

pub fn classify(config: &OrbifoldConfig) -> Result<Classification, InvariantError> {
    let pair = chern_pair(config)?;
    let tag = classify_pair(&pair, &canonical_degree(&normalize(config)));
    let note = match tag {
        ClassTag::BallCandidate => "3e = c1^2 > 0",
        ClassTag::PolydiskCandidate => "2e = c1^2",
        ClassTag::Flat => "e = c1^2 = 0",
        ClassTag::ZeroC1 => "c1^2 = 0 < e",
        ClassTag::Spherical => "negative canonical degree",
        ClassTag::Other => "no equality case",
    };
    Ok(Classification { tag, note: format!("{note}; necessary condition only") })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangleClass {
    Spherical { sigma: Option<BigRational> },
    Euclidean { sigma: Option<BigRational> },
    Hyperbolic { sigma: Option<BigRational> },
}

impl TriangleClass {
    pub fn name(&self) -> &'static str {
        match self {
            TriangleClass::Spherical { .. } => "Spherical",
            TriangleClass::Euclidean { .. } => "Euclidean",
            TriangleClass::Hyperbolic { .. } => "Hyperbolic",
        }
    }
}

/// Shape of the orbifold line carried by the tangent lines' weights.
pub fn triangle_class(bs: &[Weight]) -> Result<TriangleClass, InvariantError> {
    match bs.len() {
        0 | 1 => Err(InvariantError::UnsupportedShape(format!("{} weights", bs.len()))),
        2 => {
            if bs[0] != bs[1] {
                return Err(InvariantError::UnsupportedShape("two weights must be equal".into()));
            }
            Ok(if bs[0].is_inf() {
                TriangleClass::Euclidean { sigma: None }
            } else {
                TriangleClass::Spherical { sigma: None }
            })
        }
        3 => {
            let s: BigRational = bs.iter().map(|w| w.reciprocal()).sum();
            let sigma = Some(s.clone());
            Ok(if s > BigRational::one() {
                TriangleClass::Spherical { sigma }
            } else if s == BigRational::one() {
                TriangleClass::Euclidean { sigma }
            } else {
                TriangleClass::Hyperbolic { sigma }
            })
        }
        4 if bs.iter().all(|&w| w == Weight::Fin(2)) => Ok(TriangleClass::Euclidean { sigma: None }),
        _ => Ok(TriangleClass::Hyperbolic { sigma: None }),
    }
}
