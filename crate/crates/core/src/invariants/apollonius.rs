//! Closed forms for a weighted conic with tangent lines.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{local_order, ChernPair, InvariantError};
use crate::configuration::LocalType;
use crate::numerics::Weight;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn check_points(a: Weight, bs: &[Weight]) -> Result<(), InvariantError> {
    let point = |id: String, t: LocalType, ws: &[Weight]| {
        local_order(t, ws).map(|_| ()).map_err(|source| InvariantError::Point { point: id, source })
    };
    for (i, &b) in bs.iter().enumerate() {
        point(format!("q{}", i + 1), LocalType::TACNODE, &[a, b])?;
    }
    Ok(())
}

/// `(c1^2, e)` of the conic of weight `a` with tangent lines of weights `bs`:
///
/// ```text
/// c1^2 = [n - 1 - 2/a - beta]^2,   beta = sum 1/b_i
/// e    = (n-1)(n-2)/2 + (2-n)/a + (2-n) beta
///        + sum_{i<j} 1/(b_i b_j) + 1/2 sum [1/b_i + 1/a - 1/2]^2
/// ```
///
/// The pair sum runs over unordered pairs: each pair of lines meets in one node.
pub fn apollonius_cherns(a: Weight, bs: &[Weight]) -> Result<ChernPair, InvariantError> {
    check_points(a, bs)?;
    let n = bs.len() as i64;
    let u = a.reciprocal();
    let r: Vec<BigRational> = bs.iter().map(|b| b.reciprocal()).collect();
    let beta: BigRational = r.iter().sum();
    let c1 = rat(n - 1) - rat(2) * &u - &beta;
    let mut e = rat((n - 1) * (n - 2)) / rat(2) + rat(2 - n) * &u + rat(2 - n) * &beta;
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            e += &r[i] * &r[j];
        }
    }
    for ri in &r {
        let t = ri + &u - half();
        e += half() * &t * &t;
    }
    Ok(ChernPair::new(&c1 * &c1, e))
}

/// Right-hand sides of the two splitting formulas:
///
/// ```text
/// 2(2e - c1^2) = (1/a - 1/2) [n(2/a + 3) - 4 beta - 4(2/a + 1)]
/// 8(3e - c1^2) = (2 alpha + 5 - 2n)^2 + 3(n - 3)(2/a - 1)^2,   alpha = beta - 1/a
/// ```
pub fn splitting_identities(a: Weight, bs: &[Weight]) -> (BigRational, BigRational) {
    let n = rat(bs.len() as i64);
    let u = a.reciprocal();
    let beta: BigRational = bs.iter().map(|b| b.reciprocal()).sum();
    let first = (&u - half()) * (&n * (rat(2) * &u + rat(3)) - rat(4) * &beta - rat(4) * (rat(2) * &u + rat(1)));
    let alpha = &beta - &u;
    let s = rat(2) * alpha + rat(5) - rat(2) * &n;
    let t = rat(2) * &u - rat(1);
    let second = &s * &s + rat(3) * (n - rat(3)) * &t * &t;
    (first, second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{q, Weight::Fin, Weight::Inf};
    use num_traits::Zero;

    #[test]
    fn named_values() {
        assert_eq!(apollonius_cherns(Fin(4), &[Fin(4); 3]).unwrap(), ChernPair::new(q(9, 16), q(3, 16)));
        assert_eq!(apollonius_cherns(Fin(2), &[Inf, Inf]).unwrap(), ChernPair::new(q(0, 1), q(0, 1)));
        assert_eq!(apollonius_cherns(Fin(2), &[Fin(4); 3]).unwrap(), ChernPair::new(q(1, 16), q(1, 32)));
        assert!(apollonius_cherns(Fin(5), &[Fin(5)]).is_err());
    }

    #[test]
    fn splitting_examples() {
        assert!(splitting_identities(Fin(2), &[Fin(7), Fin(3)]).0.is_zero());
        assert!(splitting_identities(Fin(4), &[Fin(4); 3]).1.is_zero());
        assert!(splitting_identities(Fin(3), &[Fin(2), Fin(3), Fin(4)]).0.is_zero());
    }
}
