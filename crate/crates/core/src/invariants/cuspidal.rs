//! Closed forms for a single weighted curve with cusps and nodes.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{ChernPair, InvariantError};
use crate::numerics::Weight;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(c1^2, e)` for a degree-`d` curve with `kappa` simple cusps and `nu`
/// nodes, weighted by `b`:
///
/// ```text
/// e    = 3 + d^2 - 3d - 2 kappa - nu + (-d^2 + 3d + kappa)/b + nu/b^2
///        + (3 kappa / 2)[1/b - 1/6]^2
/// c1^2 = [-3 + d(1 - 1/b)]^2
/// ```
pub fn cuspidal_cherns(d: u32, kappa: u32, nu: u32, b: Weight) -> Result<ChernPair, InvariantError> {
    let (d, kappa, nu) = (d as i64, kappa as i64, nu as i64);
    let g = (d - 1) * (d - 2) / 2 - kappa - nu;
    if g < 0 {
        return Err(InvariantError::NegativeGenus(g));
    }
    let r = b.reciprocal();
    let t = &r - BigRational::new(1.into(), 6.into());
    let e = rat(3 + d * d - 3 * d - 2 * kappa - nu)
        + rat(-d * d + 3 * d + kappa) * &r
        + rat(nu) * &r * &r
        + rat(3 * kappa) / rat(2) * &t * &t;
    let c = rat(-3) + rat(d) * (rat(1) - &r);
    Ok(ChernPair::new(&c * &c, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{q, Weight::Fin};

    #[test]
    fn table_spot_values() {
        assert_eq!(cuspidal_cherns(6, 9, 0, Fin(2)).unwrap(), ChernPair::new(q(0, 1), q(0, 1)));
        assert_eq!(cuspidal_cherns(8, 17, 0, Fin(2)).unwrap(), ChernPair::new(q(1, 1), q(1, 3)));
        assert_eq!(cuspidal_cherns(15, 40, 51, Fin(6)).unwrap(), ChernPair::new(q(361, 4), q(361, 12)));
        assert!(cuspidal_cherns(3, 2, 0, Fin(2)).is_err());
    }
}
