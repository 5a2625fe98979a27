use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The orthoplex (Rankin) bound `n(m−n)/m` on the squared minimal distance.
pub fn rankin_bound(m: usize, n: usize) -> Result<BigRational> {
    if n == 0 || n >= m {
        return Err(Error::InvalidDimensions { m, n });
    }
    Ok(BigRational::new(BigInt::from(n * (m - n)), BigInt::from(m)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundApplicability {
    /// `N > m(m+1)/2`: the bound holds for `N` subspaces.
    pub applicable: bool,
    /// `N ≤ (m−1)(m+2)`: necessary for equality.
    pub equality_possible: bool,
}

pub fn bound_applicability(m: usize, _n: usize, count: usize) -> BoundApplicability {
    let m = m as u128;
    let count = count as u128;
    BoundApplicability {
        applicable: 2 * count > m * (m + 1),
        equality_possible: m >= 1 && count <= (m - 1) * (m + 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn bound_values() {
        assert_eq!(rankin_bound(4, 2).unwrap(), q(1, 1));
        assert_eq!(rankin_bound(8, 4).unwrap(), q(2, 1));
        assert_eq!(rankin_bound(2, 1).unwrap(), q(1, 2));
        assert_eq!(rankin_bound(8, 2).unwrap(), q(3, 2));
    }

    #[test]
    fn invalid_dims() {
        assert!(rankin_bound(4, 0).is_err());
        assert!(rankin_bound(4, 4).is_err());
        assert!(rankin_bound(2, 3).is_err());
    }

    #[test]
    fn applicability() {
        let b = bound_applicability(4, 2, 18);
        assert!(b.applicable && b.equality_possible);
        let b = bound_applicability(8, 4, 70);
        assert!(b.applicable && b.equality_possible);
        let b = bound_applicability(4, 2, 10);
        assert!(!b.applicable && b.equality_possible);
        let b = bound_applicability(4, 2, 19);
        assert!(b.applicable && !b.equality_possible);
    }
}
