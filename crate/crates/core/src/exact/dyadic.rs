use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational number `numerator / 2^exponent` kept in lowest terms.
///
/// The numerator is odd unless the value is zero, in which case the exponent
/// is zero as well. Equality and hashing are structural on that form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u32) -> Self {
        let mut d = Dyadic {
            numerator: numerator.into(),
            exponent,
        };
        d.canonicalize();
        d
    }

    pub fn from_int(value: impl Into<BigInt>) -> Self {
        Dyadic::new(value, 0)
    }

    pub fn zero() -> Self {
        Dyadic {
            numerator: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    /// `1 / 2^k`
    pub fn half_pow(k: u32) -> Self {
        Dyadic::new(1, k)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.numerator.is_negative()
    }

    fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        let tz = self.numerator.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.exponent as u64) as u32;
        if shift > 0 {
            self.numerator >>= shift;
            self.exponent -= shift;
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), BigInt::one() << self.exponent)
    }

    /// Converts an exact rational, failing when the reduced denominator is not
    /// a power of two.
    pub fn from_rational(r: &BigRational) -> Result<Self> {
        let denom = r.denom();
        let exp = power_of_two_exponent(denom).ok_or_else(|| Error::NonDyadic(r.to_string()))?;
        Ok(Dyadic::new(r.numer().clone(), exp))
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.numerator.to_f64().unwrap_or(f64::NAN);
        n / 2f64.powi(self.exponent as i32)
    }

    /// Nearest dyadic with denominator `2^bits`.
    pub fn nearest(value: f64, bits: u32) -> Self {
        let scaled = (value * 2f64.powi(bits as i32)).round();
        Dyadic::new(BigInt::from(scaled as i64), bits)
    }

    pub fn pow(&self, k: u32) -> Self {
        Dyadic {
            numerator: self.numerator.pow(k),
            exponent: self.exponent * k,
        }
    }

    /// Multiplies by `2^-k`.
    pub fn shr(&self, k: u32) -> Self {
        Dyadic::new(self.numerator.clone(), self.exponent + k)
    }

    /// Multiplies by `2^k`.
    pub fn shl(&self, k: u32) -> Self {
        if k >= self.exponent {
            Dyadic::new(&self.numerator << (k - self.exponent), 0)
        } else {
            Dyadic::new(self.numerator.clone(), self.exponent - k)
        }
    }
}

/// `Some(k)` when `x = 2^k`.
pub(crate) fn power_of_two_exponent(x: &BigInt) -> Option<u32> {
    if !x.is_positive() {
        return None;
    }
    let tz = x.trailing_zeros()?;
    if x.bits() == tz + 1 {
        Some(tz as u32)
    } else {
        None
    }
}

fn align(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, u32) {
    let e = a.exponent.max(b.exponent);
    (
        &a.numerator << (e - a.exponent),
        &b.numerator << (e - b.exponent),
        e,
    )
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (x, y, e) = align(self, rhs);
        Dyadic::new(x + y, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (x, y, e) = align(self, rhs);
        Dyadic::new(x - y, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        // product of odd numerators is odd: already canonical unless zero
        Dyadic::new(
            &self.numerator * &rhs.numerator,
            self.exponent + rhs.exponent,
        )
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -&self.numerator,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: Dyadic) -> Dyadic {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |acc, x| &acc + &x)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (x, y, _) = align(self, other);
        x.cmp(&y)
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_int(v)
    }
}

/// Renders as `p` or `p/q`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigInt::one() << self.exponent)
        }
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not an exact fraction: {s:?}"));
        let r = match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                BigRational::new(p, q)
            }
            None => BigRational::from_integer(s.trim().parse().map_err(|_| bad())?),
        };
        Dyadic::from_rational(&r)
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let d = Dyadic::new(12, 3);
        assert_eq!(d.numerator(), &BigInt::from(3));
        assert_eq!(d.exponent(), 1);
        let z = Dyadic::new(0, 9);
        assert_eq!(z.exponent(), 0);
        assert_eq!(Dyadic::new(8, 2), Dyadic::from_int(2));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Dyadic::new(1, 1).to_string(), "1/2");
        assert_eq!(Dyadic::new(-3, 2).to_string(), "-3/4");
        assert_eq!(Dyadic::from_int(2).to_string(), "2");
        assert_eq!("6/8".parse::<Dyadic>().unwrap(), Dyadic::new(3, 2));
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("x".parse::<Dyadic>().is_err());
    }

    #[test]
    fn ordering_across_exponents() {
        assert!(Dyadic::new(1, 1) < Dyadic::from_int(1));
        assert!(Dyadic::new(-1, 3) < Dyadic::zero());
        assert!(Dyadic::new(3, 2) > Dyadic::new(5, 3));
    }

    fn arb_dyadic() -> impl Strategy<Value = Dyadic> {
        (-1000i64..1000, 0u32..12).prop_map(|(n, e)| Dyadic::new(n, e))
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(n in -10_000i64..10_000, e in 0u32..20) {
            let d = Dyadic::new(n, e);
            let again = Dyadic::new(d.numerator().clone(), d.exponent());
            prop_assert_eq!(&d, &again);
            prop_assert!(d.is_zero() || d.exponent() == 0 || d.numerator().trailing_zeros() == Some(0));
        }

        #[test]
        fn field_ops_match_rationals(a in arb_dyadic(), b in arb_dyadic()) {
            prop_assert_eq!((&a + &b).to_rational(), a.to_rational() + b.to_rational());
            prop_assert_eq!((&a - &b).to_rational(), a.to_rational() - b.to_rational());
            prop_assert_eq!((&a * &b).to_rational(), a.to_rational() * b.to_rational());
            prop_assert_eq!(a.cmp(&b), a.to_rational().cmp(&b.to_rational()));
        }
    }
}
