use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{is_prime, valuation};
use crate::{Error, Natural, Result};

/// Reduced fraction with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(BigRational::new(numer, denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    /// `v_p(numer) - v_p(denom)`.
    pub fn valuation(&self, p: &Natural) -> Result<i64> {
        vp(p, self)
    }
}

/// p-adic valuation of a nonzero rational.
pub fn vp(p: &Natural, x: &ExactRational) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::pre(format!("valuation base {p} is not prime")));
    }
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let vn = valuation(p, num).ok_or(Error::ZeroValuation)?;
    let vd = valuation(p, den).ok_or(Error::DivisionByZero)?;
    Ok(vn as i64 - vd as i64)
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigUint> for ExactRational {
    fn from(n: BigUint) -> Self {
        Self::from_integer(BigInt::from_biguint(Sign::Plus, n))
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: Self) -> Self {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Panics on a zero divisor, like integer division; see [`ExactRational::checked_div`].
impl Div for ExactRational {
    type Output = ExactRational;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "ExactRational division by zero");
        ExactRational(self.0 / rhs.0)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        ExactRational(-self.0)
    }
}

impl ExactRational {
    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two() -> Natural {
        BigUint::from(2u32)
    }

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into()).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(vp(&two(), &q(12, 1)).unwrap(), 2);
        assert_eq!(vp(&two(), &q(3, 8)).unwrap(), -3);
        assert_eq!(vp(&two(), &q(20, 1)).unwrap(), 2);
        assert_eq!(vp(&BigUint::from(3u32), &q(-18, 5)).unwrap(), 2);
        assert!(matches!(vp(&two(), &q(0, 5)), Err(Error::ZeroValuation)));
        assert!(vp(&BigUint::from(4u32), &q(8, 1)).is_err());
    }

    #[test]
    fn reduced_with_positive_denominator() {
        let x = q(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert!(ExactRational::new(1.into(), 0.into()).is_err());
        assert_eq!(x.to_string(), "-3/2");
    }

    fn nonzero() -> impl Strategy<Value = ExactRational> {
        (
            any::<i64>().prop_filter("nonzero", |n| *n != 0),
            1..i64::MAX,
        )
            .prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn valuation_is_additive(x in nonzero(), y in nonzero(), pi in 0usize..6) {
            let p = BigUint::from([2u32, 3, 5, 7, 11, 13][pi]);
            let lhs = vp(&p, &(&x * &y)).unwrap();
            prop_assert_eq!(lhs, vp(&p, &x).unwrap() + vp(&p, &y).unwrap());
        }
    }
}
