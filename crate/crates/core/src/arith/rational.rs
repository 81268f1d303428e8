//! Exact rational coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Ring, RootsOfUnity};
use crate::error::ArithError;

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Self {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(n: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `v_p` of the number; `None` for zero.
    pub fn valuation(&self, p: u64) -> Option<i64> {
        if self.0.is_zero() {
            return None;
        }
        let p = BigInt::from(p);
        Some(int_valuation(self.numer(), &p) as i64 - int_valuation(self.denom(), &p) as i64)
    }
}

pub(crate) fn int_valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Q {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ArithError::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(ArithError::DivisionByZero);
                }
                Ok(Q(BigRational::new(n, d)))
            }
            None => Ok(Q(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?))),
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q::int(n)
    }
}

impl Ring for Q {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}

    fn zero(_: &()) -> Self {
        Q(BigRational::zero())
    }

    fn one(_: &()) -> Self {
        Q(BigRational::one())
    }

    fn from_int(_: &(), n: &BigInt) -> Self {
        Q(BigRational::from_integer(n.clone()))
    }

    fn from_rational(_: &(), q: &BigRational) -> Result<Self, ArithError> {
        Ok(Q(q.clone()))
    }

    fn add(&self, rhs: &Self) -> Self {
        Q(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Q(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Q(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Q(-&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn div_int(&self, n: &BigInt) -> Result<Self, ArithError> {
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Q(&self.0 / BigRational::from_integer(n.clone())))
    }

    fn try_inv(&self) -> Result<Self, ArithError> {
        if self.0.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(Q(self.0.recip()))
        }
    }
}

impl RootsOfUnity for Q {
    fn root_of_unity(_: &(), order: u64, k: i64) -> Result<Self, ArithError> {
        match order {
            1 => Ok(Q::int(1)),
            2 => Ok(Q::int(if k.rem_euclid(2) == 0 { 1 } else { -1 })),
            _ => {
                if k.rem_euclid(order as i64) == 0 {
                    Ok(Q::int(1))
                } else if order % 2 == 0 && k.rem_euclid(order as i64) == order as i64 / 2 {
                    Ok(Q::int(-1))
                } else {
                    Err(ArithError::Unsupported(format!(
                        "the rationals contain no primitive root of unity of order {order}"
                    )))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let q: Q = "6/-4".parse().unwrap();
        assert_eq!(q, Q::new(-3, 2));
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!("17".parse::<Q>().unwrap(), Q::int(17));
        assert!("1/0".parse::<Q>().is_err());
        assert!("x".parse::<Q>().is_err());
    }

    #[test]
    fn valuation() {
        assert_eq!(Q::new(50, 3).valuation(5), Some(2));
        assert_eq!(Q::new(3, 50).valuation(5), Some(-2));
        assert_eq!(Q::int(0).valuation(5), None);
    }
}
