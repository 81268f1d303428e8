//! Laurent polynomials `Σ c_k T^k`, `k ∈ Z`, with finitely many nonzero terms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::Ring;
use crate::error::ArithError;

/// A Laurent polynomial stored without zero coefficients.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<R: Ring> {
    base: R::Ctx,
    terms: BTreeMap<i64, R>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn zero(base: &R::Ctx) -> Self {
        LaurentPoly { base: base.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(base: &R::Ctx, exp: i64, c: R) -> Self {
        Self::from_terms(base, [(exp, c)])
    }

    pub fn from_terms(base: &R::Ctx, terms: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut out = Self::zero(base);
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn base_ctx(&self) -> &R::Ctx {
        &self.base
    }

    fn add_term(&mut self, e: i64, c: &R) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.get(&e) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, next);
        }
    }

    pub fn coeff(&self, e: i64) -> R {
        self.terms.get(&e).cloned().unwrap_or_else(|| R::zero(&self.base))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(&self.base, self.terms.iter().map(|(e, c)| (*e, c.neg())))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, a: &R) -> Self {
        Self::from_terms(&self.base, self.terms.iter().map(|(e, c)| (*e, c.mul(a))))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(&self.base);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, &c1.mul(c2));
            }
        }
        out
    }

    /// `d/dT`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(&self.base, self.terms.iter().map(|(e, c)| (e - 1, c.mul_int(*e))))
    }

    /// Termwise antiderivative; fails on a `T^{-1}` term, which has no Laurent primitive.
    pub fn antiderivative(&self) -> Result<Self, ArithError> {
        let mut out = Self::zero(&self.base);
        for (e, c) in &self.terms {
            if *e == -1 {
                return Err(ArithError::Unsupported("T^-1 has no Laurent primitive".into()));
            }
            out.add_term(e + 1, &c.div_int(&BigInt::from(e + 1))?);
        }
        Ok(out)
    }

    /// Substitute `T ↦ T^q`.
    pub fn pullback_power(&self, q: i64) -> Self {
        Self::from_terms(&self.base, self.terms.iter().map(|(e, c)| (e * q, c.clone())))
    }

    pub fn map<S: Ring>(&self, base: &S::Ctx, f: impl Fn(&R) -> S) -> LaurentPoly<S> {
        LaurentPoly::from_terms(base, self.terms.iter().map(|(e, c)| (*e, f(c))))
    }
}

impl<R: Ring> fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<R: Ring> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*T")?,
                _ => write!(f, "({c})*T^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Q;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly<Q> {
        LaurentPoly::from_terms(&(), terms.iter().map(|&(e, c)| (e, Q::int(c))))
    }

    #[test]
    fn normalization_drops_zeros() {
        let a = lp(&[(2, 1), (-3, 4)]);
        let b = lp(&[(2, -1)]);
        assert_eq!(a.add(&b), lp(&[(-3, 4)]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.terms().count(), 2);
    }

    #[test]
    fn calculus_and_pullback() {
        let a = lp(&[(3, 1), (-2, 2), (0, 5)]);
        assert_eq!(a.derivative(), lp(&[(2, 3), (-3, -4)]));
        assert_eq!(a.derivative().antiderivative().unwrap(), lp(&[(3, 1), (-2, 2)]));
        assert!(lp(&[(-1, 1)]).antiderivative().is_err());
        assert_eq!(a.pullback_power(2), lp(&[(6, 1), (-4, 2), (0, 5)]));
        assert_eq!(lp(&[(1, 1), (-1, 1)]).mul(&lp(&[(1, 1), (-1, -1)])), lp(&[(2, 1), (-2, -1)]));
    }
}
