//! Power series truncated at a fixed degree.
//!
//! A `TruncatedSeries` with truncation `D` stores `c_0..c_D` and stands for
//! `Σ c_i T^i + O(T^{D+1})`. No operation ever reports a coefficient past `D`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Ring, RootsOfUnity};
use crate::error::ArithError;

/// Coefficient context together with the truncation degree.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCtx<C> {
    pub base: C,
    pub trunc: usize,
}

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    base: R::Ctx,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Series with the given leading coefficients, padded with zeros up to `T^trunc`.
    pub fn new(base: &R::Ctx, trunc: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.truncate(trunc + 1);
        coeffs.resize(trunc + 1, R::zero(base));
        TruncatedSeries { base: base.clone(), coeffs }
    }

    pub fn from_ints(base: &R::Ctx, trunc: usize, coeffs: &[i64]) -> Self {
        let v = coeffs.iter().map(|&c| R::from_i64(base, c)).collect();
        Self::new(base, trunc, v)
    }

    pub fn zero(base: &R::Ctx, trunc: usize) -> Self {
        Self::new(base, trunc, Vec::new())
    }

    pub fn constant(base: &R::Ctx, trunc: usize, c: R) -> Self {
        Self::new(base, trunc, vec![c])
    }

    /// The series `T`.
    pub fn var(base: &R::Ctx, trunc: usize) -> Self {
        Self::new(base, trunc, vec![R::zero(base), R::one(base)])
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn base_ctx(&self) -> &R::Ctx {
        &self.base
    }

    pub fn series_ctx(&self) -> SeriesCtx<R::Ctx> {
        SeriesCtx { base: self.base.clone(), trunc: self.trunc() }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| R::zero(&self.base))
    }

    /// Index of the first nonzero coefficient, `None` if all vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Highest index with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Forget coefficients past `T^d`.
    pub fn truncate(&self, d: usize) -> Self {
        assert!(d <= self.trunc(), "cannot raise truncation of a series");
        Self::new(&self.base, d, self.coeffs[..=d].to_vec())
    }

    /// Reinterpret as a polynomial and pad with zeros to a larger truncation.
    ///
    /// Only meaningful when the series is known to be a polynomial.
    pub fn extend_as_polynomial(&self, d: usize) -> Self {
        Self::new(&self.base, d, self.coeffs.clone())
    }

    pub fn map<S: Ring>(&self, base: &S::Ctx, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries::new(base, self.trunc(), self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<S: Ring, E>(
        &self,
        base: &S::Ctx,
        f: impl Fn(&R) -> Result<S, E>,
    ) -> Result<TruncatedSeries<S>, E> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(TruncatedSeries::new(base, self.trunc(), coeffs))
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.trunc(), rhs.trunc(), "truncation mismatch");
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(&self.base, |x| x.mul(c))
    }

    /// Multiply by `T^k`, dropping what falls past the truncation.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut v = vec![R::zero(&self.base); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(&self.base, self.trunc(), v)
    }

    /// Formal derivative; the result is known to degree `D - 1`.
    pub fn derivative(&self) -> Self {
        let d = self.trunc();
        let v = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul_int(i as i64)).collect();
        Self::new(&self.base, d.saturating_sub(1), v)
    }

    /// Antiderivative with zero constant term; the result is known to degree `D + 1`.
    pub fn integrate(&self) -> Result<Self, ArithError> {
        let mut v = vec![R::zero(&self.base)];
        for (i, c) in self.coeffs.iter().enumerate() {
            v.push(c.div_int(&BigInt::from(i as u64 + 1))?);
        }
        Ok(Self::new(&self.base, self.trunc() + 1, v))
    }

    /// Value of the polynomial `Σ c_i x^i` (the series read as a polynomial).
    pub fn eval_polynomial(&self, x: &R) -> R {
        super::poly::eval(&self.coeffs, x)
    }

    /// `g ∘ f` for `f(0) = 0`, exact modulo `T^{D+1}`.
    pub fn compose(&self, f: &Self) -> Result<Self, ArithError> {
        self.check(f);
        if !f.coeff(0).is_zero() {
            return Err(ArithError::CompositionDomain);
        }
        Ok(self.compose_polynomial(f))
    }

    /// The polynomial `Σ_{i≤D} c_i f^i`, reduced mod `T^{D+1}`.
    ///
    /// Unlike [`compose`](Self::compose) this accepts `f(0) ≠ 0`; the result is
    /// exact for the polynomial `self`, not for the series it truncates.
    pub fn compose_polynomial(&self, f: &Self) -> Self {
        let d = f.trunc();
        if f.degree().unwrap_or(0) <= 1 {
            return self.compose_linear(&f.coeff(0), &f.coeff(1));
        }
        let mut acc = Self::zero(&self.base, d);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(f);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        acc
    }

    /// `Σ c_i (a + bT)^i` by Horner, `O(D)` per step.
    fn compose_linear(&self, a: &R, b: &R) -> Self {
        let d = self.trunc();
        let mut acc: Vec<R> = vec![R::zero(&self.base); d + 1];
        for c in self.coeffs.iter().rev() {
            // acc <- acc·(a + bT) + c
            for i in (0..=d).rev() {
                let lower = if i > 0 { acc[i - 1].mul(b) } else { R::zero(&self.base) };
                acc[i] = acc[i].mul(a).add(&lower);
            }
            acc[0] = acc[0].add(c);
        }
        Self::new(&self.base, d, acc)
    }

    /// Compositional inverse `h` with `f(h(T)) = T mod T^{D+1}`.
    pub fn revert(&self) -> Result<Self, ArithError> {
        if !self.coeff(0).is_zero() {
            return Err(ArithError::Reversion);
        }
        let a1 = self.coeff(1);
        let inv = a1.try_inv().map_err(|_| ArithError::Reversion)?;
        let d = self.trunc();
        let mut h = Self::var(&self.base, d).scale(&inv);
        // fix h_k so that [f(h)]_k = 0; the coefficient enters linearly as a1·h_k
        for k in 2..=d {
            let fk = self.compose(&h)?.coeff(k);
            h.coeffs[k] = h.coeffs[k].sub(&fk.mul(&inv));
        }
        Ok(h)
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        let c0 = self.coeff(0).try_inv()?;
        let d = self.trunc();
        let mut out = vec![c0.clone()];
        for k in 1..=d {
            let mut s = R::zero(&self.base);
            for j in 1..=k {
                s = s.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out.push(s.neg().mul(&c0));
        }
        Ok(Self::new(&self.base, d, out))
    }

    /// `log(1 + T) = Σ (-1)^{k+1} T^k / k`.
    pub fn log1p(base: &R::Ctx, trunc: usize) -> Result<Self, ArithError> {
        let mut v = vec![R::zero(base)];
        for k in 1..=trunc {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            v.push(R::from_i64(base, sign).div_int(&BigInt::from(k as u64))?);
        }
        Ok(Self::new(base, trunc, v))
    }

    /// `exp(T) - 1 = Σ_{k≥1} T^k / k!`.
    pub fn expm1(base: &R::Ctx, trunc: usize) -> Result<Self, ArithError> {
        let mut v = vec![R::zero(base)];
        let mut fact = BigInt::from(1);
        for k in 1..=trunc {
            fact *= k;
            v.push(R::one(base).div_int(&fact)?);
        }
        Ok(Self::new(base, trunc, v))
    }
}

impl<R: Ring> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*T")?,
                _ => write!(f, "({c})*T^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(T^{})", self.trunc() + 1)
    }
}

impl<R: Ring> Ring for TruncatedSeries<R> {
    type Ctx = SeriesCtx<R::Ctx>;

    fn ctx(&self) -> Self::Ctx {
        self.series_ctx()
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::zero(&ctx.base, ctx.trunc)
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::constant(&ctx.base, ctx.trunc, R::one(&ctx.base))
    }

    fn from_int(ctx: &Self::Ctx, n: &BigInt) -> Self {
        Self::constant(&ctx.base, ctx.trunc, R::from_int(&ctx.base, n))
    }

    fn from_rational(ctx: &Self::Ctx, q: &BigRational) -> Result<Self, ArithError> {
        Ok(Self::constant(&ctx.base, ctx.trunc, R::from_rational(&ctx.base, q)?))
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let v = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect();
        TruncatedSeries { base: self.base.clone(), coeffs: v }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let v = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect();
        TruncatedSeries { base: self.base.clone(), coeffs: v }
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let d = self.trunc();
        let mut out = vec![R::zero(&self.base); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=d - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        TruncatedSeries { base: self.base.clone(), coeffs: out }
    }

    fn neg(&self) -> Self {
        self.map(&self.base, Ring::neg)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    fn div_int(&self, n: &BigInt) -> Result<Self, ArithError> {
        self.try_map(&self.base, |c| c.div_int(n))
    }

    fn try_inv(&self) -> Result<Self, ArithError> {
        self.inverse()
    }
}

impl<R: RootsOfUnity> RootsOfUnity for TruncatedSeries<R> {
    fn root_of_unity(ctx: &Self::Ctx, order: u64, k: i64) -> Result<Self, ArithError> {
        Ok(Self::constant(&ctx.base, ctx.trunc, R::root_of_unity(&ctx.base, order, k)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Q;

    type S = TruncatedSeries<Q>;

    fn qs(d: usize, v: &[(i64, i64)]) -> S {
        S::new(&(), d, v.iter().map(|&(a, b)| Q::new(a, b)).collect())
    }

    #[test]
    fn composition_examples() {
        let f = S::from_ints(&(), 5, &[0, 3, -1, 7]);
        assert_eq!(S::var(&(), 5).compose(&f).unwrap(), f);
        let g = S::from_ints(&(), 3, &[0, 0, 1]);
        let f = S::from_ints(&(), 3, &[0, 1, 1]);
        assert_eq!(g.compose(&f).unwrap(), S::from_ints(&(), 3, &[0, 0, 1, 2]));
        let log = S::log1p(&(), 5).unwrap();
        let exp = S::expm1(&(), 5).unwrap();
        assert_eq!(log.compose(&exp).unwrap(), S::var(&(), 5));
        let bad = S::from_ints(&(), 3, &[1, 1]);
        assert_eq!(g.compose(&bad), Err(ArithError::CompositionDomain));
    }

    #[test]
    fn reversion_examples() {
        assert_eq!(S::var(&(), 4).revert().unwrap(), S::var(&(), 4));
        let f = S::from_ints(&(), 4, &[0, 1, 1]);
        assert_eq!(f.revert().unwrap(), S::from_ints(&(), 4, &[0, 1, -1, 2, -5]));
        let log = qs(4, &[(0, 1), (1, 1), (-1, 2), (1, 3), (-1, 4)]);
        let exp = qs(4, &[(0, 1), (1, 1), (1, 2), (1, 6), (1, 24)]);
        assert_eq!(log.revert().unwrap(), exp);
        assert_eq!(S::from_ints(&(), 4, &[0, 0, 1]).revert(), Err(ArithError::Reversion));
    }

    #[test]
    fn inverse_and_calculus() {
        let f = S::from_ints(&(), 6, &[1, 1]);
        let inv = f.inverse().unwrap();
        assert_eq!(inv, S::from_ints(&(), 6, &[1, -1, 1, -1, 1, -1, 1]));
        assert_eq!(f.mul(&inv), S::one(&SeriesCtx { base: (), trunc: 6 }));
        let log = S::log1p(&(), 6).unwrap();
        // d/dT log(1+T) = 1/(1+T)
        assert_eq!(log.derivative(), inv.truncate(5));
        assert_eq!(inv.truncate(5).integrate().unwrap(), log);
    }
}
