//! Quotients `R[X]/(m(X))` by a monic polynomial.
//!
//! Two families matter: cyclotomic rings `R[ζ_M]` (modulus `Φ_M`, with a
//! distinguished root of unity `ζ = X`), and torsion rings of Lubin-Tate groups
//! (modulus an Eisenstein polynomial, with the distinguished torsion point `X`).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{modular, poly, Ring, RootsOfUnity};
use crate::error::ArithError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotKind {
    /// `R[X]/Φ_M(X)`, `X` a primitive `M`-th root of unity.
    Cyclotomic { order: u64 },
    /// `R[X]/g(X)` with `g` Eisenstein at `p` of degree `e`.
    Eisenstein { p: u64, degree: usize },
    General,
}

pub struct QuotRing<R: Ring> {
    base: R::Ctx,
    modulus: Vec<R>,
    kind: QuotKind,
    /// `X^k mod m(X)` for `d <= k <= 2d - 2`.
    reduction: Vec<Vec<R>>,
}

impl<R: Ring> fmt::Debug for QuotRing<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuotRing")
            .field("kind", &self.kind)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Shared handle to a quotient ring; doubles as the element context.
pub struct QuotCtx<R: Ring>(Arc<QuotRing<R>>);

impl<R: Ring> Clone for QuotCtx<R> {
    fn clone(&self) -> Self {
        QuotCtx(Arc::clone(&self.0))
    }
}

impl<R: Ring> fmt::Debug for QuotCtx<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<R: Ring> PartialEq for QuotCtx<R> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.kind == other.0.kind
                && self.0.base == other.0.base
                && self.0.modulus == other.0.modulus)
    }
}

impl<R: Ring> QuotCtx<R> {
    /// Quotient by a monic polynomial given lowest degree first.
    pub fn new(base: &R::Ctx, modulus: Vec<R>, kind: QuotKind) -> Result<Self, ArithError> {
        let modulus = poly::trim(modulus);
        if modulus.len() < 2 || !modulus.last().is_some_and(Ring::is_one) {
            return Err(ArithError::Unsupported("quotient modulus must be monic of degree >= 1".into()));
        }
        let d = modulus.len() - 1;
        let mut reduction = Vec::with_capacity(d.saturating_sub(1));
        // X^d = -(m_0 + ... + m_{d-1} X^{d-1})
        let mut cur: Vec<R> = modulus[..d].iter().map(Ring::neg).collect();
        for _ in d..=(2 * d).saturating_sub(2) {
            reduction.push(cur.clone());
            let top = cur[d - 1].clone();
            let mut next = vec![R::zero(base)];
            next.extend_from_slice(&cur[..d - 1]);
            for (n, m) in next.iter_mut().zip(&modulus) {
                *n = n.sub(&top.mul(m));
            }
            cur = next;
        }
        Ok(QuotCtx(Arc::new(QuotRing { base: base.clone(), modulus, kind, reduction })))
    }

    /// `R[ζ_m]` for any `m >= 1`.
    pub fn cyclotomic(base: &R::Ctx, m: u64) -> Self {
        let modulus = poly::cyclotomic_int(m).iter().map(|c| R::from_int(base, c)).collect();
        Self::new(base, modulus, QuotKind::Cyclotomic { order: m }).expect("cyclotomic polynomials are monic")
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn kind(&self) -> &QuotKind {
        &self.0.kind
    }

    pub fn base(&self) -> &R::Ctx {
        &self.0.base
    }

    pub fn modulus(&self) -> &[R] {
        &self.0.modulus
    }

    /// Order of the distinguished root of unity, for cyclotomic rings.
    pub fn cyclotomic_order(&self) -> Option<u64> {
        match self.0.kind {
            QuotKind::Cyclotomic { order } => Some(order),
            _ => None,
        }
    }

    /// The class of `X`.
    pub fn gen(&self) -> QuotElem<R> {
        self.from_poly(&[R::zero(self.base()), R::one(self.base())])
    }

    /// Embed a base-ring element.
    pub fn embed(&self, c: R) -> QuotElem<R> {
        self.from_poly(&[c])
    }

    /// Reduce an arbitrary polynomial in `X`.
    pub fn from_poly(&self, p: &[R]) -> QuotElem<R> {
        let d = self.degree();
        let c = if p.len() <= d {
            let mut v = p.to_vec();
            v.resize(d, R::zero(self.base()));
            v
        } else if p.len() <= 2 * d - 1 {
            self.reduce_short(p.to_vec())
        } else {
            let (_, mut r) = poly::divrem_monic(self.base(), p, self.modulus());
            r.resize(d, R::zero(self.base()));
            r
        };
        QuotElem { ring: self.clone(), c }
    }

    fn reduce_short(&self, mut p: Vec<R>) -> Vec<R> {
        let d = self.degree();
        for k in d..p.len() {
            let ck = std::mem::replace(&mut p[k], R::zero(self.base()));
            if ck.is_zero() {
                continue;
            }
            for (i, r) in self.0.reduction[k - d].iter().enumerate() {
                p[i] = p[i].add(&ck.mul(r));
            }
        }
        p.truncate(d);
        p.resize(d, R::zero(self.base()));
        p
    }

    /// `ζ_M^k` in a cyclotomic ring.
    pub fn zeta_pow(&self, k: i64) -> QuotElem<R> {
        let m = self.cyclotomic_order().expect("zeta_pow needs a cyclotomic ring");
        let e = k.rem_euclid(m as i64) as usize;
        let mut v = vec![R::zero(self.base()); e + 1];
        v[e] = R::one(self.base());
        self.from_poly(&v)
    }
}

#[derive(Clone)]
pub struct QuotElem<R: Ring> {
    ring: QuotCtx<R>,
    c: Vec<R>,
}

impl<R: Ring> QuotElem<R> {
    pub fn ring(&self) -> &QuotCtx<R> {
        &self.ring
    }

    /// Coordinates in the power basis `1, X, ..., X^{d-1}`.
    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    /// The element as a base-ring constant, if it is one.
    pub fn to_base(&self) -> Option<R> {
        if self.c[1..].iter().all(Ring::is_zero) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Image under `R[ζ_m] → R[ζ_M]`, `ζ_m ↦ ζ_M^{M/m}`, for `m | M`.
    pub fn embed_cyclotomic(&self, target: &QuotCtx<R>) -> Result<Self, ArithError> {
        let (Some(m), Some(big)) = (self.ring.cyclotomic_order(), target.cyclotomic_order()) else {
            return Err(ArithError::Mismatch("cyclotomic embedding needs cyclotomic rings".into()));
        };
        if big % m != 0 {
            return Err(ArithError::Mismatch(format!("ζ_{m} does not live in R[ζ_{big}]")));
        }
        let step = (big / m) as i64;
        let mut acc = QuotElem::zero(target);
        for (j, c) in self.c.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&target.zeta_pow(j as i64 * step).mul(&target.embed(c.clone())));
            }
        }
        Ok(acc)
    }

    /// Galois conjugate `ζ ↦ ζ^k` of a cyclotomic element (`gcd(k, M) = 1`).
    pub fn conjugate(&self, k: i64) -> Self {
        let m = self.ring.cyclotomic_order().expect("conjugation needs a cyclotomic ring") as i64;
        let mut v = vec![R::zero(self.ring.base()); m as usize];
        for (i, c) in self.c.iter().enumerate() {
            let j = (i as i64 * k).rem_euclid(m) as usize;
            v[j] = v[j].add(c);
        }
        self.ring.from_poly(&v)
    }

    /// Product of all Galois conjugates; lies in the base ring.
    pub fn norm(&self) -> Result<R, ArithError> {
        let m = self
            .ring
            .cyclotomic_order()
            .ok_or_else(|| ArithError::Unsupported("norm is implemented for cyclotomic rings".into()))?;
        let mut acc = self.clone();
        for k in 2..m {
            if modular::gcd(k, m) == 1 {
                acc = acc.mul(&self.conjugate(k as i64));
            }
        }
        acc.to_base()
            .ok_or_else(|| ArithError::Mismatch("norm did not land in the base ring".into()))
    }

    /// Trace to the base ring, `Σ_i c_i Tr(X^i)`, with power sums from Newton's identities.
    pub fn trace(&self) -> R {
        let base = self.ring.base();
        let m = self.ring.modulus();
        let d = self.ring.degree();
        // power sums of the roots of monic m, for k < d:
        // p_k = -k m_{d-k} - Σ_{i=1}^{k-1} m_{d-i} p_{k-i}
        let mut ps: Vec<R> = vec![R::from_i64(base, d as i64)];
        for k in 1..d {
            let mut s = m[d - k].mul_int(k as i64);
            for i in 1..k {
                s = s.add(&m[d - i].mul(&ps[k - i]));
            }
            ps.push(s.neg());
        }
        super::sum(base, self.c.iter().zip(&ps).map(|(c, p)| c.mul(p)))
    }

    fn euclid_inverse(&self) -> Result<Self, ArithError> {
        let base = self.ring.base().clone();
        let not_inv = || ArithError::NotInvertible(format!("{self}"));
        // invariant: r_i ≡ s_i · a  (mod m)
        let mut r0 = self.ring.modulus().to_vec();
        let mut s0: Vec<R> = Vec::new();
        let mut r1 = poly::trim(self.c.clone());
        let mut s1 = vec![R::one(&base)];
        if r1.is_empty() {
            return Err(not_inv());
        }
        while r1.len() > 1 {
            let lead_inv = r1.last().unwrap().try_inv().map_err(|_| not_inv())?;
            let monic = poly::scale(&r1, &lead_inv);
            let (q, r) = poly::divrem_monic(&base, &r0, &monic);
            let q = poly::scale(&q, &lead_inv);
            let r = poly::trim(r);
            let s = poly::sub(&s0, &poly::mul(&base, &q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            if r1.is_empty() {
                return Err(not_inv());
            }
        }
        let c = r1[0].try_inv().map_err(|_| not_inv())?;
        Ok(self.ring.from_poly(&poly::scale(&s1, &c)))
    }
}

impl<R: Ring> PartialEq for QuotElem<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.c == other.c
    }
}

impl<R: Ring> fmt::Debug for QuotElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<R: Ring> fmt::Display for QuotElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(b) = self.to_base() {
            return write!(f, "{b}");
        }
        write!(f, "[")?;
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> Ring for QuotElem<R> {
    type Ctx = QuotCtx<R>;

    fn ctx(&self) -> QuotCtx<R> {
        self.ring.clone()
    }

    fn zero(ctx: &QuotCtx<R>) -> Self {
        ctx.from_poly(&[])
    }

    fn one(ctx: &QuotCtx<R>) -> Self {
        ctx.embed(R::one(ctx.base()))
    }

    fn from_int(ctx: &QuotCtx<R>, n: &BigInt) -> Self {
        ctx.embed(R::from_int(ctx.base(), n))
    }

    fn from_rational(ctx: &QuotCtx<R>, q: &BigRational) -> Result<Self, ArithError> {
        Ok(ctx.embed(R::from_rational(ctx.base(), q)?))
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert!(self.ring == rhs.ring);
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| a.add(b)).collect();
        QuotElem { ring: self.ring.clone(), c }
    }

    fn sub(&self, rhs: &Self) -> Self {
        debug_assert!(self.ring == rhs.ring);
        let c = self.c.iter().zip(&rhs.c).map(|(a, b)| a.sub(b)).collect();
        QuotElem { ring: self.ring.clone(), c }
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert!(self.ring == rhs.ring);
        let prod = poly::mul(self.ring.base(), &self.c, &rhs.c);
        QuotElem { ring: self.ring.clone(), c: self.ring.reduce_short(prod) }
    }

    fn neg(&self) -> Self {
        QuotElem { ring: self.ring.clone(), c: self.c.iter().map(Ring::neg).collect() }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }

    fn div_int(&self, n: &BigInt) -> Result<Self, ArithError> {
        let c = self.c.iter().map(|x| x.div_int(n)).collect::<Result<_, _>>()?;
        Ok(QuotElem { ring: self.ring.clone(), c })
    }

    fn try_inv(&self) -> Result<Self, ArithError> {
        if let Some(b) = self.to_base() {
            return Ok(self.ring.embed(b.try_inv()?));
        }
        match self.euclid_inverse() {
            Ok(x) => Ok(x),
            Err(e) if self.ring.cyclotomic_order().is_some() => {
                // the Euclidean remainders may have non-unit leading terms over Z/p^N;
                // the norm route only needs the norm to be a unit
                let n = self.norm().map_err(|_| e.clone())?;
                let ninv = n.try_inv().map_err(|_| e)?;
                let m = self.ring.cyclotomic_order().unwrap();
                let mut acc = self.ring.embed(ninv);
                for k in 2..m {
                    if modular::gcd(k, m) == 1 {
                        acc = acc.mul(&self.conjugate(k as i64));
                    }
                }
                Ok(acc)
            }
            Err(e) => Err(e),
        }
    }
}

impl<R: RootsOfUnity> RootsOfUnity for QuotElem<R> {
    /// Uses `ζ_M = X` when `order | M`, otherwise falls back to the base ring.
    fn root_of_unity(ctx: &QuotCtx<R>, order: u64, k: i64) -> Result<Self, ArithError> {
        if let Some(m) = ctx.cyclotomic_order() {
            if m % order == 0 {
                return Ok(ctx.zeta_pow(k.rem_euclid(order as i64) * (m / order) as i64));
            }
        }
        Ok(ctx.embed(R::root_of_unity(ctx.base(), order, k)?))
    }
}

/// `R[ζ_{p^n}]`, the ring of values of a level-`n` additive character.
pub fn cyclotomic_ring<R: Ring>(base: &R::Ctx, p: u64, n: u32) -> Result<QuotCtx<R>, ArithError> {
    if n < 1 {
        return Err(ArithError::Level(n));
    }
    if !modular::is_prime(p) {
        return Err(ArithError::Unsupported(format!("{p} is not prime")));
    }
    Ok(QuotCtx::cyclotomic(base, modular::ipow(p, n)))
}

/// Accumulator in the group ring `R[Z/M]`, reduced into `R[ζ_M]` at the end.
///
/// Multiplying by `ζ^j` is an index rotation here, which makes long sums of
/// root-of-unity multiples cheap.
#[derive(Clone)]
pub struct CyclicAccumulator<R: Ring> {
    m: u64,
    c: Vec<R>,
}

impl<R: Ring> CyclicAccumulator<R> {
    pub fn new(base: &R::Ctx, m: u64) -> Self {
        CyclicAccumulator { m, c: vec![R::zero(base); m as usize] }
    }

    /// Add `a · ζ^j`.
    pub fn add_term(&mut self, j: i64, a: &R) {
        let j = j.rem_euclid(self.m as i64) as usize;
        self.c[j] = self.c[j].add(a);
    }

    /// Add `a · ζ^j · x` for another accumulator `x`.
    pub fn add_scaled(&mut self, j: i64, a: &R, x: &CyclicAccumulator<R>) {
        debug_assert_eq!(self.m, x.m);
        for (i, xi) in x.c.iter().enumerate() {
            if !xi.is_zero() {
                let k = (i as i64 + j).rem_euclid(self.m as i64) as usize;
                self.c[k] = self.c[k].add(&xi.mul(a));
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero)
    }

    pub fn reduce(&self, ring: &QuotCtx<R>) -> QuotElem<R> {
        assert_eq!(ring.cyclotomic_order(), Some(self.m));
        ring.from_poly(&self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PAdicCtx, Zp, Q};

    #[test]
    fn cyclotomic_examples() {
        let r2 = cyclotomic_ring::<Q>(&(), 2, 1).unwrap();
        assert_eq!(r2.gen(), r2.embed(Q::int(-1)));
        let r3 = cyclotomic_ring::<Q>(&(), 3, 1).unwrap();
        assert_eq!(r3.modulus(), &[Q::int(1), Q::int(1), Q::int(1)]);
        assert!(r3.gen().pow(3).is_one());
        let r9 = cyclotomic_ring::<Q>(&(), 3, 2).unwrap();
        let z = r9.gen();
        assert!(z.pow(9).is_one());
        assert!(!z.pow(3).is_one());
        assert_eq!(r9.degree(), 6);
        assert!(matches!(cyclotomic_ring::<Q>(&(), 3, 0), Err(ArithError::Level(0))));
    }

    #[test]
    fn primitive_root_relation() {
        for (p, n) in [(2u64, 3u32), (3, 2), (5, 1), (5, 2), (7, 1)] {
            let r = cyclotomic_ring::<Q>(&(), p, n).unwrap();
            let step = modular::ipow(p, n - 1) as i64;
            let s = crate::arith::sum(&r, (0..p as i64).map(|j| r.zeta_pow(j * step)));
            assert!(s.is_zero(), "p={p} n={n}");
        }
    }

    #[test]
    fn inverses_norms_traces() {
        let r = QuotCtx::<Q>::cyclotomic(&(), 12);
        let a = r.from_poly(&[Q::int(2), Q::int(-1), Q::int(3)]);
        let inv = a.try_inv().unwrap();
        assert!(a.mul(&inv).is_one());
        // Tr(ζ_12) = μ(12) = 0, Tr(1) = 4
        assert_eq!(r.gen().trace(), Q::int(0));
        assert_eq!(r.embed(Q::int(1)).trace(), Q::int(4));
        // N(1 - ζ_9) = Φ_9(1) = 3
        let r9 = QuotCtx::<Q>::cyclotomic(&(), 9);
        let one_minus = r9.embed(Q::int(1)).sub(&r9.gen());
        assert_eq!(one_minus.norm().unwrap(), Q::int(3));
        assert_eq!(r9.gen().trace(), Q::int(0));
        assert_eq!(r9.gen().pow(3).trace(), Q::int(-3));
    }

    #[test]
    fn padic_cyclotomic_inverse() {
        let ctx = PAdicCtx::new(5, 8).unwrap();
        let r = QuotCtx::<Zp>::cyclotomic(&ctx, 20);
        let a = r.from_poly(&[Zp::from_i64(&ctx, 1), Zp::from_i64(&ctx, 5), Zp::from_i64(&ctx, 2)]);
        let inv = a.try_inv().unwrap();
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn accumulator_matches_direct_sum() {
        let r = QuotCtx::<Q>::cyclotomic(&(), 18);
        let mut acc = CyclicAccumulator::<Q>::new(&(), 18);
        let mut direct = r.embed(Q::int(0));
        for j in 0..40i64 {
            let a = Q::new(j - 7, 3);
            acc.add_term(5 * j, &a);
            direct = direct.add(&r.zeta_pow(5 * j).mul(&r.embed(a)));
        }
        assert_eq!(acc.reduce(&r), direct);
    }
}
