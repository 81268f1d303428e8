//! Fixed-modulus p-adic integers with per-element absolute precision.
//!
//! An element is a residue `val mod p^prec` with `0 <= prec <= N`. Sums keep
//! the smaller precision; products use `min(prec_a + v(b), prec_b + v(a), N)`.
//! Exact division by `p^k` costs `k` digits. Equality is congruence modulo the
//! smaller of the two precisions, so elements computed along different routes
//! compare equal exactly when they agree on every digit both of them know.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{modular, Ring, RootsOfUnity};
use crate::error::ArithError;

/// The ambient `Z/p^N` together with cached powers of `p`.
#[derive(Debug)]
pub struct PAdicField {
    p: u64,
    cap: u32,
    powers: Vec<BigInt>,
    /// Teichmüller lift of the least primitive root mod p.
    teich_gen: BigInt,
}

impl PartialEq for PAdicField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.cap == other.cap
    }
}

/// Shared handle to a [`PAdicField`].
#[derive(Debug, Clone)]
pub struct PAdicCtx(Arc<PAdicField>);

impl PartialEq for PAdicCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl PAdicCtx {
    pub fn new(p: u64, cap: u32) -> Result<Self, ArithError> {
        if !modular::is_prime(p) {
            return Err(ArithError::Unsupported(format!("{p} is not prime")));
        }
        if cap == 0 {
            return Err(ArithError::Precision("precision cap must be positive".into()));
        }
        let pb = BigInt::from(p);
        let mut powers = Vec::with_capacity(cap as usize + 1);
        let mut acc = BigInt::one();
        for _ in 0..=cap {
            powers.push(acc.clone());
            acc *= &pb;
        }
        let modulus = powers[cap as usize].clone();
        let g = modular::primitive_root(p);
        let teich_gen = teichmuller_residue(&BigInt::from(g), p, &modulus, cap);
        Ok(PAdicCtx(Arc::new(PAdicField { p, cap, powers, teich_gen })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn cap(&self) -> u32 {
        self.0.cap
    }

    fn pow_p(&self, k: u32) -> &BigInt {
        &self.0.powers[k as usize]
    }
}

/// A p-adic integer known modulo `p^prec`.
#[derive(Clone)]
pub struct Zp {
    ctx: PAdicCtx,
    prec: u32,
    val: BigInt,
}

impl Zp {
    pub fn new(ctx: &PAdicCtx, val: &BigInt, prec: u32) -> Self {
        let prec = prec.min(ctx.cap());
        let val = val.mod_floor(ctx.pow_p(prec));
        Zp { ctx: ctx.clone(), prec, val }
    }

    pub fn from_i64(ctx: &PAdicCtx, n: i64) -> Self {
        Zp::new(ctx, &BigInt::from(n), ctx.cap())
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn residue(&self) -> &BigInt {
        &self.val
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    /// Valuation, capped at the known precision.
    pub fn valuation(&self) -> u32 {
        if self.val.is_zero() {
            return self.prec;
        }
        let p = BigInt::from(self.ctx.p());
        let mut v = 0;
        let mut n = self.val.clone();
        while n.is_multiple_of(&p) {
            n /= &p;
            v += 1;
        }
        v
    }

    /// Reduce to a lower precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Zp::new(&self.ctx, &self.val, prec.min(self.prec))
    }

    fn check_ctx(&self, rhs: &Self) {
        assert!(self.ctx == rhs.ctx, "p-adic context mismatch");
    }
}

impl PartialEq for Zp {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx != other.ctx {
            return false;
        }
        let k = self.prec.min(other.prec);
        let m = self.ctx.pow_p(k);
        (&self.val - &other.val).mod_floor(m).is_zero()
    }
}

impl fmt::Debug for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prec == self.ctx.cap() {
            write!(f, "{}", self.val)
        } else {
            write!(f, "{}+O({}^{})", self.val, self.ctx.p(), self.prec)
        }
    }
}

impl std::str::FromStr for Zp {
    type Err = ArithError;

    /// Parsing needs a context; use [`Zp::parse`].
    fn from_str(_: &str) -> Result<Self, Self::Err> {
        Err(ArithError::Parse("p-adic residues need a context".into()))
    }
}

impl Zp {
    /// Parse `"residue"` or `"residue+O(p^k)"`.
    pub fn parse(ctx: &PAdicCtx, s: &str) -> Result<Self, ArithError> {
        let s = s.trim();
        let bad = || ArithError::Parse(format!("not a p-adic residue: {s:?}"));
        let (val, prec) = match s.split_once("+O(") {
            Some((v, rest)) => {
                let rest = rest.strip_suffix(')').ok_or_else(bad)?;
                let (pp, k) = rest.split_once('^').ok_or_else(bad)?;
                if pp.trim().parse::<u64>().map_err(|_| bad())? != ctx.p() {
                    return Err(bad());
                }
                (v, k.trim().parse::<u32>().map_err(|_| bad())?)
            }
            None => (s, ctx.cap()),
        };
        if val.contains('/') {
            let q: super::Q = val.parse()?;
            return Ok(Zp::from_rational(ctx, &q.0)?.with_prec(prec));
        }
        let v: BigInt = val.trim().parse().map_err(|_| bad())?;
        Ok(Zp::new(ctx, &v, prec))
    }
}

impl Ring for Zp {
    type Ctx = PAdicCtx;

    fn ctx(&self) -> PAdicCtx {
        self.ctx.clone()
    }

    fn zero(ctx: &PAdicCtx) -> Self {
        Zp { ctx: ctx.clone(), prec: ctx.cap(), val: BigInt::zero() }
    }

    fn one(ctx: &PAdicCtx) -> Self {
        Zp::new(ctx, &BigInt::one(), ctx.cap())
    }

    fn from_int(ctx: &PAdicCtx, n: &BigInt) -> Self {
        Zp::new(ctx, n, ctx.cap())
    }

    fn from_rational(ctx: &PAdicCtx, q: &BigRational) -> Result<Self, ArithError> {
        let den = Zp::from_int(ctx, q.denom());
        let inv = den.try_inv().map_err(|_| {
            ArithError::Precision(format!("{} is not {}-integral", q, ctx.p()))
        })?;
        Ok(Zp::from_int(ctx, q.numer()).mul(&inv))
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check_ctx(rhs);
        Zp::new(&self.ctx, &(&self.val + &rhs.val), self.prec.min(rhs.prec))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check_ctx(rhs);
        Zp::new(&self.ctx, &(&self.val - &rhs.val), self.prec.min(rhs.prec))
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check_ctx(rhs);
        let prec = (self.prec + rhs.valuation())
            .min(rhs.prec + self.valuation())
            .min(self.ctx.cap());
        Zp::new(&self.ctx, &(&self.val * &rhs.val), prec)
    }

    fn neg(&self) -> Self {
        Zp::new(&self.ctx, &(-&self.val), self.prec)
    }

    fn is_zero(&self) -> bool {
        self.val.is_zero()
    }

    fn div_int(&self, n: &BigInt) -> Result<Self, ArithError> {
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let p = BigInt::from(self.ctx.p());
        let k = super::rational::int_valuation(n, &p);
        let unit = n / self.ctx.pow_p(k);
        let unit_inv = Zp::from_int(&self.ctx, &unit).try_inv()?;
        let x = self.mul(&unit_inv);
        if k == 0 {
            return Ok(x);
        }
        if x.prec < k {
            return Err(ArithError::Precision(format!(
                "dividing by {}^{k} exhausts the {} known digits",
                self.ctx.p(),
                x.prec
            )));
        }
        if x.valuation() < k {
            return Err(ArithError::Precision(format!(
                "{} is not divisible by {}^{k}; division by p is only exact in rational mode",
                self,
                self.ctx.p()
            )));
        }
        Ok(Zp::new(&self.ctx, &(&x.val / self.ctx.pow_p(k)), x.prec - k))
    }

    fn try_inv(&self) -> Result<Self, ArithError> {
        if self.prec == 0 || self.valuation() > 0 {
            return Err(ArithError::NotInvertible(format!("{self} is not a unit")));
        }
        let m = self.ctx.pow_p(self.prec);
        let inv = modular::mod_inverse(&self.val, m)
            .ok_or_else(|| ArithError::NotInvertible(self.to_string()))?;
        Ok(Zp::new(&self.ctx, &inv, self.prec))
    }
}

impl RootsOfUnity for Zp {
    /// Roots of unity of `Z_p`: the Teichmüller lifts (plus `-1` when `p = 2`).
    fn root_of_unity(ctx: &PAdicCtx, order: u64, k: i64) -> Result<Self, ArithError> {
        let p = ctx.p();
        let group = if p == 2 { 2 } else { p - 1 };
        if group % order != 0 {
            return Err(ArithError::Unsupported(format!(
                "Z_{p} contains no primitive root of unity of order {order}"
            )));
        }
        let e = k.rem_euclid(order as i64) as u64 * (group / order);
        if p == 2 {
            return Ok(Zp::from_i64(ctx, if e % 2 == 0 { 1 } else { -1 }));
        }
        let g = Zp::new(ctx, &ctx.0.teich_gen, ctx.cap());
        Ok(g.pow(e))
    }
}

fn teichmuller_residue(u: &BigInt, p: u64, modulus: &BigInt, cap: u32) -> BigInt {
    let pb = BigInt::from(p);
    let mut x = u.mod_floor(modulus);
    // each application of x -> x^p gains one digit
    for _ in 0..=cap {
        x = x.modpow(&pb, modulus);
    }
    x
}

/// Teichmüller representative `ω(u)`: the unique root of unity of order
/// dividing `p - 1` congruent to `u` mod `p`, computed as the fixed point of
/// `x ↦ x^p`. For `p = 2` this is always `1`.
pub fn teichmuller(u: i64, ctx: &PAdicCtx) -> Result<Zp, ArithError> {
    let p = ctx.p();
    if u.rem_euclid(p as i64) == 0 {
        return Err(ArithError::InvalidUnit(format!("{u} is divisible by {p}")));
    }
    let modulus = ctx.pow_p(ctx.cap()).clone();
    let val = teichmuller_residue(&BigInt::from(u), p, &modulus, ctx.cap());
    Ok(Zp::new(ctx, &val, ctx.cap()))
}

/// Smallest nonnegative integer representing `x` (for display and lifting).
pub fn lift(x: &Zp) -> BigInt {
    x.val.clone()
}

/// Signed representative in `(-p^prec/2, p^prec/2]`.
pub fn lift_signed(x: &Zp) -> BigInt {
    let m = x.ctx.pow_p(x.prec);
    let half: BigInt = m / 2;
    if x.val > half {
        &x.val - m
    } else {
        x.val.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> PAdicCtx {
        PAdicCtx::new(p, n).unwrap()
    }

    #[test]
    fn teichmuller_examples() {
        let c = ctx(5, 3);
        assert_eq!(teichmuller(1, &c).unwrap(), Zp::from_i64(&c, 1));
        assert_eq!(teichmuller(2, &c).unwrap().residue(), &BigInt::from(57));
        // ω(4) = ω(2)^2 = -1; 68 = -57 is ω(3)
        assert_eq!(teichmuller(4, &c).unwrap().residue(), &BigInt::from(124));
        assert_eq!(teichmuller(3, &c).unwrap().residue(), &BigInt::from(68));
        assert!(matches!(teichmuller(10, &c), Err(ArithError::InvalidUnit(_))));
    }

    #[test]
    fn teichmuller_is_fixed_by_frobenius() {
        for p in [2u64, 3, 5, 7] {
            let c = ctx(p, 12);
            for u in 1..(3 * p as i64) {
                if u % p as i64 == 0 {
                    continue;
                }
                let w = teichmuller(u, &c).unwrap();
                assert_eq!(w.pow(p), w, "p={p} u={u}");
                assert_eq!(
                    w.residue().mod_floor(&BigInt::from(p)),
                    BigInt::from(u).mod_floor(&BigInt::from(p))
                );
            }
        }
    }

    #[test]
    fn precision_tracking() {
        let c = ctx(3, 10);
        let nine = Zp::from_i64(&c, 9);
        let x = Zp::from_i64(&c, 18).div_int(&BigInt::from(9)).unwrap();
        assert_eq!(x, Zp::from_i64(&c, 2));
        assert_eq!(x.prec(), 8);
        assert!(Zp::from_i64(&c, 1).div_int(&BigInt::from(3)).is_err());
        // product with a known-small element keeps more digits than either factor
        let y = Zp::new(&c, &BigInt::from(4), 5).mul(&nine);
        assert_eq!(y.prec(), 7);
        assert!(nine.try_inv().is_err());
        let inv = Zp::from_i64(&c, 2).try_inv().unwrap();
        assert_eq!(inv.mul(&Zp::from_i64(&c, 2)), Zp::one(&c));
    }

    #[test]
    fn parse_roundtrip() {
        let c = ctx(5, 6);
        let x = Zp::new(&c, &BigInt::from(123), 4);
        let back = Zp::parse(&c, &x.to_string()).unwrap();
        assert_eq!(back.prec(), 4);
        assert_eq!(back, x);
        assert_eq!(Zp::parse(&c, "1/2").unwrap().mul_int(2), Zp::one(&c));
    }

    #[test]
    fn roots_of_unity_are_compatible() {
        let c = ctx(7, 8);
        let z6 = Zp::root_of_unity(&c, 6, 1).unwrap();
        let z3 = Zp::root_of_unity(&c, 3, 1).unwrap();
        assert_eq!(z6.pow(2), z3);
        assert_eq!(z6.pow(6), Zp::one(&c));
        assert_ne!(z6.pow(3), Zp::one(&c));
        assert!(Zp::root_of_unity(&c, 7, 1).is_err());
    }
}
