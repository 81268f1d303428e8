//! Exact coefficient arithmetic.
//!
//! Everything above this module is generic over [`Ring`]. Four families of
//! rings implement it:
//!
//! * [`Q`], exact rationals;
//! * [`Zp`], residues mod `p^N` with a tracked absolute precision per element;
//! * [`QuotElem`], polynomials over another ring modulo a monic polynomial
//!   (cyclotomic rings and Lubin-Tate torsion rings);
//! * [`TruncatedSeries`], power series mod `T^{D+1}` (used as a formal
//!   coefficient ring, e.g. for `|.|^s`-twists).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::ArithError;

pub mod domain;
pub mod laurent;
pub mod modular;
pub mod mpoly;
pub mod padic;
pub mod poly;
pub mod quotient;
pub mod rational;
pub mod series;

pub use domain::{CoeffDomain, DomainRing, SeriesJson};
pub use laurent::LaurentPoly;
pub use padic::{teichmuller, PAdicCtx, Zp};
pub use quotient::{cyclotomic_ring, CyclicAccumulator, QuotCtx, QuotElem, QuotKind};
pub use rational::Q;
pub use series::{SeriesCtx, TruncatedSeries};

/// A commutative ring with unit whose elements carry enough context to build
/// constants (modulus, quotient polynomial, truncation degree).
pub trait Ring: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: &BigInt) -> Self;
    /// Image of a rational number; fails when the denominator is not invertible.
    fn from_rational(ctx: &Self::Ctx, q: &BigRational) -> Result<Self, ArithError>;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// Exact division by a nonzero integer.
    ///
    /// In fixed-modulus rings this succeeds only when the element is provably
    /// divisible, and costs `v_p(n)` digits of precision.
    fn div_int(&self, n: &BigInt) -> Result<Self, ArithError>;

    fn try_inv(&self) -> Result<Self, ArithError>;

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_int(ctx, &BigInt::from(n))
    }

    fn zero_like(&self) -> Self {
        Self::zero(&self.ctx())
    }

    fn one_like(&self) -> Self {
        Self::one(&self.ctx())
    }

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    fn mul_int(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(&self.ctx(), n))
    }

    fn div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&rhs.try_inv()?))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power allowing negative exponents for units.
    fn powi(&self, e: i64) -> Result<Self, ArithError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.try_inv()?.pow(e.unsigned_abs()))
        }
    }
}

/// Rings with a fixed, compatible system of roots of unity.
///
/// `root_of_unity(ctx, m, k)` is `ζ_m^k`; the choices satisfy
/// `ζ_{md}^d = ζ_m` whenever both exist.
pub trait RootsOfUnity: Ring {
    fn root_of_unity(ctx: &Self::Ctx, order: u64, k: i64) -> Result<Self, ArithError>;
}

/// A ring receiving a structure map from `R`.
pub trait Algebra<R: Ring>: Ring {
    fn embed(ctx: &Self::Ctx, r: &R) -> Self;
}

impl<R: Ring> Algebra<R> for R {
    fn embed(_: &R::Ctx, r: &R) -> Self {
        r.clone()
    }
}

impl<R: Ring> Algebra<R> for QuotElem<R> {
    fn embed(ctx: &QuotCtx<R>, r: &R) -> Self {
        ctx.embed(r.clone())
    }
}

impl<R: Ring> Algebra<R> for TruncatedSeries<R> {
    fn embed(ctx: &SeriesCtx<R::Ctx>, r: &R) -> Self {
        TruncatedSeries::constant(&ctx.base, ctx.trunc, r.clone())
    }
}

/// Sum of an iterator of ring elements (needs a context for the empty sum).
pub fn sum<R: Ring>(ctx: &R::Ctx, items: impl IntoIterator<Item = R>) -> R {
    items.into_iter().fold(R::zero(ctx), |acc, x| acc.add(&x))
}

/// The two base coefficient domains: exact rationals and fixed-modulus p-adics.
pub trait BaseRing: RootsOfUnity {
    /// Parse the textual form produced by `Display`.
    fn parse(ctx: &Self::Ctx, s: &str) -> Result<Self, ArithError>;

    /// `v_p`, `None` for zero (or for an element with no known nonzero digit).
    fn p_valuation(&self, p: u64) -> Option<i64>;

    /// Known absolute precision; `None` means exact.
    fn known_precision(&self) -> Option<u32>;
}

impl BaseRing for Q {
    fn parse(_: &(), s: &str) -> Result<Self, ArithError> {
        s.parse()
    }

    fn p_valuation(&self, p: u64) -> Option<i64> {
        self.valuation(p)
    }

    fn known_precision(&self) -> Option<u32> {
        None
    }
}

impl BaseRing for Zp {
    fn parse(ctx: &PAdicCtx, s: &str) -> Result<Self, ArithError> {
        Zp::parse(ctx, s)
    }

    fn p_valuation(&self, p: u64) -> Option<i64> {
        assert_eq!(p, self.p(), "valuation at a foreign prime");
        if self.is_zero() {
            None
        } else {
            Some(self.valuation() as i64)
        }
    }

    fn known_precision(&self) -> Option<u32> {
        Some(self.prec())
    }
}

/// Rings with a notion of topologically nilpotent element, deciding when a
/// geometric series `Σ x^v` may be summed in closed form.
pub trait Topological: Ring {
    /// `x^v → 0`: never over `Q`, `p | x` in `Z/p^N`, zero constant term for series.
    fn is_topologically_nilpotent(&self) -> bool;
}

impl Topological for Q {
    fn is_topologically_nilpotent(&self) -> bool {
        self.is_zero()
    }
}

impl Topological for Zp {
    fn is_topologically_nilpotent(&self) -> bool {
        self.is_zero() || self.valuation() >= 1
    }
}

impl<R: Topological> Topological for QuotElem<R> {
    fn is_topologically_nilpotent(&self) -> bool {
        self.coeffs().iter().all(Topological::is_topologically_nilpotent)
    }
}

impl<R: Topological> Topological for TruncatedSeries<R> {
    fn is_topologically_nilpotent(&self) -> bool {
        self.coeff(0).is_topologically_nilpotent()
    }
}
