//! Functions on the Lubin-Tate disc and the Dirac (Amice) basis of the
//! multiplicative model.
//!
//! On the multiplicative disc the polynomial `(1+S)^u` is the Amice transform
//! of the Dirac mass at `u`. Translation by the torsion point `ζ - 1`
//! multiplies it by `ζ^u`, and Θ multiplies it by `u`.

use std::sync::Arc;

use crate::arith::{poly, Algebra, BaseRing, Ring, TruncatedSeries};
use crate::lubin_tate::FormalGroupLaw;

/// A truncated series on the disc of a formal group, with coefficients in an
/// `R`-algebra `S` (the base ring or a torsion/cyclotomic extension).
#[derive(Debug, Clone)]
pub struct DiscFunction<R: BaseRing, S: Algebra<R> = R> {
    group: Arc<FormalGroupLaw<R>>,
    series: TruncatedSeries<S>,
}

impl<R: BaseRing, S: Algebra<R>> PartialEq for DiscFunction<R, S> {
    fn eq(&self, other: &Self) -> bool {
        self.series == other.series && *self.group == *other.group
    }
}

impl<R: BaseRing, S: Algebra<R>> DiscFunction<R, S> {
    /// Wrap a series known to degree at most the group's truncation.
    pub fn new(group: &Arc<FormalGroupLaw<R>>, series: TruncatedSeries<S>) -> Self {
        assert!(series.trunc() <= group.trunc(), "series exceeds the group's truncation");
        DiscFunction { group: Arc::clone(group), series }
    }

    pub fn group(&self) -> &Arc<FormalGroupLaw<R>> {
        &self.group
    }

    pub fn series(&self) -> &TruncatedSeries<S> {
        &self.series
    }

    pub fn coeff_ctx(&self) -> &S::Ctx {
        self.series.base_ctx()
    }

    pub fn with_series(&self, series: TruncatedSeries<S>) -> Self {
        Self::new(&self.group, series)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.with_series(self.series.add(&rhs.series))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.with_series(self.series.sub(&rhs.series))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.with_series(self.series.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    /// Θ applied once (drops one known degree outside the multiplicative model).
    pub fn theta(&self) -> Self {
        self.with_series(self.group.theta(&self.series))
    }

    pub fn theta_pow(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.theta())
    }

    /// Value at `S = 0`.
    pub fn at_origin(&self) -> S {
        self.series.coeff(0)
    }
}

impl<R: BaseRing> DiscFunction<R, R> {
    /// Extend coefficients into an `R`-algebra.
    pub fn embed_into<S: Algebra<R>>(&self, ctx: &S::Ctx) -> DiscFunction<R, S> {
        DiscFunction::new(&self.group, self.series.map(ctx, |c| S::embed(ctx, c)))
    }

    /// `Σ_u b_u (1+S)^u` for Dirac coefficients `b_0..b_D`.
    pub fn from_dirac(group: &Arc<FormalGroupLaw<R>>, dirac: &[R]) -> Self {
        Self::new(group, from_dirac(group.base(), group.trunc(), dirac))
    }
}

/// Dirac coefficients `b_u` of a polynomial `Σ a_j S^j = Σ b_u (1+S)^u`.
pub fn to_dirac<S: Ring>(series: &TruncatedSeries<S>) -> Vec<S> {
    let d = series.trunc();
    let a = series.coeffs();
    (0..=d)
        .map(|u| {
            let mut b = S::zero(series.base_ctx());
            for (j, aj) in a.iter().enumerate().skip(u) {
                if aj.is_zero() {
                    continue;
                }
                let c = poly::binomial(j as u64, u as u64);
                let term = aj.mul(&S::from_int(series.base_ctx(), &c));
                b = if (j - u) % 2 == 0 { b.add(&term) } else { b.sub(&term) };
            }
            b
        })
        .collect()
}

/// Inverse of [`to_dirac`].
pub fn from_dirac<S: Ring>(ctx: &S::Ctx, trunc: usize, dirac: &[S]) -> TruncatedSeries<S> {
    let mut out = vec![S::zero(ctx); trunc + 1];
    for (u, b) in dirac.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        assert!(u <= trunc, "Dirac mass beyond the truncation degree");
        for (j, o) in out.iter_mut().enumerate().take(u + 1) {
            let c = poly::binomial(u as u64, j as u64);
            *o = o.add(&b.mul(&S::from_int(ctx, &c)));
        }
    }
    TruncatedSeries::new(ctx, trunc, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Q;

    #[test]
    fn dirac_basis_roundtrip() {
        let s = TruncatedSeries::<Q>::from_ints(&(), 6, &[3, -1, 4, 1, -5, 9, 2]);
        let b = to_dirac(&s);
        assert_eq!(from_dirac(&(), 6, &b), s);
        let u3 = TruncatedSeries::<Q>::from_ints(&(), 6, &[1, 1]).pow(3);
        let b3 = to_dirac(&u3);
        assert!(b3.iter().enumerate().all(|(u, b)| *b == Q::int(if u == 3 { 1 } else { 0 })));
    }
}
