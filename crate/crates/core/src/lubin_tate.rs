//! Lubin-Tate formal groups over `Z_p`: the group law, endomorphisms,
//! logarithm, torsion rings, translation by torsion points, and the invariant
//! derivation Θ.
//!
//! Two models are distinguished. For the Frobenius polynomial `(1+T)^p - 1`
//! the law is the polynomial `X + Y + XY`; disc functions on it are handled
//! as polynomials of degree `≤ D`, and translation and Θ are exact on them.
//! Any other polynomial gives a law known modulo total degree `D + 1`, and
//! translation by a torsion point `t` is exact modulo `(S, t)^{D+1}`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::arith::mpoly::{BiSeries, MPoly};
use crate::arith::{poly, Algebra, BaseRing, QuotCtx, QuotElem, QuotKind, Ring, TruncatedSeries, Q};
use crate::error::{ArithError, KernelError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupModel {
    /// `F = X + Y + XY`, `[p] = (1+T)^p - 1`.
    Multiplicative,
    /// Law obtained by successive approximation, exact mod total degree `D+1`.
    General,
}

/// A height-one Lubin-Tate formal group over `Z_p`.
#[derive(Debug, Clone)]
pub struct FormalGroupLaw<R: BaseRing> {
    base: R::Ctx,
    p: u64,
    q_res: u64,
    pi: Q,
    frobenius: Vec<Q>,
    trunc: usize,
    model: GroupModel,
    law_q: BiSeries<Q>,
    law: BiSeries<R>,
    /// `∂_Y F(S, 0)`, so that `λ'(S) = 1 / v(S)`.
    vector_field: TruncatedSeries<R>,
}

fn q_int(n: &BigInt) -> Q {
    Q(num_rational::BigRational::from_integer(n.clone()))
}

fn to_r<R: BaseRing>(ctx: &R::Ctx, q: &Q) -> Result<R> {
    R::from_rational(ctx, &q.0).map_err(|e| match e {
        ArithError::Precision(m) => KernelError::Construction(format!("coefficient not p-integral: {m}")),
        other => other.into(),
    })
}

/// `(1+T)^p - 1` as a coefficient list.
pub fn multiplicative_frobenius(p: u64) -> Vec<Q> {
    (0..=p).map(|k| if k == 0 { Q::int(0) } else { q_int(&poly::binomial(p, k)) }).collect()
}

/// Degree-`d` part of `f^a(X) f^b(Y)` summed into `out` with weight `c`.
fn add_product_part(out: &mut BiSeries<Q>, c: &Q, fa: &[Q], fb: &[Q], d: usize) {
    for i in 0..=d {
        let x = fa.get(i);
        let y = fb.get(d - i);
        if let (Some(x), Some(y)) = (x, y) {
            if !x.is_zero() && !y.is_zero() {
                out.add_at(i, d - i, &c.mul(&x.mul(y)));
            }
        }
    }
}

fn construct_law(pi: &Q, frob: &[Q], d: usize) -> Result<BiSeries<Q>> {
    let f = TruncatedSeries::<Q>::new(&(), d, frob.to_vec());
    // powers f(T)^k mod T^{d+1}
    let mut fpow = vec![TruncatedSeries::<Q>::constant(&(), d, Q::int(1))];
    for k in 1..=d {
        fpow.push(fpow[k - 1].mul(&f));
    }
    let mut law = BiSeries::<Q>::zero(&(), d);
    law.set(1, 0, Q::int(1));
    law.set(0, 1, Q::int(1));
    for deg in 2..=d {
        let mut lhs = BiSeries::<Q>::zero(&(), d);
        for (i, j, c) in law.terms() {
            add_product_part(&mut lhs, c, fpow[i].coeffs(), fpow[j].coeffs(), deg);
        }
        let mut rhs = BiSeries::<Q>::zero(&(), d);
        let low = law.truncate(deg);
        let mut power = BiSeries::<Q>::zero(&(), deg);
        power.set(0, 0, Q::int(1));
        for fk in frob.iter().take(deg + 1) {
            // fk multiplies low^k; accumulate degree-`deg` parts
            for j in 0..=deg {
                let cf = power.coeff(deg - j, j);
                if !cf.is_zero() && !fk.is_zero() {
                    rhs.add_at(deg - j, j, &fk.mul(&cf));
                }
            }
            power = power.mul(&low);
        }
        let denom = pi.sub(&pi.pow(deg as u64));
        let dinv = denom.try_inv().map_err(|_| KernelError::Construction("π - π^d vanished".into()))?;
        for j in 0..=deg {
            let e = lhs.coeff(deg - j, j).sub(&rhs.coeff(deg - j, j));
            law.set(deg - j, j, e.mul(&dinv));
        }
    }
    Ok(law)
}

impl<R: BaseRing> FormalGroupLaw<R> {
    /// The multiplicative formal group `X + Y + XY` with `[p] = (1+T)^p - 1`.
    pub fn multiplicative(ctx: &R::Ctx, p: u64, d: usize) -> Result<Self> {
        lt_construct(ctx, p, &Q::int(p as i64), p, &multiplicative_frobenius(p), d)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q_res(&self) -> u64 {
        self.q_res
    }

    pub fn uniformizer(&self) -> &Q {
        &self.pi
    }

    pub fn frobenius(&self) -> &[Q] {
        &self.frobenius
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn model(&self) -> GroupModel {
        self.model
    }

    pub fn is_multiplicative(&self) -> bool {
        self.model == GroupModel::Multiplicative
    }

    pub fn base(&self) -> &R::Ctx {
        &self.base
    }

    pub fn law(&self) -> &BiSeries<R> {
        &self.law
    }

    /// The law with rational coefficients.
    pub fn law_rational(&self) -> &BiSeries<Q> {
        &self.law_q
    }

    pub fn vector_field(&self) -> &TruncatedSeries<R> {
        &self.vector_field
    }

    /// `[a](T)` for a `p`-integral rational `a` (fixed-modulus elements are
    /// passed by an integer representative).
    pub fn endo(&self, a: &Q) -> Result<TruncatedSeries<R>> {
        lt_endo_rational(&self.pi, &self.frobenius, a, self.trunc)?
            .try_map(&self.base, |c| to_r::<R>(&self.base, c))
    }

    /// Θφ = φ'/λ' = φ' · v. Exact on polynomials in the multiplicative model;
    /// known to degree `D - 1` otherwise.
    pub fn theta<S: Algebra<R>>(&self, phi: &TruncatedSeries<S>) -> TruncatedSeries<S> {
        let sctx = phi.base_ctx().clone();
        match self.model {
            GroupModel::Multiplicative => {
                // (1+S)φ' with all coefficients kept
                let d = phi.trunc();
                let c = phi.coeffs();
                let v = (0..=d)
                    .map(|i| {
                        let mut x = S::zero(&sctx);
                        if i + 1 <= d {
                            x = x.add(&c[i + 1].mul_int(i as i64 + 1));
                        }
                        if i >= 1 {
                            x = x.add(&c[i].mul_int(i as i64));
                        }
                        x
                    })
                    .collect();
                TruncatedSeries::new(&sctx, d, v)
            }
            GroupModel::General => {
                let dphi = phi.derivative();
                let dd = dphi.trunc();
                let v = self.vector_field.truncate(dd.min(self.trunc)).extend_as_polynomial(dd);
                dphi.mul(&v.map(&sctx, |r| S::embed(&sctx, r)))
            }
        }
    }

    /// `F(S, t)` as a series in `S` over the ring of `t`.
    pub fn law_at<S: Algebra<R>>(&self, t: &S, d: usize) -> TruncatedSeries<S> {
        let sctx = t.ctx();
        match self.model {
            GroupModel::Multiplicative => {
                let one = S::one(&sctx);
                TruncatedSeries::new(&sctx, d, vec![t.clone(), one.add(t)])
            }
            GroupModel::General => {
                let mut tp = vec![S::one(&sctx)];
                for j in 1..=self.trunc {
                    tp.push(tp[j - 1].mul(t));
                }
                let mut v = vec![S::zero(&sctx); d + 1];
                for (i, j, c) in self.law.terms() {
                    if i <= d {
                        v[i] = v[i].add(&tp[j].mul(&S::embed(&sctx, c)));
                    }
                }
                TruncatedSeries::new(&sctx, d, v)
            }
        }
    }

    /// The translate `φ(F(S, t))`.
    pub fn translate<S: Algebra<R>>(&self, phi: &TruncatedSeries<S>, t: &S) -> TruncatedSeries<S> {
        phi.compose_polynomial(&self.law_at(t, phi.trunc()))
    }

    /// Normalized logarithm and its reversion (rational coefficients needed).
    pub fn log(&self) -> Result<NormalizedLog<R>> {
        let inv = self.vector_field.inverse()?;
        let lam = inv.truncate(self.trunc - 1).integrate()?;
        let exp = lam.revert()?;
        Ok(NormalizedLog { log: lam, exp })
    }

    /// The rank-one derivation `D` with `D(q) = q` on the multiplicative coordinate.
    pub fn st_derivation(&self) -> StDerivation<'_, R> {
        StDerivation { group: self }
    }

    /// Torsion ring of level `m`: `R[T]/(f^{(m)}(T)/f^{(m-1)}(T))`.
    pub fn torsion_ring(&self, m: u32) -> Result<TorsionRing<R>> {
        if m < 1 {
            return Err(ArithError::Level(m).into());
        }
        let f: Vec<Q> = self.frobenius.clone();
        let mut prev = vec![Q::int(0), Q::int(1)];
        let mut cur = f.clone();
        for _ in 1..m {
            let next = compose_poly_q(&f, &cur);
            prev = cur;
            cur = next;
        }
        let (quo, rem) = divide_q(&cur, &prev);
        debug_assert!(poly::trim(rem).is_empty());
        let lead = quo.last().cloned().unwrap();
        let monic: Vec<Q> = quo.iter().map(|c| c.div(&lead).unwrap()).collect();
        let degree = monic.len() - 1;
        let modulus: Vec<R> = monic.iter().map(|c| to_r::<R>(&self.base, c)).collect::<Result<_>>()?;
        let ring = QuotCtx::new(&self.base, modulus, QuotKind::Eisenstein { p: self.p, degree })?;
        Ok(TorsionRing { level: m, ring, group: Arc::new(self.clone()) })
    }

    /// `f` evaluated on a ring element (this is `[π]`).
    pub fn frobenius_eval<S: Algebra<R>>(&self, x: &S) -> Result<S> {
        let ctx = x.ctx();
        let coeffs: Vec<S> = self
            .frobenius
            .iter()
            .map(|c| Ok(S::embed(&ctx, &to_r::<R>(&self.base, c)?)))
            .collect::<Result<_>>()?;
        Ok(poly::eval(&coeffs, x))
    }

    /// Check `F(X,0)=X`, symmetry, and associativity up to total degree `d ≤ D`.
    pub fn check_axioms(&self, d: usize) -> Vec<(&'static str, bool)> {
        let d = d.min(self.trunc);
        let law = self.law.truncate(d);
        let identity = law.at_y0() == TruncatedSeries::var(&self.base, d);
        let symmetric = law.swap() == law;
        let x = |k| MPoly::var(&self.base, 3, d, k);
        let f_xy = law.to_mpoly(3, 0, 1);
        let f_yz = law.to_mpoly(3, 1, 2);
        let lhs = law.to_mpoly(3, 0, 1).substitute(&[f_xy, x(2), x(2)]);
        let rhs = law.to_mpoly(3, 0, 1).substitute(&[x(0), f_yz, x(2)]);
        vec![("identity", identity), ("commutativity", symmetric), ("associativity", lhs == rhs)]
    }
}

fn compose_poly_q(outer: &[Q], inner: &[Q]) -> Vec<Q> {
    let mut acc: Vec<Q> = Vec::new();
    for c in outer.iter().rev() {
        acc = poly::mul(&(), &acc, inner);
        if acc.is_empty() {
            acc.push(c.clone());
        } else {
            acc[0] = acc[0].add(c);
        }
    }
    poly::trim(acc)
}

/// Division of rational polynomials with a nonzero leading divisor coefficient.
fn divide_q(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = poly::trim(b.to_vec());
    let lead = b.last().unwrap().clone();
    let inv = lead.try_inv().unwrap();
    let monic = poly::scale(&b, &inv);
    let (q, r) = poly::divrem_monic(&(), a, &monic);
    (poly::scale(&q, &inv), r)
}

fn lt_endo_rational(pi: &Q, frob: &[Q], a: &Q, d: usize) -> Result<TruncatedSeries<Q>> {
    let f = TruncatedSeries::<Q>::new(&(), d, frob.to_vec());
    let mut e = TruncatedSeries::<Q>::new(&(), d, vec![Q::int(0), a.clone()]);
    for deg in 2..=d {
        // [a](f(T)) = f([a](T)) in degree `deg` fixes e_deg / (π - π^deg)
        let lhs = e.compose(&f)?.coeff(deg);
        let rhs = f.compose(&e)?.coeff(deg);
        let denom = pi.sub(&pi.pow(deg as u64));
        let c = lhs.sub(&rhs).div(&denom)?;
        let mut v = e.into_coeffs();
        v[deg] = c;
        e = TruncatedSeries::new(&(), d, v);
    }
    Ok(e)
}

/// Build the Lubin-Tate group of `frobenius` over `Z_p`.
///
/// The polynomial must satisfy `f ≡ πT mod T^2` and `f ≡ T^{q} mod π`, with
/// `π` of valuation one and `q = p` (base field `Q_p`).
pub fn lt_construct<R: BaseRing>(
    ctx: &R::Ctx,
    p: u64,
    pi: &Q,
    q_res: u64,
    frobenius: &[Q],
    d: usize,
) -> Result<FormalGroupLaw<R>> {
    let bad = |m: String| Err(KernelError::Construction(m));
    if !crate::arith::modular::is_prime(p) {
        return bad(format!("{p} is not prime"));
    }
    if q_res != p {
        return bad(format!("residue cardinality {q_res} unsupported: only Q_p (q = p) is modeled"));
    }
    if pi.valuation(p) != Some(1) {
        return bad(format!("{pi} is not a uniformizer of Q_{p}"));
    }
    if d < 2 {
        return bad("truncation degree must be at least 2".into());
    }
    let f = poly::trim(frobenius.to_vec());
    if !f.first().is_some_and(Q::is_zero) || f.get(1) != Some(pi) {
        return bad("Frobenius polynomial must be ≡ πT mod T^2".into());
    }
    for k in 0..f.len().max(q_res as usize + 1) {
        let c = f.get(k).cloned().unwrap_or_else(|| Q::int(0));
        let v = c.valuation(p);
        let ok = if k == q_res as usize {
            c.sub(&Q::int(1)).valuation(p).is_none_or(|v| v >= 1)
        } else {
            v.is_none_or(|v| v >= 1)
        };
        if !ok {
            return bad(format!("Frobenius polynomial is not ≡ T^{q_res} mod π (coefficient of T^{k} is {c})"));
        }
    }
    let model = if f == multiplicative_frobenius(p) && *pi == Q::int(p as i64) {
        GroupModel::Multiplicative
    } else {
        GroupModel::General
    };
    let law_q = match model {
        GroupModel::Multiplicative => {
            let mut l = BiSeries::<Q>::zero(&(), d);
            l.set(1, 0, Q::int(1));
            l.set(0, 1, Q::int(1));
            l.set(1, 1, Q::int(1));
            l
        }
        GroupModel::General => construct_law(pi, &f, d)?,
    };
    for (i, j, c) in law_q.terms() {
        if c.valuation(p).is_some_and(|v| v < 0) {
            return Err(KernelError::Consistency(format!(
                "law coefficient X^{i}Y^{j} = {c} is not p-integral"
            )));
        }
    }
    let law = law_q.map(ctx, |c| R::from_rational(ctx, &c.0).expect("integrality checked"));
    let vector_field = law.d_dy().at_y0();
    Ok(FormalGroupLaw {
        base: ctx.clone(),
        p,
        q_res,
        pi: pi.clone(),
        frobenius: f,
        trunc: d,
        model,
        law_q,
        law,
        vector_field,
    })
}

/// `λ` with `λ(0)=0`, `λ'(0)=1`, `λ(F(X,Y)) = λ(X) + λ(Y)`, and its reversion.
#[derive(Debug, Clone)]
pub struct NormalizedLog<R: Ring> {
    pub log: TruncatedSeries<R>,
    pub exp: TruncatedSeries<R>,
}

impl<R: BaseRing> NormalizedLog<R> {
    /// `λ(F(X,Y)) - λ(X) - λ(Y)` mod total degree `D+1`.
    pub fn additivity_defect(&self, group: &FormalGroupLaw<R>) -> BiSeries<R> {
        let d = self.log.trunc().min(group.trunc());
        let law = group.law().truncate(d);
        let lam = self.log.truncate(d);
        BiSeries::compose_into(&lam, &law)
            .sub(&BiSeries::from_x(&lam, d))
            .sub(&BiSeries::from_y(&lam, d))
    }
}

/// The derivation `D(1)` of the deformation disc: `D(q) = q` for the
/// multiplicative coordinate `q`. As an operator it is Θ.
pub struct StDerivation<'a, R: BaseRing> {
    group: &'a FormalGroupLaw<R>,
}

impl<R: BaseRing> StDerivation<'_, R> {
    pub fn apply<S: Algebra<R>>(&self, phi: &TruncatedSeries<S>) -> TruncatedSeries<S> {
        self.group.theta(phi)
    }

    /// The multiplicative coordinate `q = exp(λ(S))`; `1 + S` for the multiplicative group.
    pub fn coordinate(&self) -> Result<TruncatedSeries<R>> {
        let d = self.group.trunc();
        match self.group.model() {
            GroupModel::Multiplicative => Ok(TruncatedSeries::from_ints(self.group.base(), d, &[1, 1])),
            GroupModel::General => {
                let lam = self.group.log()?.log;
                let e = TruncatedSeries::expm1(self.group.base(), lam.trunc())?;
                let q = e.compose(&lam)?;
                Ok(q.add(&TruncatedSeries::constant(self.group.base(), lam.trunc(), R::one(self.group.base()))))
            }
        }
    }
}

/// Ring generated by a primitive `π^m`-torsion point.
#[derive(Debug, Clone)]
pub struct TorsionRing<R: BaseRing> {
    level: u32,
    ring: QuotCtx<R>,
    group: Arc<FormalGroupLaw<R>>,
}

impl<R: BaseRing> TorsionRing<R> {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn ring(&self) -> &QuotCtx<R> {
        &self.ring
    }

    /// The distinguished primitive torsion point `t_m`.
    pub fn point(&self) -> QuotElem<R> {
        self.ring.gen()
    }

    /// The point `[c](t_m)`, attached to `x = c / p^m`.
    ///
    /// Exact in the multiplicative model, where it is `(1 + t_m)^c - 1`;
    /// otherwise exact modulo `t_m^{D+1}`.
    pub fn point_for(&self, c: i64) -> Result<QuotElem<R>> {
        let t = self.point();
        let modulus = crate::arith::modular::ipow(self.group.p(), self.level) as i64;
        let c = c.rem_euclid(modulus);
        if self.group.is_multiplicative() {
            let one = QuotElem::one(&self.ring);
            return Ok(one.add(&t).pow(c as u64).sub(&one));
        }
        let e = self.group.endo(&Q::int(c))?;
        let coeffs: Vec<QuotElem<R>> = e.coeffs().iter().map(|r| self.ring.embed(r.clone())).collect();
        Ok(poly::eval(&coeffs, &t))
    }

    /// `[p^j](t_m)` computed by iterating `f`.
    pub fn multiply_by_p_power(&self, j: u32) -> Result<QuotElem<R>> {
        let mut x = self.point();
        for _ in 0..j {
            x = self.group.frobenius_eval(&x)?;
        }
        Ok(x)
    }

    /// `[p^m](t_m) = 0` and `[p^{m-1}](t_m) ≠ 0`.
    pub fn check_invariants(&self) -> Result<bool> {
        Ok(self.multiply_by_p_power(self.level)?.is_zero()
            && !self.multiply_by_p_power(self.level - 1)?.is_zero())
    }

    /// For the multiplicative group: the isomorphism `T ↦ ζ - 1` onto `R[ζ_{p^m}]`,
    /// sending an element to its power-basis coordinates in `ζ`.
    pub fn to_cyclotomic(&self, x: &QuotElem<R>, cyc: &QuotCtx<R>) -> Result<QuotElem<R>> {
        if !self.group.is_multiplicative() {
            return Err(KernelError::Domain("only the multiplicative torsion ring is cyclotomic".into()));
        }
        let zeta_minus_one = cyc.gen().sub(&QuotElem::one(cyc));
        let coeffs: Vec<QuotElem<R>> = x.coeffs().iter().map(|c| cyc.embed(c.clone())).collect();
        Ok(poly::eval(&coeffs, &zeta_minus_one))
    }
}

/// `[a](T)` over `R` for a group given by its Frobenius polynomial.
pub fn lt_endo<R: BaseRing>(group: &FormalGroupLaw<R>, a: &Q) -> Result<TruncatedSeries<R>> {
    group.endo(a)
}

/// Θ as a free function, mirroring the method.
pub fn theta<R: BaseRing, S: Algebra<R>>(
    group: &FormalGroupLaw<R>,
    phi: &TruncatedSeries<S>,
) -> TruncatedSeries<S> {
    group.theta(phi)
}

impl<R: BaseRing> PartialEq for FormalGroupLaw<R> {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.pi == other.pi
            && self.frobenius == other.frobenius
            && self.trunc == other.trunc
            && self.base == other.base
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PAdicCtx, Zp};

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn multiplicative_law_is_recognized_and_reconstructed() {
        let g = FormalGroupLaw::<Q>::multiplicative(&(), 2, 6).unwrap();
        assert!(g.is_multiplicative());
        assert_eq!(g.law().coeff(1, 1), Q::int(1));
        assert_eq!(g.law().coeff(2, 1), Q::int(0));
        // the successive approximation from f = 2T + T^2 lands on the same law
        let built = construct_law(&Q::int(2), &multiplicative_frobenius(2), 6).unwrap();
        assert_eq!(&built, g.law_rational());
        let built3 = construct_law(&Q::int(3), &multiplicative_frobenius(3), 6).unwrap();
        assert_eq!(&built3, FormalGroupLaw::<Q>::multiplicative(&(), 3, 6).unwrap().law_rational());
    }

    #[test]
    fn general_law_for_3t_plus_t3() {
        let f = vec![Q::int(0), Q::int(3), Q::int(0), Q::int(1)];
        let g = lt_construct::<Q>(&(), 3, &Q::int(3), 3, &f, 7).unwrap();
        assert_eq!(g.model(), GroupModel::General);
        assert_eq!(g.law().coeff(1, 0), Q::int(1));
        assert_eq!(g.law().coeff(1, 1), Q::int(0));
        assert_eq!(g.law().coeff(2, 1), q(1, 8));
        assert_eq!(g.law().coeff(1, 2), q(1, 8));
        assert!(g.check_axioms(7).iter().all(|(_, ok)| *ok));
        let lam = g.log().unwrap();
        assert!(lam.additivity_defect(&g).is_zero());
    }

    #[test]
    fn construction_rejects_bad_polynomials() {
        // 6 = 3·2 is a uniformizer of Q_3, 9 is not
        let other_pi = vec![Q::int(0), Q::int(6), Q::int(0), Q::int(1)];
        assert!(lt_construct::<Q>(&(), 3, &Q::int(6), 3, &other_pi, 5).is_ok());
        let not_pi = vec![Q::int(0), Q::int(9), Q::int(0), Q::int(1)];
        assert!(lt_construct::<Q>(&(), 3, &Q::int(9), 3, &not_pi, 5).is_err());
        let wrong_linear = vec![Q::int(0), Q::int(6), Q::int(0), Q::int(1)];
        assert!(lt_construct::<Q>(&(), 3, &Q::int(3), 3, &wrong_linear, 5).is_err());
        let bad_mod_pi = vec![Q::int(0), Q::int(3), Q::int(1), Q::int(1)];
        assert!(matches!(
            lt_construct::<Q>(&(), 3, &Q::int(3), 3, &bad_mod_pi, 5),
            Err(KernelError::Construction(_))
        ));
    }

    #[test]
    fn endomorphism_examples() {
        let g3 = FormalGroupLaw::<Q>::multiplicative(&(), 3, 6).unwrap();
        assert_eq!(g3.endo(&Q::int(1)).unwrap(), TruncatedSeries::var(&(), 6));
        assert_eq!(g3.endo(&Q::int(-1)).unwrap(), TruncatedSeries::from_ints(&(), 6, &[0, -1, 1, -1, 1, -1, 1]));
        let half = g3.endo(&q(1, 2)).unwrap();
        assert_eq!(half.coeff(1), q(1, 2));
        assert_eq!(half.coeff(2), q(-1, 8));
        assert_eq!(half.coeff(3), q(1, 16));
        let g2 = FormalGroupLaw::<Q>::multiplicative(&(), 2, 5).unwrap();
        assert_eq!(g2.endo(&Q::int(2)).unwrap(), TruncatedSeries::from_ints(&(), 5, &[0, 2, 1]));
    }

    #[test]
    fn theta_examples() {
        let g = FormalGroupLaw::<Q>::multiplicative(&(), 3, 8).unwrap();
        let s = TruncatedSeries::<Q>::var(&(), 8);
        assert_eq!(g.theta(&s), TruncatedSeries::from_ints(&(), 8, &[1, 1]));
        let one_plus = TruncatedSeries::<Q>::from_ints(&(), 8, &[1, 1]);
        let u4 = one_plus.pow(4);
        assert_eq!(g.theta(&u4), u4.mul_int(4));
        let lam = g.log().unwrap().log;
        let th = g.theta(&lam.extend_as_polynomial(8));
        assert_eq!(th.truncate(6), TruncatedSeries::from_ints(&(), 6, &[1]));
        let d = g.st_derivation();
        assert_eq!(d.apply(&one_plus), one_plus);
        assert_eq!(d.apply(&one_plus.pow(2)), one_plus.pow(2).mul_int(2));
        assert!(d.apply(&TruncatedSeries::<Q>::from_ints(&(), 8, &[7])).is_zero());
    }

    #[test]
    fn torsion_ring_examples() {
        let g2 = FormalGroupLaw::<Q>::multiplicative(&(), 2, 4).unwrap();
        let t = g2.torsion_ring(1).unwrap();
        assert_eq!(t.ring().modulus(), &[Q::int(2), Q::int(1)]);
        assert_eq!(t.point().coeffs(), &[Q::int(-2)]);
        assert!(t.check_invariants().unwrap());
        let g3 = FormalGroupLaw::<Q>::multiplicative(&(), 3, 4).unwrap();
        let t3 = g3.torsion_ring(1).unwrap();
        assert_eq!(t3.ring().modulus(), &[Q::int(3), Q::int(3), Q::int(1)]);
        let t32 = g3.torsion_ring(2).unwrap();
        assert_eq!(t32.ring().degree(), 6);
        assert!(t32.check_invariants().unwrap());
        let f = vec![Q::int(0), Q::int(2), Q::int(1)];
        let g = lt_construct::<Q>(&(), 2, &Q::int(2), 2, &f, 4).unwrap();
        assert_eq!(g.torsion_ring(1).unwrap().ring().modulus(), &[Q::int(2), Q::int(1)]);
        assert!(g2.torsion_ring(0).is_err());
        let f5 = vec![Q::int(0), Q::int(5), Q::int(0), Q::int(0), Q::int(0), Q::int(1)];
        let g5 = lt_construct::<Q>(&(), 5, &Q::int(5), 5, &f5, 6).unwrap();
        let r = g5.torsion_ring(2).unwrap();
        assert_eq!(r.ring().degree(), 20);
        assert!(r.check_invariants().unwrap());
    }

    #[test]
    fn torsion_points_match_roots_of_unity() {
        let g = FormalGroupLaw::<Q>::multiplicative(&(), 3, 4).unwrap();
        let t = g.torsion_ring(2).unwrap();
        let cyc = crate::arith::cyclotomic_ring::<Q>(&(), 3, 2).unwrap();
        for c in 0..9 {
            let pt = t.point_for(c).unwrap();
            let z = t.to_cyclotomic(&pt, &cyc).unwrap();
            assert_eq!(z, cyc.zeta_pow(c).sub(&QuotElem::one(&cyc)));
        }
    }

    #[test]
    fn fixed_modulus_law_reduces_rational_law() {
        let ctx = PAdicCtx::new(3, 10).unwrap();
        let f = vec![Q::int(0), Q::int(3), Q::int(0), Q::int(1)];
        let gq = lt_construct::<Q>(&(), 3, &Q::int(3), 3, &f, 6).unwrap();
        let gz = lt_construct::<Zp>(&ctx, 3, &Q::int(3), 3, &f, 6).unwrap();
        for (i, j, c) in gq.law().terms() {
            assert_eq!(gz.law().coeff(i, j), Zp::from_rational(&ctx, &c.0).unwrap());
        }
    }
}
