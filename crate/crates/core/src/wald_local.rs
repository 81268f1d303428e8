//! Local torus periods in the Kirillov model.
//!
//! A Kirillov vector is a finite combination of coset indicators on `F^×`
//! plus at most one tail `μ(a)·1_{O∖0}(a)` (sharp) or
//! `(1 - log_l|a|)·μ(a)·1_{O∖0}(a)` (log-weighted). Zeta integrals of tails
//! are geometric series `Σ_v (1+v)^r x^v` whose closed form `(1-x)^{-r}` is
//! cancelled symbolically against the Euler factor; a tail that is neither
//! cancelled nor topologically convergent is rejected.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::modular::ipow;
use crate::arith::{sum, BaseRing, Ring, RootsOfUnity, Topological};
use crate::error::{KernelError, Result};
use crate::local_factors::{Coset, EulerFactor, LocalRep, MultChar, MultCharJson};
use crate::mellin::characters::PsiSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailKind {
    Sharp,
    Log,
}

impl TailKind {
    /// Order of the pole of `Σ_v w(v) x^v`.
    fn pole_order(self) -> usize {
        match self {
            TailKind::Sharp => 1,
            TailKind::Log => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tail<V: Ring> {
    pub kind: TailKind,
    pub mu: MultChar<V>,
}

/// A vector of the Kirillov model, as a function on `F^×`.
#[derive(Debug, Clone, PartialEq)]
pub struct KirillovVector<V: Ring> {
    l: u64,
    cosets: Vec<(Coset, V)>,
    tail: Option<Tail<V>>,
}

impl<V: Ring> KirillovVector<V> {
    pub fn new(l: u64, cosets: Vec<(Coset, V)>, tail: Option<Tail<V>>) -> Result<Self> {
        for (i, (a, _)) in cosets.iter().enumerate() {
            for (b, _) in &cosets[..i] {
                if !a.disjoint(b, l) {
                    return Err(KernelError::Malformed(format!("cosets {a:?} and {b:?} overlap")));
                }
            }
        }
        if let Some(t) = &tail {
            if t.mu.l() != l {
                return Err(KernelError::Malformed("tail character lives over another residue field".into()));
            }
        }
        Ok(KirillovVector { l, cosets, tail })
    }

    pub fn zero(l: u64) -> Self {
        KirillovVector { l, cosets: Vec::new(), tail: None }
    }

    /// `c · 1_{rep(1+l^depth)ϖ^vpi}`.
    pub fn coset_indicator(l: u64, rep: u64, depth: u32, vpi: i64, c: V) -> Result<Self> {
        Self::new(l, vec![(Coset::new(l, rep, depth, vpi)?, c)], None)
    }

    pub fn tail_only(kind: TailKind, mu: MultChar<V>) -> Self {
        KirillovVector { l: mu.l(), cosets: Vec::new(), tail: Some(Tail { kind, mu }) }
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn cosets(&self) -> &[(Coset, V)] {
        &self.cosets
    }

    pub fn tail(&self) -> Option<&Tail<V>> {
        self.tail.as_ref()
    }

    /// Multiply coset masses by `c`; a tail can only be scaled by 1.
    pub fn scale(&self, c: &V) -> Result<Self> {
        if self.tail.is_some() && !c.is_one() {
            return Err(KernelError::Domain("tails carry no coefficient; scale the coset part only".into()));
        }
        let cosets = self.cosets.iter().map(|(k, v)| (*k, v.mul(c))).collect();
        Ok(KirillovVector { l: self.l, cosets, tail: self.tail.clone() })
    }

    /// Value at `ϖ^v u`.
    pub fn eval(&self, v: i64, u: u64) -> Result<V>
    where
        V: RootsOfUnity,
    {
        let ctx = self.ctx()?;
        let mut acc = V::zero(&ctx);
        for (c, val) in &self.cosets {
            if c.contains(self.l, v, u) {
                acc = acc.add(val);
            }
        }
        if let Some(t) = &self.tail {
            if v >= 0 {
                let w = match t.kind {
                    TailKind::Sharp => V::one(&ctx),
                    TailKind::Log => V::from_i64(&ctx, 1 + v),
                };
                acc = acc.add(&w.mul(&t.mu.value(&ctx, v, u as i64)?));
            }
        }
        Ok(acc)
    }

    fn ctx(&self) -> Result<V::Ctx> {
        if let Some((_, v)) = self.cosets.first() {
            return Ok(v.ctx());
        }
        if let Some(t) = &self.tail {
            return Ok(t.mu.pi_value().ctx());
        }
        Err(KernelError::Domain("empty Kirillov vector carries no coefficient ring".into()))
    }

    /// `∫ f(a) χ(a) d^×a` over the cosets only.
    pub fn coset_integral(&self, ctx: &V::Ctx, chi: &MultChar<V>) -> Result<V>
    where
        V: RootsOfUnity,
    {
        let terms = self
            .cosets
            .iter()
            .map(|(c, v)| c.integrate_mass(ctx, chi, v))
            .collect::<Result<Vec<V>>>()?;
        Ok(sum(ctx, terms))
    }

    /// `∫_{O^×} f(a) d^×a`: the masses of cosets inside the units.
    pub fn unit_integral(&self, ctx: &V::Ctx) -> Result<V> {
        let terms = self
            .cosets
            .iter()
            .filter(|(c, _)| c.vpi == 0)
            .map(|(c, v)| Ok(v.div_int(&BigInt::from(c.unit_volume_index(self.l)))?))
            .collect::<Result<Vec<V>>>()?;
        Ok(sum(ctx, terms))
    }

    /// Supported on `(1 + l^n)` with no tail.
    pub fn is_supported_on_principal_units(&self, n: u32) -> bool {
        let m = ipow(self.l, n);
        self.tail.is_none() && self.cosets.iter().all(|(c, _)| c.vpi == 0 && c.depth >= n && c.rep % m == 1 % m)
    }
}

/// `Z(f, χ) = L(Π ⊗ χ)^{-1} ∫ f(a) χ(a) d^×a`.
pub fn zeta<V: RootsOfUnity + Topological>(
    ctx: &V::Ctx,
    f: &KirillovVector<V>,
    chi: &MultChar<V>,
    rep: &LocalRep<V>,
) -> Result<V> {
    if chi.l() != f.l() {
        return Err(KernelError::Malformed("character and vector over different residue fields".into()));
    }
    let euler = rep.twisted_l(chi);
    let cosets = euler.inverse_value(ctx)?.mul(&f.coset_integral(ctx, chi)?);
    let Some(tail) = f.tail() else {
        return Ok(cosets);
    };
    let muchi = tail.mu.mul(chi);
    if !muchi.is_unramified() {
        return Ok(cosets);
    }
    let x = muchi.pi_value().clone();
    let mut remaining = euler.roots.clone();
    let mut order = tail.kind.pole_order();
    while order > 0 {
        match remaining.iter().position(|r| *r == x) {
            Some(i) => {
                remaining.swap_remove(i);
                order -= 1;
            }
            None => break,
        }
    }
    let mut tail_value = EulerFactor { roots: remaining, scalar: euler.scalar.clone() }.inverse_value(ctx)?;
    if order > 0 {
        if !x.is_topologically_nilpotent() {
            return Err(KernelError::Divergence(format!(
                "tail with (μχ)(ϖ) = {x} has an uncancelled pole of order {order}"
            )));
        }
        let geometric = V::one(ctx).sub(&x).try_inv()?;
        tail_value = tail_value.mul(&geometric.pow(order as u64));
    }
    Ok(cosets.add(&tail_value))
}

/// `L(1, η) L(1, Ad) / ζ_F(2)` with `η` trivial (split torus): the inverse of
/// the normalizer of the split period.
///
/// Written so that no `1/l` appears for principal and special parameters:
/// `L(1, η)/ζ_F(2) = (l+1)/l` and each root `ρ/l` of `L(1, Ad)` contributes
/// `l/(l - ρ)`, so the result is `(l+1) l^{k-1} / Π(l - ρ_i)` with `k ≥ 1`
/// roots. This keeps the value computable in `Z/p^N` when `l = p`.
pub fn split_normalizer_inverse<V: Ring>(ctx: &V::Ctx, rep: &LocalRep<V>, l: u64) -> Result<V> {
    let lv = V::from_i64(ctx, l as i64);
    let one = V::one(ctx);
    let eta_over_zeta2 = lv.add(&one);
    let invert = |d: V| -> Result<V> {
        if d.is_zero() {
            return Err(KernelError::Pole("L(1, Ad): Euler factor with root 1".into()));
        }
        Ok(d.try_inv()?)
    };
    match rep {
        // L(1, Ad) = l²/(l²-1), so the product collapses to l/(l-1)
        LocalRep::Special(_) => Ok(lv.mul(&invert(lv.sub(&one))?)),
        LocalRep::Principal(..) => {
            let roots = rep.adjoint_l(&one)?.roots;
            let mut acc = eta_over_zeta2.mul(&lv.pow(roots.len() as u64 - 1));
            for rho in roots {
                acc = acc.mul(&invert(lv.sub(&rho))?);
            }
            Ok(acc)
        }
        LocalRep::Supercuspidal(_) => {
            let l_ad = rep.adjoint_l(&one)?.value(ctx, "L(1, Ad)")?;
            Ok(l_ad.mul(&eta_over_zeta2).div_int(&BigInt::from(l))?)
        }
    }
}

fn unit_part_is_trivial(chars: &[&MultChar<impl Ring>]) -> bool {
    let mut it = chars.iter();
    let Some(first) = it.next() else { return true };
    it.fold(first.unit().clone(), |acc, c| acc.mul(c.unit())).is_trivial()
}

/// Split local period `[L(1,η)L(1,Ad)/ζ_F(2)] · Z(f₊, χ_•) · Z(f₋, χ_•^{-1})`.
///
/// `Z` already contains `L(1/2, Π ⊗ χ_•)^{-1} L(1/2, Π⁻ ⊗ χ_•^{-1})^{-1}`,
/// which is `L(1/2, Π, χ)^{-1}` for the split torus. The unit part of
/// `ω · χ_• · χ_∘` must be trivial (`ω` the central character of `Π₊`).
pub fn local_period_split<V: RootsOfUnity + Topological>(
    ctx: &V::Ctx,
    f_plus: &KirillovVector<V>,
    f_minus: &KirillovVector<V>,
    chi: (&MultChar<V>, &MultChar<V>),
    rep_plus: &LocalRep<V>,
    rep_minus: &LocalRep<V>,
) -> Result<V> {
    let (bullet, circ) = chi;
    let central_ok = match rep_plus {
        LocalRep::Principal(m1, m2) => unit_part_is_trivial(&[m1, m2, bullet, circ]),
        LocalRep::Special(m) => unit_part_is_trivial(&[m, m, bullet, circ]),
        LocalRep::Supercuspidal(_) => true,
    };
    if !central_ok {
        return Err(KernelError::Domain("ω·χ is not trivial on O^×".into()));
    }
    let z_plus = zeta(ctx, f_plus, bullet, rep_plus)?;
    let z_minus = zeta(ctx, f_minus, &bullet.inverse()?, rep_minus)?;
    Ok(split_normalizer_inverse(ctx, rep_plus, f_plus.l())?.mul(&z_plus).mul(&z_minus))
}

/// A character of a finite quotient `Π Z/order_i` of the compact torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusChar {
    pub orders: Vec<u64>,
    pub exps: Vec<u64>,
}

impl TorusChar {
    pub fn new(orders: Vec<u64>, exps: Vec<u64>) -> Result<Self> {
        if orders.len() != exps.len() || orders.contains(&0) {
            return Err(KernelError::Malformed("torus character shape mismatch".into()));
        }
        let exps = exps.iter().zip(&orders).map(|(e, o)| e % o).collect();
        Ok(TorusChar { orders, exps })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.orders != other.orders {
            return Err(KernelError::Malformed("torus characters of different quotients".into()));
        }
        Self::new(self.orders.clone(), self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> Self {
        let exps = self.exps.iter().zip(&self.orders).map(|(e, o)| (o - e) % o).collect();
        TorusChar { orders: self.orders.clone(), exps }
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TorusType {
    Inert,
    Ramified,
}

impl TorusType {
    /// Volume of `F^×\E^×`: 1 when inert, 2 when ramified.
    pub fn volume(self) -> i64 {
        match self {
            TorusType::Inert => 1,
            TorusType::Ramified => 2,
        }
    }
}

/// Restriction of a matrix coefficient to the compact torus: `Σ a_i χ_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToricCoefficient<V: Ring> {
    pub torus: TorusType,
    pub terms: Vec<(V, TorusChar)>,
}

/// `Σ_i a_i ∫ χ_i(t) χ(t) dt = vol · Σ_{χ_i χ = 1} a_i`.
pub fn local_period_compact<V: Ring>(ctx: &V::Ctx, phi: &ToricCoefficient<V>, chi: &TorusChar) -> Result<V> {
    let vol = V::from_i64(ctx, phi.torus.volume());
    let mut acc = V::zero(ctx);
    for (a, c) in &phi.terms {
        if c.mul(chi)?.is_trivial() {
            acc = acc.add(a);
        }
    }
    Ok(acc.mul(&vol))
}

/// `f₊` together with `Π(J) f₋`, the only data the `p`-adic period uses.
#[derive(Debug, Clone, PartialEq)]
pub struct StablePair<V: Ring> {
    pub plus: KirillovVector<V>,
    pub minus_j: KirillovVector<V>,
}

impl<V: Ring> StablePair<V> {
    pub fn is_admissible(&self, n: u32) -> bool {
        self.plus.is_supported_on_principal_units(n) && self.minus_j.is_supported_on_principal_units(n)
    }
}

/// `L(Π ⊗ χ)^2 Z(f₊, χ) Z(Π(J)f₋, χ)` for `χ` of depth `≤ n`, asserted equal
/// to the product of unit integrals `Q'(f₊) Q'(Π(J)f₋)`.
///
/// The ε-factor of the statement cancels against the functional equation
/// `Z(f₋, χ^{-1}) = ε · Z(Π(J)f₋, χ)`.
pub fn q_unit_integrals<V: RootsOfUnity + Topological>(
    ctx: &V::Ctx,
    pair: &StablePair<V>,
    n: u32,
    chi: &MultChar<V>,
    rep: &LocalRep<V>,
) -> Result<V> {
    if !pair.is_admissible(n) {
        return Err(KernelError::Admissibility(format!("pair is not supported on (1+p^{n})^×")));
    }
    if chi.conductor() > n {
        return Err(KernelError::Conductor(format!("character of conductor {} exceeds depth {n}", chi.conductor())));
    }
    let l_sq = rep.twisted_l(chi).value(ctx, "L(1/2, Π ⊗ χ)")?.pow(2);
    let by_zeta = l_sq.mul(&zeta(ctx, &pair.plus, chi, rep)?).mul(&zeta(ctx, &pair.minus_j, chi, rep)?);
    let constant = pair.plus.unit_integral(ctx)?.mul(&pair.minus_j.unit_integral(ctx)?);
    if by_zeta != constant {
        return Err(KernelError::Consistency(format!(
            "character route {by_zeta} differs from unit integrals {constant}"
        )));
    }
    Ok(constant)
}

/// Value at `χ` of the local period distribution at `p`:
/// `[L(1,η)L(1,Ad)/ζ_F(2)] · Q'(f₊) Q'(Π(J)f₋)`.
pub fn q_distribution_eval<V: RootsOfUnity + Topological>(
    ctx: &V::Ctx,
    pair: &StablePair<V>,
    n: u32,
    chi: &MultChar<V>,
    rep: &LocalRep<V>,
) -> Result<V> {
    let q = q_unit_integrals(ctx, pair, n, chi, rep)?;
    Ok(split_normalizer_inverse(ctx, rep, pair.plus.l())?.mul(&q))
}

/// Outcome of the sign predicate `ε(1/2, Π, χ) = χ(-1) η(-1) ε(B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignPredicate<V: Ring> {
    /// Unnormalized `ε(Π ⊗ χ, ψ)`.
    pub epsilon: V,
    /// `ε = sign · l^{exponent/2}`.
    pub exponent: u32,
    pub sign: i64,
    /// `ε(B)`, the Hasse invariant making the identity hold.
    pub hasse: i64,
}

/// Root number of `Π ⊗ χ` from abelian ε-factors and the quaternion algebra
/// invariant it forces. `eta_minus_one` is `η(-1)`.
pub fn saito_tunnell_sign<V: RootsOfUnity>(
    ctx: &V::Ctx,
    rep: &LocalRep<V>,
    chi: &MultChar<V>,
    eta_minus_one: i64,
    psi: &PsiSystem,
) -> Result<SignPredicate<V>> {
    if eta_minus_one.abs() != 1 {
        return Err(KernelError::Malformed("η(-1) must be ±1".into()));
    }
    let epsilon = rep.twisted_epsilon(ctx, chi, psi)?;
    let exponent = match rep {
        LocalRep::Principal(m1, m2) => m1.mul(chi).conductor() + m2.mul(chi).conductor(),
        LocalRep::Special(m) => 2 * m.mul(chi).conductor(),
        LocalRep::Supercuspidal(_) => 0,
    };
    if exponent % 2 != 0 {
        return Err(KernelError::Domain(format!("odd total conductor {exponent}: Π ⊗ χ is not self-dual")));
    }
    let scale = V::from_int(ctx, &BigInt::from(chi.l()).pow(exponent / 2));
    let sign = if epsilon == scale {
        1
    } else if epsilon == scale.neg() {
        -1
    } else {
        return Err(KernelError::Domain(format!("ε = {epsilon} is not ±l^{}", exponent / 2)));
    };
    let hasse = sign * chi.unit().parity() * eta_minus_one;
    Ok(SignPredicate { epsilon, exponent, sign, hasse })
}

/// `{"rep","depth","vpi","value"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetJson {
    pub rep: u64,
    pub depth: u32,
    pub vpi: i64,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailJson {
    pub kind: TailKind,
    pub mu: MultCharJson,
}

/// `{"l", "cosets":[…], "tail":{"kind":"sharp"|"log","mu":…}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KirillovJson {
    pub l: u64,
    #[serde(default)]
    pub cosets: Vec<CosetJson>,
    #[serde(default)]
    pub tail: Option<TailJson>,
}

impl<V: BaseRing> KirillovVector<V> {
    pub fn from_json(ctx: &V::Ctx, j: &KirillovJson) -> Result<Self> {
        let cosets = j
            .cosets
            .iter()
            .map(|c| Ok((Coset::new(j.l, c.rep, c.depth, c.vpi)?, V::parse(ctx, &c.value)?)))
            .collect::<Result<Vec<_>>>()?;
        let tail = j
            .tail
            .as_ref()
            .map(|t| Ok::<_, KernelError>(Tail { kind: t.kind, mu: MultChar::from_json(ctx, &t.mu)? }))
            .transpose()?;
        Self::new(j.l, cosets, tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{QuotCtx, QuotElem, TruncatedSeries, Q};
    use crate::mellin::characters::{value_ring_order, UnitChar};

    type S = TruncatedSeries<Q>;

    fn formal(c: i64) -> S {
        TruncatedSeries::from_ints(&(), 12, &[0, c])
    }

    fn sctx() -> crate::arith::SeriesCtx<()> {
        formal(0).series_ctx()
    }

    fn unr(c: i64) -> MultChar<S> {
        MultChar::unramified(3, formal(c))
    }

    #[test]
    fn zeta_case_table() {
        let ctx = sctx();
        let one = MultChar::unramified(3, S::one(&ctx));
        let m1 = unr(2);
        let m2 = unr(5);
        let principal = LocalRep::Principal(m1.clone(), m2.clone());
        let f = KirillovVector::tail_only(TailKind::Sharp, m1.clone());
        let z = zeta(&ctx, &f, &one, &principal).unwrap();
        assert_eq!(z, S::one(&ctx).sub(m2.pi_value()));
        let quad = MultChar::new(UnitChar::quadratic(3).unwrap(), S::one(&ctx));
        assert!(zeta(&ctx, &f, &quad, &principal).unwrap().is_zero());
        let special = LocalRep::Special(m1.clone());
        assert_eq!(zeta(&ctx, &f, &one, &special).unwrap(), S::one(&ctx));
    }

    #[test]
    fn log_tail_cancels_double_pole() {
        let ctx = sctx();
        let one = MultChar::unramified(3, S::one(&ctx));
        let mu = MultChar::unramified(3, S::from_i64(&ctx, 4));
        let rep = LocalRep::Principal(mu.clone(), mu.clone());
        let f = KirillovVector::tail_only(TailKind::Log, mu.clone());
        assert_eq!(zeta(&ctx, &f, &one, &rep).unwrap(), S::one(&ctx));
        let single = LocalRep::Special(mu.clone());
        assert!(matches!(zeta(&ctx, &f, &one, &single), Err(KernelError::Divergence(_))));
    }

    #[test]
    fn normalizer_matches_euler_products() {
        let inv_l = Q::new(1, 5);
        let zeta2_inv = Q::int(1).sub(&inv_l.mul(&inv_l));
        let l_eta = Q::int(1).div(&Q::int(1).sub(&inv_l)).unwrap();
        let reps = [
            LocalRep::Principal(MultChar::unramified(5, Q::int(2)), MultChar::unramified(5, Q::int(3))),
            LocalRep::Principal(
                MultChar::new(UnitChar::quadratic(5).unwrap(), Q::int(1)),
                MultChar::unramified(5, Q::int(7)),
            ),
            LocalRep::Special(MultChar::unramified(5, Q::int(3))),
        ];
        for rep in &reps {
            let l_ad = rep.adjoint_l(&inv_l).unwrap().value(&(), "").unwrap();
            assert_eq!(split_normalizer_inverse(&(), rep, 5).unwrap(), l_eta.mul(&l_ad).mul(&zeta2_inv));
        }
    }

    #[test]
    fn split_period_examples() {
        let one = MultChar::unramified(5, Q::int(1));
        let rep = LocalRep::Principal(MultChar::unramified(5, Q::int(2)), MultChar::unramified(5, Q::int(5)));
        let unit = KirillovVector::coset_indicator(5, 1, 0, 0, Q::int(1)).unwrap();
        let ring = QuotCtx::<Q>::cyclotomic(&(), 4);
        let one_c = MultChar::unramified(5, ring.embed(Q::int(1)));
        let rep_c = LocalRep::Principal(
            MultChar::unramified(5, ring.embed(Q::int(2))),
            MultChar::unramified(5, ring.embed(Q::int(5))),
        );
        let unit_c = KirillovVector::coset_indicator(5, 1, 0, 0, ring.embed(Q::int(1))).unwrap();
        let z: QuotElem<Q> = zeta(&ring, &unit_c, &one_c, &rep_c).unwrap();
        assert_eq!(z, ring.embed(Q::int(4)));
        let inv = split_normalizer_inverse(&(), &rep, 5).unwrap();
        let rep_dual = LocalRep::Principal(MultChar::unramified(5, Q::new(1, 2)), MultChar::unramified(5, Q::new(1, 5)));
        let circ = MultChar::new(UnitChar::trivial(5), Q::new(1, 10));
        let base = local_period_split(&(), &unit, &unit, (&one, &circ), &rep, &rep_dual).unwrap();
        // Z₋ = (1 - 1/2)(1 - 1/5) = 2/5
        assert_eq!(base, inv.mul(&Q::int(4)).mul(&Q::new(2, 5)));
        let triple = unit.scale(&Q::int(3)).unwrap();
        assert_eq!(
            local_period_split(&(), &triple, &unit, (&one, &circ), &rep, &rep_dual).unwrap(),
            base.mul(&Q::int(3))
        );
        let quad = MultChar::new(UnitChar::quadratic(5).unwrap(), Q::int(1));
        let r = local_period_split(&(), &unit, &unit, (&quad, &quad), &rep, &rep_dual);
        assert!(r.is_ok() && r.unwrap().is_zero());
    }

    #[test]
    fn compact_period_examples() {
        let chi0 = TorusChar::new(vec![6], vec![1]).unwrap();
        let inert = ToricCoefficient { torus: TorusType::Inert, terms: vec![(Q::int(1), chi0.clone())] };
        assert_eq!(local_period_compact(&(), &inert, &chi0.inverse()).unwrap(), Q::int(1));
        let ram = ToricCoefficient { torus: TorusType::Ramified, ..inert.clone() };
        assert_eq!(local_period_compact(&(), &ram, &chi0.inverse()).unwrap(), Q::int(2));
        let two = ToricCoefficient {
            torus: TorusType::Inert,
            terms: vec![(Q::int(3), chi0.clone()), (Q::int(7), TorusChar::new(vec![6], vec![2]).unwrap())],
        };
        assert!(local_period_compact(&(), &two, &chi0).unwrap().is_zero());
    }

    #[test]
    fn q_distribution_examples() {
        let ring = QuotCtx::<Q>::cyclotomic(&(), value_ring_order(3, 1));
        let plus = KirillovVector::coset_indicator(3, 1, 1, 0, ring.embed(Q::int(1))).unwrap();
        assert_eq!(plus.unit_integral(&ring).unwrap(), ring.embed(Q::new(1, 2)));
        let pair = StablePair { plus: plus.clone(), minus_j: plus.clone() };
        let rep = LocalRep::Principal(
            MultChar::unramified(3, ring.embed(Q::int(2))),
            MultChar::unramified(3, ring.embed(Q::int(4))),
        );
        let chars = [
            MultChar::unramified(3, ring.embed(Q::int(1))),
            MultChar::unramified(3, ring.embed(Q::int(7))),
            MultChar::new(UnitChar::quadratic(3).unwrap(), ring.embed(Q::int(5))),
        ];
        let values: Vec<_> =
            chars.iter().map(|c| q_distribution_eval(&ring, &pair, 1, c, &rep).unwrap()).collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]));
        let zero = StablePair { plus: KirillovVector::zero(3), minus_j: plus.clone() };
        assert!(q_distribution_eval(&ring, &zero, 1, &chars[0], &rep).unwrap().is_zero());
        let wide = KirillovVector::coset_indicator(3, 1, 0, 0, ring.embed(Q::int(1))).unwrap();
        let bad = StablePair { plus: wide, minus_j: plus };
        assert!(matches!(q_distribution_eval(&ring, &bad, 1, &chars[0], &rep), Err(KernelError::Admissibility(_))));
    }

    #[test]
    fn sign_examples() {
        let ring = QuotCtx::<Q>::cyclotomic(&(), value_ring_order(3, 1));
        let psi = PsiSystem::new(3, 2);
        let c = |x: i64| ring.embed(Q::int(x));
        let unr_rep = LocalRep::Principal(MultChar::unramified(3, c(2)), MultChar::unramified(3, c(5)));
        let one = MultChar::unramified(3, c(1));
        let s = saito_tunnell_sign(&ring, &unr_rep, &one, 1, &psi).unwrap();
        assert_eq!((s.sign, s.hasse), (1, 1));
        let quad = MultChar::new(UnitChar::quadratic(3).unwrap(), c(1));
        let cancel = LocalRep::Principal(quad.inverse().unwrap(), quad.inverse().unwrap());
        let s = saito_tunnell_sign(&ring, &cancel, &quad, 1, &psi).unwrap();
        assert_eq!((s.sign, s.hasse), (1, -1));
        let s = saito_tunnell_sign(&ring, &LocalRep::Principal(one.clone(), one.clone()), &quad, 1, &psi).unwrap();
        assert_eq!(s.epsilon, c(-3));
        assert_eq!((s.sign, s.hasse), (-1, 1));
        let sc = LocalRep::Supercuspidal(crate::local_factors::SupercuspidalData { epsilon: vec![], adjoint_l: None });
        assert!(matches!(saito_tunnell_sign(&ring, &sc, &one, 1, &psi), Err(KernelError::MissingData(_))));
    }
}
