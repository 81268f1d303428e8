//! Characters of `F^×` for a local field with residue field of size `l`,
//! abelian L-factors, Gauss sums, ε-factors and GL(2) Euler factors.
//!
//! Conventions:
//!
//! * every `|.|^s` shift is folded into the character, so `L(μ)` means
//!   `(1 - μ(ϖ))^{-1}` for unramified `μ` and `1` otherwise;
//! * `ψ` has conductor `O`, and `ε(χ, ψ) = χ(ϖ)^n τ(χ, ψ)` is the
//!   unnormalized Gauss sum (no `l^{-n/2}`), `n` the conductor exponent;
//! * Haar measure on `O^×` has total volume 1.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::modular::{self, ipow};
use crate::arith::{sum, BaseRing, Ring, RootsOfUnity};
use crate::error::{KernelError, Result};
use crate::mellin::characters::{CharJson, PsiSystem, UnitChar};

/// A quasi-character `χ` of `F^×`: a finite-order character of the units and
/// the value `χ(ϖ)`, `ϖ = l` the fixed uniformizer.
#[derive(Debug, Clone, PartialEq)]
pub struct MultChar<V: Ring> {
    unit: UnitChar,
    pi_value: V,
}

impl<V: Ring> MultChar<V> {
    pub fn new(unit: UnitChar, pi_value: V) -> Self {
        MultChar { unit: unit.primitive(), pi_value }
    }

    pub fn unramified(l: u64, pi_value: V) -> Self {
        Self::new(UnitChar::trivial(l), pi_value)
    }

    pub fn l(&self) -> u64 {
        self.unit.l()
    }

    pub fn unit(&self) -> &UnitChar {
        &self.unit
    }

    pub fn pi_value(&self) -> &V {
        &self.pi_value
    }

    pub fn conductor(&self) -> u32 {
        self.unit.conductor()
    }

    pub fn is_unramified(&self) -> bool {
        self.unit.is_trivial()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.unit.mul(&other.unit), self.pi_value.mul(&other.pi_value))
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self::new(self.unit.inverse(), self.pi_value.try_inv()?))
    }

    /// Twist by an unramified character with `ϖ ↦ x`.
    pub fn twist_unramified(&self, x: &V) -> Self {
        Self::new(self.unit.clone(), self.pi_value.mul(x))
    }

    /// `χ(ϖ^v u)` for a unit residue `u` (`0` if `l | u`).
    pub fn value(&self, ctx: &V::Ctx, v: i64, u: i64) -> Result<V>
    where
        V: RootsOfUnity,
    {
        let unit: V = self.unit.value(ctx, u)?;
        Ok(unit.mul(&self.pi_value.powi(v)?))
    }
}

/// `{"p", "n", "values", "l", "pi_value"}`: the unit part as in the Mellin
/// character format plus the uniformizer value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultCharJson {
    #[serde(flatten)]
    pub unit: CharJson,
    pub l: u64,
    pub pi_value: String,
}

impl<V: BaseRing> MultChar<V> {
    pub fn to_json(&self) -> MultCharJson {
        MultCharJson { unit: self.unit.to_json(), l: self.l(), pi_value: self.pi_value.to_string() }
    }

    pub fn from_json(ctx: &V::Ctx, j: &MultCharJson) -> Result<Self> {
        if j.l != j.unit.p {
            return Err(KernelError::Malformed(format!("l = {} but unit part lives mod {}", j.l, j.unit.p)));
        }
        let unit = UnitChar::from_json(&j.unit)?;
        Ok(Self::new(unit, V::parse(ctx, &j.pi_value)?))
    }
}

/// `L(μ)`: `(1 - μ(ϖ))^{-1}` if unramified, `1` otherwise.
pub fn l_factor<V: Ring>(mu: &MultChar<V>) -> Result<V> {
    EulerFactor::of(mu).value(&mu.pi_value.ctx(), "L(μ)")
}

/// `Π_i (1 - x_i)^{-1}`, kept factored so zeta integrals can cancel tails
/// against it.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerFactor<V: Ring> {
    pub roots: Vec<V>,
    /// Extra invertible scalar, `L = scalar · Π (1 - x_i)^{-1}`.
    pub scalar: Option<V>,
}

impl<V: Ring> EulerFactor<V> {
    pub fn trivial() -> Self {
        EulerFactor { roots: Vec::new(), scalar: None }
    }

    pub fn of(mu: &MultChar<V>) -> Self {
        if mu.is_unramified() {
            EulerFactor { roots: vec![mu.pi_value.clone()], scalar: None }
        } else {
            Self::trivial()
        }
    }

    pub fn times(mut self, other: Self) -> Self {
        self.roots.extend(other.roots);
        self.scalar = match (self.scalar, other.scalar) {
            (Some(a), Some(b)) => Some(a.mul(&b)),
            (a, b) => a.or(b),
        };
        self
    }

    /// `L^{-1}`, always defined.
    pub fn inverse_value(&self, ctx: &V::Ctx) -> Result<V> {
        let mut acc = V::one(ctx);
        for x in &self.roots {
            acc = acc.mul(&V::one(ctx).sub(x));
        }
        if let Some(s) = &self.scalar {
            acc = acc.mul(&s.try_inv()?);
        }
        Ok(acc)
    }

    /// `L`; a root equal to 1 is a pole named after `what`.
    pub fn value(&self, ctx: &V::Ctx, what: &str) -> Result<V> {
        let mut acc = self.scalar.clone().unwrap_or_else(|| V::one(ctx));
        for x in &self.roots {
            let d = V::one(ctx).sub(x);
            if d.is_zero() {
                return Err(KernelError::Pole(format!("{what}: Euler factor with root 1")));
            }
            acc = acc.mul(&d.try_inv()?);
        }
        Ok(acc)
    }
}

/// `Σ_{u ∈ (Z/l^n)^×} χ(u) ψ(u / l^n)` at an explicit level `n ≥ 1` (no
/// primitivity requirement).
pub fn gauss_sum_at_level<V: RootsOfUnity>(ctx: &V::Ctx, chi: &UnitChar, n: u32, psi: &PsiSystem) -> Result<V> {
    if n == 0 {
        return Err(KernelError::Conductor("Gauss sums need level n ≥ 1".into()));
    }
    if chi.l() != psi.p {
        return Err(KernelError::Conductor(format!("character mod {} against ψ of {}", chi.l(), psi.p)));
    }
    psi.check_level(n)?;
    let m = ipow(chi.l(), n) as i64;
    let terms = (0..m)
        .filter(|u| u % chi.l() as i64 != 0)
        .map(|u| -> Result<V> {
            let c: V = chi.value(ctx, u)?;
            Ok(c.mul(&psi.value::<V>(ctx, u, n)?))
        })
        .collect::<Result<Vec<V>>>()?;
    Ok(sum(ctx, terms))
}

/// `τ(χ, ψ)` at the conductor of `χ`; unramified characters are rejected.
pub fn gauss_sum<V: RootsOfUnity>(ctx: &V::Ctx, chi: &MultChar<V>, psi: &PsiSystem) -> Result<V> {
    let n = chi.conductor();
    if n == 0 {
        return Err(KernelError::Conductor("unramified character has no Gauss sum; ε = 1".into()));
    }
    gauss_sum_at_level(ctx, chi.unit(), n, psi)
}

/// `ε(χ, ψ)`: `1` if unramified, `χ(ϖ)^n τ(χ, ψ)` otherwise.
pub fn epsilon_abelian<V: RootsOfUnity>(ctx: &V::Ctx, chi: &MultChar<V>, psi: &PsiSystem) -> Result<V> {
    let n = chi.conductor();
    if n == 0 {
        return Ok(V::one(ctx));
    }
    Ok(chi.pi_value.pow(n as u64).mul(&gauss_sum(ctx, chi, psi)?))
}

/// A coset `rep · (1 + l^depth) · ϖ^vpi` of `F^×` (`depth = 0`: all of `O^× ϖ^vpi`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coset {
    pub rep: u64,
    pub depth: u32,
    pub vpi: i64,
}

impl Coset {
    pub fn new(l: u64, rep: u64, depth: u32, vpi: i64) -> Result<Self> {
        let m = ipow(l, depth);
        if depth > 0 && rep % l == 0 {
            return Err(KernelError::Malformed(format!("coset representative {rep} is not a unit mod {l}")));
        }
        Ok(Coset { rep: if depth == 0 { 1 } else { rep % m }, depth, vpi })
    }

    /// Haar volume of `rep(1 + l^depth)` inside `O^×` of volume 1.
    pub fn unit_volume_index(&self, l: u64) -> u64 {
        if self.depth == 0 {
            1
        } else {
            (l - 1) * ipow(l, self.depth - 1)
        }
    }

    pub fn contains(&self, l: u64, vpi: i64, unit: u64) -> bool {
        vpi == self.vpi && (self.depth == 0 || unit % ipow(l, self.depth) == self.rep)
    }

    pub fn disjoint(&self, other: &Coset, l: u64) -> bool {
        if self.vpi != other.vpi {
            return true;
        }
        let m = ipow(l, self.depth.min(other.depth));
        self.rep % m != other.rep % m
    }

    /// `∫_{coset} χ(a) d^×a`.
    pub fn integrate<V: RootsOfUnity>(&self, ctx: &V::Ctx, chi: &MultChar<V>) -> Result<V> {
        self.integrate_mass(ctx, chi, &V::one(ctx))
    }

    /// `mass · ∫_{coset} χ(a) d^×a`, dividing by the Haar index last so the
    /// division is exact whenever `mass` absorbs it.
    pub fn integrate_mass<V: RootsOfUnity>(&self, ctx: &V::Ctx, chi: &MultChar<V>, mass: &V) -> Result<V> {
        if chi.conductor() > self.depth {
            return Ok(V::zero(ctx));
        }
        let v = chi.value(ctx, self.vpi, self.rep as i64)?.mul(mass);
        Ok(v.div_int(&BigInt::from(self.unit_volume_index(chi.l())))?)
    }
}

/// One term `c · χ(a) · 1_C(a)` of a locally constant function on `F^×`
/// (`support = None`: no restriction).
#[derive(Debug, Clone, PartialEq)]
pub struct LocallyConstantTerm<V: Ring> {
    pub coeff: V,
    pub chi: MultChar<V>,
    pub support: Option<Coset>,
}

/// `L^{-1}(μ)(h) = 1 - ∫_{O^×} μ(ϖa) h(ϖa) da` for `h` a finite sum of
/// character-times-coset terms.
///
/// For pure character terms the integral is also computed with the
/// uniformizer `ϖ g`, `g` a generator of the units, and the two must agree.
pub fn inverse_l_eval<V: RootsOfUnity>(ctx: &V::Ctx, mu: &MultChar<V>, h: &[LocallyConstantTerm<V>]) -> Result<V> {
    let mut integral = V::zero(ctx);
    for term in h {
        let muchi = mu.mul(&term.chi);
        let piece = match term.support {
            None => {
                let direct = unit_average(ctx, &muchi, 1)?;
                let g = crate::mellin::characters::unit_generators(mu.l(), muchi.conductor().max(1))
                    .first()
                    .map(|&(g, _)| g)
                    .unwrap_or(1);
                let shifted = unit_average(ctx, &muchi, g)?;
                if direct != shifted {
                    return Err(KernelError::Consistency("inverse-L integral depends on the uniformizer".into()));
                }
                direct
            }
            Some(c) => {
                // ϖa ∈ c(1+l^m)ϖ^v with a a unit forces v = 1
                if c.vpi != 1 {
                    V::zero(ctx)
                } else {
                    Coset { vpi: 1, ..c }.integrate(ctx, &muchi)?
                }
            }
        };
        integral = integral.add(&term.coeff.mul(&piece));
    }
    Ok(V::one(ctx).sub(&integral))
}

/// `∫_{O^×} χ(ϖ g a) da` by brute force over `(O/l^n)^×`.
fn unit_average<V: RootsOfUnity>(ctx: &V::Ctx, chi: &MultChar<V>, g: u64) -> Result<V> {
    let n = chi.conductor().max(1);
    let m = ipow(chi.l(), n);
    let terms = (1..m)
        .filter(|u| u % chi.l() != 0)
        .map(|u| chi.value(ctx, 1, ((g as u128 * u as u128) % m as u128) as i64))
        .collect::<Result<Vec<V>>>()?;
    Ok(sum(ctx, terms).div_int(&BigInt::from(modular::euler_phi(m)))?)
}

/// ε-factor data a supercuspidal representation must supply, keyed by twist.
#[derive(Debug, Clone, PartialEq)]
pub struct SupercuspidalData<V: Ring> {
    pub epsilon: Vec<(MultChar<V>, V)>,
    pub adjoint_l: Option<V>,
}

/// The local GL(2) representation, described by its Langlands parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalRep<V: Ring> {
    /// Irreducible principal series with parameter `μ¹ ⊕ μ²`.
    Principal(MultChar<V>, MultChar<V>),
    /// Twist of the Steinberg representation by `μ`.
    Special(MultChar<V>),
    Supercuspidal(SupercuspidalData<V>),
}

impl<V: Ring> LocalRep<V> {
    pub fn kind(&self) -> &'static str {
        match self {
            LocalRep::Principal(..) => "principal",
            LocalRep::Special(_) => "special",
            LocalRep::Supercuspidal(_) => "supercuspidal",
        }
    }

    /// `L(Π ⊗ χ)`: `L(μ¹χ)L(μ²χ)`, `L(μχ)`, or `1`.
    pub fn twisted_l(&self, chi: &MultChar<V>) -> EulerFactor<V> {
        match self {
            LocalRep::Principal(m1, m2) => EulerFactor::of(&m1.mul(chi)).times(EulerFactor::of(&m2.mul(chi))),
            LocalRep::Special(m) => EulerFactor::of(&m.mul(chi)),
            LocalRep::Supercuspidal(_) => EulerFactor::trivial(),
        }
    }

    /// `L(s, Ad)` with `x = |ϖ|^s = l^{-s}` folded in.
    ///
    /// Principal: roots `x·(μ¹/μ²)(ϖ), x, x·(μ²/μ¹)(ϖ)` (ratios only when
    /// unramified); special: root `x/l`; supercuspidal: supplied.
    pub fn adjoint_l(&self, x: &V) -> Result<EulerFactor<V>> {
        match self {
            LocalRep::Principal(m1, m2) => {
                let ratio = m1.mul(&m2.inverse()?);
                let mut f = EulerFactor { roots: vec![x.clone()], scalar: None };
                if ratio.is_unramified() {
                    f.roots.push(x.mul(ratio.pi_value()));
                    f.roots.push(x.mul(&ratio.pi_value().try_inv()?));
                }
                Ok(f)
            }
            LocalRep::Special(m) => {
                let l = BigInt::from(m.l());
                Ok(EulerFactor { roots: vec![x.div_int(&l)?], scalar: None })
            }
            LocalRep::Supercuspidal(d) => match &d.adjoint_l {
                Some(v) => Ok(EulerFactor { roots: Vec::new(), scalar: Some(v.clone()) }),
                None => Err(KernelError::MissingData("supercuspidal L(s, Ad) not supplied".into())),
            },
        }
    }

    /// `ε(Π ⊗ χ, ψ)` as a product of abelian ε-factors of the parameter.
    ///
    /// Special: `ε(μχ)^2` when `μχ` is ramified and `-(μχ)(ϖ)` otherwise.
    pub fn twisted_epsilon(&self, ctx: &V::Ctx, chi: &MultChar<V>, psi: &PsiSystem) -> Result<V>
    where
        V: RootsOfUnity,
    {
        match self {
            LocalRep::Principal(m1, m2) => {
                Ok(epsilon_abelian(ctx, &m1.mul(chi), psi)?.mul(&epsilon_abelian(ctx, &m2.mul(chi), psi)?))
            }
            LocalRep::Special(m) => {
                let mc = m.mul(chi);
                if mc.is_unramified() {
                    Ok(mc.pi_value().neg())
                } else {
                    Ok(epsilon_abelian(ctx, &mc, psi)?.pow(2))
                }
            }
            LocalRep::Supercuspidal(d) => d
                .epsilon
                .iter()
                .find(|(c, _)| c == chi)
                .map(|(_, e)| e.clone())
                .ok_or_else(|| KernelError::MissingData("supercuspidal ε for this twist not supplied".into())),
        }
    }

    /// Total conductor exponent of `Π ⊗ χ` for the parameters handled here.
    pub fn twisted_conductor(&self, chi: &MultChar<V>) -> Option<u32> {
        match self {
            LocalRep::Principal(m1, m2) => Some(m1.mul(chi).conductor() + m2.mul(chi).conductor()),
            LocalRep::Special(m) => {
                let c = m.mul(chi).conductor();
                Some(if c == 0 { 1 } else { 2 * c })
            }
            LocalRep::Supercuspidal(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{QuotCtx, QuotElem, Q};
    use crate::mellin::characters::value_ring_order;

    type C = QuotElem<Q>;

    fn ring(p: u64, n: u32) -> QuotCtx<Q> {
        QuotCtx::cyclotomic(&(), value_ring_order(p, n))
    }

    #[test]
    fn l_factor_examples() {
        let mu = MultChar::unramified(3, Q::new(1, 3));
        assert_eq!(l_factor(&mu).unwrap(), Q::new(3, 2));
        let ram = MultChar::new(UnitChar::quadratic(3).unwrap(), Q::int(7));
        assert_eq!(l_factor(&ram).unwrap(), Q::int(1));
        assert!(matches!(l_factor(&MultChar::unramified(3, Q::int(1))), Err(KernelError::Pole(_))));
    }

    #[test]
    fn gauss_sum_examples() {
        let r5 = ring(5, 1);
        let psi5 = PsiSystem::new(5, 2);
        let q5 = MultChar::new(UnitChar::quadratic(5).unwrap(), r5.embed(Q::int(1)));
        let t5: C = gauss_sum(&r5, &q5, &psi5).unwrap();
        assert_eq!(t5.mul(&t5), r5.embed(Q::int(5)));
        let r3 = ring(3, 1);
        let psi3 = PsiSystem::new(3, 2);
        let q3 = MultChar::new(UnitChar::quadratic(3).unwrap(), r3.embed(Q::int(1)));
        let t3: C = gauss_sum(&r3, &q3, &psi3).unwrap();
        assert_eq!(t3.mul(&t3), r3.embed(Q::int(-3)));
        let ram: C = gauss_sum_at_level(&r3, &UnitChar::trivial(3), 1, &psi3).unwrap();
        assert_eq!(ram, r3.embed(Q::int(-1)));
        let triv = MultChar::unramified(3, r3.embed(Q::int(1)));
        assert!(matches!(gauss_sum(&r3, &triv, &psi3), Err(KernelError::Conductor(_))));
    }

    #[test]
    fn epsilon_examples() {
        let r5 = ring(5, 1);
        let psi = PsiSystem::new(5, 2);
        let unr = MultChar::unramified(5, r5.embed(Q::int(4)));
        assert_eq!(epsilon_abelian(&r5, &unr, &psi).unwrap(), r5.embed(Q::int(1)));
        let q = MultChar::new(UnitChar::quadratic(5).unwrap(), r5.embed(Q::int(1)));
        let e = epsilon_abelian(&r5, &q, &psi).unwrap();
        assert_eq!(e, gauss_sum(&r5, &q, &psi).unwrap());
        let e_dual = epsilon_abelian(&r5, &q.inverse().unwrap(), &psi.inverse()).unwrap();
        assert_eq!(e.mul(&e_dual), r5.embed(Q::int(q.unit().parity() * 5)));
        // unramified twists scale by μ(ϖ)^n
        let tw = q.twist_unramified(&r5.embed(Q::int(3)));
        assert_eq!(epsilon_abelian(&r5, &tw, &psi).unwrap(), e.mul(&r5.embed(Q::int(3))));
    }

    #[test]
    fn inverse_l_examples() {
        let mu = MultChar::unramified(3, Q::int(2));
        let chi = MultChar::unramified(3, Q::int(3));
        let h = [LocallyConstantTerm { coeff: Q::int(1), chi: chi.clone(), support: None }];
        assert_eq!(inverse_l_eval(&(), &mu, &h).unwrap(), Q::int(-5));
        let inv = inverse_l_eval(&(), &mu, &h).unwrap();
        let l = l_factor(&MultChar::unramified(3, Q::int(6))).unwrap();
        assert_eq!(inv.mul(&l), Q::int(1));
        let quad = MultChar::new(UnitChar::quadratic(3).unwrap(), Q::int(1));
        let h = [LocallyConstantTerm { coeff: Q::int(1), chi: quad, support: None }];
        assert_eq!(inverse_l_eval(&(), &mu, &h).unwrap(), Q::int(1));
        let half = MultChar::unramified(3, Q::new(1, 2));
        let h = [LocallyConstantTerm { coeff: Q::int(1), chi: half, support: None }];
        assert_eq!(inverse_l_eval(&(), &mu, &h).unwrap(), Q::int(0));
    }

    #[test]
    fn inverse_l_on_cosets() {
        let mu = MultChar::unramified(5, Q::int(1));
        let chi = MultChar::unramified(5, Q::int(1));
        // 1_{1+5Z_5} at ϖ^1 has volume 1/4 of O^×
        let c = Coset::new(5, 1, 1, 1).unwrap();
        let h = [LocallyConstantTerm { coeff: Q::int(8), chi, support: Some(c) }];
        assert_eq!(inverse_l_eval(&(), &mu, &h).unwrap(), Q::int(-1));
    }

    #[test]
    fn adjoint_factor_matches_parameter() {
        // Frobenius diag(a, b) acts on sl2 with eigenvalues a/b, 1, b/a
        let m1 = MultChar::unramified(7, Q::int(2));
        let m2 = MultChar::unramified(7, Q::int(5));
        let x = Q::new(1, 7);
        let f = LocalRep::Principal(m1, m2).adjoint_l(&x).unwrap();
        let expected = [Q::new(2, 5), Q::int(1), Q::new(5, 2)];
        let inv = f.inverse_value(&()).unwrap();
        let oracle = expected.iter().fold(Q::int(1), |acc, e| acc.mul(&Q::int(1).sub(&x.mul(e))));
        assert_eq!(inv, oracle);
        let sp = LocalRep::Special(MultChar::unramified(7, Q::int(3))).adjoint_l(&x).unwrap();
        assert_eq!(sp.inverse_value(&()).unwrap(), Q::int(1).sub(&Q::new(1, 49)));
    }
}
