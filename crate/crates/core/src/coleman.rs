//! Coleman primitives of Frobenius-proper 1-forms on the rigid torus `G_m`.
//!
//! A form is `c·dT/T + h(T) dT` with `h` a Laurent polynomial free of
//! `T^{-1}`. Its primitive is `c·LOG + ∫h`, where `LOG` is a formal symbol
//! with `d LOG = dT/T` and `φ* LOG = q·LOG`, `φ*` being `T ↦ T^q`.

use serde::{Deserialize, Serialize};

use crate::arith::{modular, poly, BaseRing, LaurentPoly, Ring, Q};
use crate::error::{KernelError, Result};
use crate::mellin::{to_dirac, DiscFunction};

/// `residue·dT/T + form·dT`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusDifferential<R: Ring> {
    residue: R,
    form: LaurentPoly<R>,
}

impl<R: Ring> TorusDifferential<R> {
    /// Fails when `form` has a `T^{-1}` term besides the declared residue.
    pub fn new(residue: R, form: LaurentPoly<R>) -> Result<Self> {
        if !form.coeff(-1).is_zero() {
            return Err(KernelError::Malformed("T^-1 dT term outside the declared residue".into()));
        }
        Ok(TorusDifferential { residue, form })
    }

    /// `h(T) dT`, splitting off the `T^{-1}` coefficient as the residue.
    pub fn from_form(h: &LaurentPoly<R>) -> Self {
        let residue = h.coeff(-1);
        let form = h.sub(&LaurentPoly::monomial(h.base_ctx(), -1, residue.clone()));
        TorusDifferential { residue, form }
    }

    pub fn dlog(base: &R::Ctx, c: R) -> Self {
        TorusDifferential { residue: c, form: LaurentPoly::zero(base) }
    }

    pub fn residue(&self) -> &R {
        &self.residue
    }

    pub fn form(&self) -> &LaurentPoly<R> {
        &self.form
    }

    pub fn add(&self, rhs: &Self) -> Self {
        TorusDifferential { residue: self.residue.add(&rhs.residue), form: self.form.add(&rhs.form) }
    }

    pub fn scale(&self, a: &R) -> Self {
        TorusDifferential { residue: self.residue.mul(a), form: self.form.scale(a) }
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero() && self.form.is_zero()
    }

    /// `φ*`: `dT/T ↦ q dT/T`, `h(T) dT ↦ q T^{q-1} h(T^q) dT`.
    pub fn pullback(&self, q: u64) -> Self {
        let base = self.form.base_ctx();
        let qq = q as i64;
        let jac = LaurentPoly::monomial(base, qq - 1, R::from_i64(base, qq));
        TorusDifferential { residue: self.residue.mul_int(qq), form: self.form.pullback_power(qq).mul(&jac) }
    }
}

/// `laurent + log·LOG`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColemanFunction<R: Ring> {
    pub laurent: LaurentPoly<R>,
    pub log: R,
}

impl<R: Ring> ColemanFunction<R> {
    pub fn log_symbol(base: &R::Ctx) -> Self {
        ColemanFunction { laurent: LaurentPoly::zero(base), log: R::one(base) }
    }

    pub fn d(&self) -> TorusDifferential<R> {
        TorusDifferential { residue: self.log.clone(), form: self.laurent.derivative() }
    }

    pub fn pullback(&self, q: u64) -> Self {
        ColemanFunction { laurent: self.laurent.pullback_power(q as i64), log: self.log.mul_int(q as i64) }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        ColemanFunction { laurent: self.laurent.add(&rhs.laurent), log: self.log.add(&rhs.log) }
    }

    pub fn scale(&self, a: &R) -> Self {
        ColemanFunction { laurent: self.laurent.scale(a), log: self.log.mul(a) }
    }

    pub fn has_log(&self) -> bool {
        !self.log.is_zero()
    }
}

/// Frobenius `T ↦ T^q` with an annihilating polynomial `P` (ascending
/// rational coefficients) having no root of unity as a root.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSpec {
    q: u64,
    poly: Vec<Q>,
}

impl FrobeniusSpec {
    pub fn new(q: u64, poly: Vec<Q>) -> Result<Self> {
        if q < 2 {
            return Err(KernelError::Domain(format!("Frobenius degree q = {q} must be at least 2")));
        }
        let poly = poly::trim(poly);
        let deg = poly.len().saturating_sub(1) as u64;
        if deg == 0 {
            return Err(KernelError::Domain("P must have positive degree".into()));
        }
        // φ(m) ≤ deg forces m ≤ 2 deg²
        for m in 1..=2 * deg * deg + 2 {
            if modular::euler_phi(m) > deg {
                continue;
            }
            let phi_m: Vec<Q> = poly::cyclotomic_int(m).iter().map(|c| Q::from_int(&(), c)).collect();
            let (_, rem) = poly::divrem_monic(&(), &poly, &phi_m);
            if rem.iter().all(Ring::is_zero) {
                return Err(KernelError::Domain(format!("P has a primitive {m}-th root of unity as a root")));
            }
        }
        Ok(FrobeniusSpec { q, poly })
    }

    /// `P(X) = X - q`, the torus case.
    pub fn torus(q: u64) -> Result<Self> {
        Self::new(q, vec![Q::int(-(q as i64)), Q::int(1)])
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn poly(&self) -> &[Q] {
        &self.poly
    }

    fn coefficients<R: Ring>(&self, base: &R::Ctx) -> Result<Vec<R>> {
        Ok(self.poly.iter().map(|c| R::from_rational(base, &c.0)).collect::<Result<Vec<_>, _>>()?)
    }

    /// `P(φ*) ω`.
    pub fn apply_to_form<R: Ring>(&self, omega: &TorusDifferential<R>) -> Result<TorusDifferential<R>> {
        let base = omega.form.base_ctx().clone();
        let mut acc = TorusDifferential::dlog(&base, R::zero(&base));
        let mut power = omega.clone();
        for a in self.coefficients::<R>(&base)? {
            acc = acc.add(&power.scale(&a));
            power = power.pullback(self.q);
        }
        Ok(acc)
    }

    /// `P(φ*) F`.
    pub fn apply_to_function<R: Ring>(&self, f: &ColemanFunction<R>) -> Result<ColemanFunction<R>> {
        let base = f.laurent.base_ctx().clone();
        let mut acc = ColemanFunction { laurent: LaurentPoly::zero(&base), log: R::zero(&base) };
        let mut power = f.clone();
        for a in self.coefficients::<R>(&base)? {
            acc = acc.add(&power.scale(&a));
            power = power.pullback(self.q);
        }
        Ok(acc)
    }
}

/// Result of the properness test; `witness` is a Laurent `g` with
/// `P(φ*)ω = dg` when the form is proper.
#[derive(Debug, Clone, PartialEq)]
pub struct Properness<R: Ring> {
    pub proper: bool,
    pub witness: Option<LaurentPoly<R>>,
}

pub fn is_frobenius_proper<R: Ring>(omega: &TorusDifferential<R>, spec: &FrobeniusSpec) -> Result<Properness<R>> {
    let image = spec.apply_to_form(omega)?;
    if !image.residue.is_zero() {
        return Ok(Properness { proper: false, witness: None });
    }
    Ok(Properness { proper: true, witness: Some(image.form.antiderivative()?) })
}

/// `F = c·LOG + ∫h` with zero constant, checked to satisfy `dF = ω` and
/// `P(φ*)F` free of `LOG`.
pub fn coleman_primitive<R: Ring>(omega: &TorusDifferential<R>, spec: &FrobeniusSpec) -> Result<ColemanFunction<R>> {
    if !is_frobenius_proper(omega, spec)?.proper {
        return Err(KernelError::Domain("form is not Frobenius-proper for this P".into()));
    }
    let f = ColemanFunction { laurent: omega.form.antiderivative()?, log: omega.residue.clone() };
    if f.d() != *omega {
        return Err(KernelError::Consistency("dF differs from ω".into()));
    }
    if spec.apply_to_function(&f)?.has_log() {
        return Err(KernelError::Consistency("P(φ*)F still carries LOG".into()));
    }
    Ok(f)
}

/// A polynomial on the multiplicative disc in the coordinate `T = 1 + S`.
pub fn disc_to_laurent<R: BaseRing>(phi: &DiscFunction<R>) -> Result<LaurentPoly<R>> {
    if !phi.group().is_multiplicative() {
        return Err(KernelError::Domain("the torus coordinate exists on the multiplicative disc only".into()));
    }
    let base = phi.group().base().clone();
    Ok(LaurentPoly::from_terms(&base, to_dirac(phi.series()).into_iter().enumerate().map(|(u, b)| (u as i64, b))))
}

/// `{"residue": c, "exact": {"exp": coeff}}` for `c·dT/T + h dT`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialJson {
    pub residue: String,
    pub exact: std::collections::BTreeMap<i64, String>,
}

impl<R: BaseRing> TorusDifferential<R> {
    pub fn from_json(ctx: &R::Ctx, j: &DifferentialJson) -> Result<Self> {
        let terms = j.exact.iter().map(|(e, c)| Ok((*e, R::parse(ctx, c)?))).collect::<Result<Vec<_>>>()?;
        Self::new(R::parse(ctx, &j.residue)?, LaurentPoly::from_terms(ctx, terms))
    }
}
