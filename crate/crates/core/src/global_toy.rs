//! A finite-level model of the anticyclotomic distribution algebra and of
//! the universal torus period.
//!
//! The tame part is a finite abelian group `C`; the `p`-adic part is a
//! distribution on `Z_p^×` stored through its Amice transform on the
//! multiplicative disc. CM points are a `C`-torsor `Y`, each carrying a
//! stable disc function, and the period is evaluated at the disc origin.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::modular::lcm;
use crate::arith::{sum, BaseRing, QuotCtx, QuotElem, Ring, TruncatedSeries};
use crate::error::{KernelError, Result};
use crate::lubin_tate::FormalGroupLaw;
use crate::mellin::characters::{value_ring_order, PsiSystem, UnitChar};
use crate::mellin::{self, from_dirac, to_dirac, DiscFunction};

/// `Π Z/n_i`, elements and characters both written as exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelian {
    pub invariants: Vec<u64>,
}

impl FiniteAbelian {
    pub fn new(invariants: Vec<u64>) -> Result<Self> {
        if invariants.contains(&0) {
            return Err(KernelError::Malformed("invariant factors must be positive".into()));
        }
        Ok(FiniteAbelian { invariants })
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariants.iter().fold(1, |a, &n| lcm(a, n))
    }

    /// All elements in mixed-radix order (first coordinate fastest).
    pub fn elements(&self) -> Vec<Vec<u64>> {
        (0..self.order())
            .map(|mut i| {
                self.invariants
                    .iter()
                    .map(|&n| {
                        let d = i % n;
                        i /= n;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    pub fn normalize(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.invariants.len() {
            return Err(KernelError::Malformed(format!("element {x:?} has the wrong rank")));
        }
        Ok(x.iter().zip(&self.invariants).map(|(a, n)| a % n).collect())
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.invariants).map(|((x, y), n)| (x + y) % n).collect()
    }

    /// `χ(x) = ζ_E^{pairing}`, `E` the exponent.
    pub fn pairing(&self, chi: &[u64], x: &[u64]) -> i64 {
        let e = self.exponent();
        let s: u64 = chi.iter().zip(x).zip(&self.invariants).map(|((c, x), n)| c * x % n * (e / n)).sum();
        (s % e) as i64
    }
}

/// A character `χ_tame · χ_p⟨k⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyCharacter {
    pub tame: Vec<u64>,
    pub chi_p: UnitChar,
    pub k: u32,
}

/// Cyclotomic ring holding `χ_tame`, `χ_p` and `ψ` values.
pub fn period_ring<R: BaseRing>(base: &R::Ctx, tame: &FiniteAbelian, chi_p: &UnitChar) -> QuotCtx<R> {
    let n = chi_p.primitive().conductor();
    let m = lcm(lcm(tame.exponent(), value_ring_order(chi_p.l(), n)), chi_p.primitive().value_order());
    QuotCtx::cyclotomic(base, m)
}

/// Distributions on `C × Z_p^×`, stored per character of `C` as Amice
/// series on the multiplicative disc.
#[derive(Debug, Clone, PartialEq)]
pub struct AnticycDistribution<R: BaseRing> {
    tame: FiniteAbelian,
    group: Arc<FormalGroupLaw<R>>,
    ring: QuotCtx<R>,
    /// Indexed like `tame.elements()`, read as characters.
    components: Vec<TruncatedSeries<QuotElem<R>>>,
}

/// `bw`: `[u] ↦ ω(u)[u]`, placed diagonally in every tame component.
pub fn weight_map_bw<R: BaseRing>(
    d: &DiscFunction<R>,
    omega: &UnitChar,
    tame: &FiniteAbelian,
    ring: &QuotCtx<R>,
) -> Result<AnticycDistribution<R>> {
    if !d.group().is_multiplicative() {
        return Err(KernelError::Domain("distributions live on the multiplicative disc".into()));
    }
    let dirac = to_dirac(d.series());
    let twisted = dirac
        .iter()
        .enumerate()
        .map(|(u, b)| Ok(omega.value::<QuotElem<R>>(ring, u as i64)?.mul(&ring.embed(b.clone()))))
        .collect::<Result<Vec<_>>>()?;
    let series = from_dirac(ring, d.series().trunc(), &twisted);
    Ok(AnticycDistribution {
        tame: tame.clone(),
        group: Arc::clone(d.group()),
        ring: ring.clone(),
        components: vec![series; tame.order() as usize],
    })
}

impl<R: BaseRing> AnticycDistribution<R> {
    pub fn ring(&self) -> &QuotCtx<R> {
        &self.ring
    }

    fn component_index(&self, tame: &[u64]) -> Result<usize> {
        let t = self.tame.normalize(tame)?;
        Ok(self.tame.elements().iter().position(|e| *e == t).expect("normalized elements are listed"))
    }

    /// `∫ χ dμ = Σ_u b_u^{(χ_tame)} χ_p(u) u^k`, reading one component only.
    pub fn eval(&self, chi: &ToyCharacter) -> Result<QuotElem<R>> {
        let comp = &self.components[self.component_index(&chi.tame)?];
        let terms = to_dirac(comp)
            .into_iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .map(|(u, b)| {
                let c: QuotElem<R> = chi.chi_p.value(&self.ring, u as i64)?;
                Ok(b.mul(&c).mul_int((u as i64).pow(chi.k)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(sum(&self.ring, terms))
    }

    /// Group-algebra product: componentwise, with `[u] * [v] = [uv]`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.tame != other.tame || self.ring != other.ring || *self.group != *other.group {
            return Err(KernelError::Malformed("distributions over different groups".into()));
        }
        let d = self.group.trunc();
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| {
                let (da, db) = (to_dirac(a), to_dirac(b));
                let mut out = vec![QuotElem::zero(&self.ring); d + 1];
                for (u, x) in da.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (v, y) in db.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        let w = u * v;
                        if w > d {
                            return Err(KernelError::Domain(format!("Dirac [{w}] exceeds truncation {d}")));
                        }
                        out[w] = out[w].add(&x.mul(y));
                    }
                }
                Ok(from_dirac(&self.ring, d, &out))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AnticycDistribution { components, ..self.clone() })
    }
}

/// CM points `Y`, a `C`-torsor, each with a stable function on its disc.
#[derive(Debug, Clone, PartialEq)]
pub struct CMCosetModel<R: BaseRing> {
    tame: FiniteAbelian,
    ids: Vec<String>,
    /// `y = labels[y] · y_0`.
    labels: Vec<Vec<u64>>,
    phi: Vec<DiscFunction<R>>,
}

impl<R: BaseRing> CMCosetModel<R> {
    pub fn new(tame: FiniteAbelian, ids: Vec<String>, labels: Vec<Vec<u64>>, phi: Vec<DiscFunction<R>>) -> Result<Self> {
        let n = tame.order() as usize;
        if ids.len() != n || labels.len() != n || phi.len() != n {
            return Err(KernelError::Malformed(format!("|Y| must equal |C| = {n}")));
        }
        let labels = labels.iter().map(|l| tame.normalize(l)).collect::<Result<Vec<_>>>()?;
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(KernelError::Malformed("C does not act simply transitively on the points".into()));
        }
        for (id, f) in ids.iter().zip(&phi) {
            if !mellin::is_stable(f)?.stable {
                return Err(KernelError::NotStable(format!("function at point {id}")));
            }
        }
        Ok(CMCosetModel { tame, ids, labels, phi })
    }

    pub fn tame(&self) -> &FiniteAbelian {
        &self.tame
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn labels(&self) -> &[Vec<u64>] {
        &self.labels
    }

    pub fn functions(&self) -> &[DiscFunction<R>] {
        &self.phi
    }

    /// The model with `φ'_y = φ_{c·y}`.
    pub fn translate(&self, c: &[u64]) -> Result<Self> {
        let c = self.tame.normalize(c)?;
        let phi = self
            .labels
            .iter()
            .map(|l| {
                let target = self.tame.add(&c, l);
                let j = self.labels.iter().position(|x| *x == target).expect("torsor");
                self.phi[j].clone()
            })
            .collect();
        Ok(CMCosetModel { phi, ..self.clone() })
    }

    fn average<F>(&self, chi: &ToyCharacter, ring: &QuotCtx<R>, mut at_point: F) -> Result<QuotElem<R>>
    where
        F: FnMut(&DiscFunction<R>) -> Result<QuotElem<R>>,
    {
        let e = self.tame.exponent();
        let tame = self.tame.normalize(&chi.tame)?;
        let mut acc = QuotElem::zero(ring);
        for (label, f) in self.labels.iter().zip(&self.phi) {
            let twist = ring.zeta_pow(self.tame.pairing(&tame, label) * (ring.cyclotomic_order().unwrap() / e) as i64);
            acc = acc.add(&twist.mul(&at_point(f)?));
        }
        Ok(acc.div_int(&BigInt::from(self.tame.order()))?)
    }
}

/// `|Y|^{-1} Σ_y χ_tame(y) · M(φ_y)(χ_p⟨k⟩)|_{S=0}`.
pub fn universal_period_eval<R: BaseRing>(
    model: &CMCosetModel<R>,
    chi: &ToyCharacter,
    psi: &PsiSystem,
) -> Result<QuotElem<R>> {
    let Some(first) = model.phi.first() else {
        return Err(KernelError::Malformed("empty model".into()));
    };
    let ring = period_ring::<R>(first.group().base(), &model.tame, &chi.chi_p);
    model.average(chi, &ring, |f| {
        if chi.chi_p.is_trivial() {
            Ok(ring.embed(mellin::mellin_at_weight(f, chi.k)?.at_origin()))
        } else {
            Ok(mellin::mellin_at_character(f, &chi.chi_p, chi.k, psi)?.at_origin().embed_cyclotomic(&ring)?)
        }
    })
}

/// Weight-0 period two ways: directly, and as `M(g_y)(χ_p⟨1⟩)|_{S=0}` with
/// `g_y` the stable primitive of `φ_y`. Returns the value and the agreement flag.
pub fn weight0_waldspurger_check<R: BaseRing>(
    model: &CMCosetModel<R>,
    chi: &ToyCharacter,
    psi: &PsiSystem,
) -> Result<(QuotElem<R>, bool)> {
    if chi.k != 0 {
        return Err(KernelError::Domain("the weight-0 check needs k = 0".into()));
    }
    let direct = universal_period_eval(model, chi, psi)?;
    let ring = direct.ring().clone();
    let primitive = model.average(chi, &ring, |f| {
        let g = mellin::stable_primitive(f)?;
        Ok(mellin::mellin_at_character(&g, &chi.chi_p, 1, psi)?.at_origin().embed_cyclotomic(&ring)?)
    })?;
    if direct != primitive {
        return Err(KernelError::Consistency(format!(
            "weight-0 period {direct} differs from the primitive route {primitive}"
        )));
    }
    Ok((direct, true))
}

/// `P₊(χ) P₋(χ) / Q(χ)`.
pub fn toy_l_ratio_eval<V: Ring>(p_plus: &V, p_minus: &V, q: &V) -> Result<V> {
    if q.is_zero() {
        return Err(KernelError::ExcludedCharacter("Q(χ) = 0".into()));
    }
    Ok(p_plus.mul(p_minus).mul(&q.try_inv()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Q;

    fn dirac_model(p: u64, us: &[usize]) -> CMCosetModel<Q> {
        let g = Arc::new(FormalGroupLaw::multiplicative(&(), p, 8).unwrap());
        let tame = FiniteAbelian::new(vec![us.len() as u64]).unwrap();
        let phi = us
            .iter()
            .map(|&u| {
                let mut b = vec![Q::int(0); 9];
                b[u] = Q::int(1);
                DiscFunction::from_dirac(&g, &b)
            })
            .collect();
        let ids = (0..us.len()).map(|i| format!("y{i}")).collect();
        let labels = (0..us.len() as u64).map(|i| vec![i]).collect();
        CMCosetModel::new(tame, ids, labels, phi).unwrap()
    }

    fn value(x: &QuotElem<Q>) -> Q {
        x.to_base().expect("rational value")
    }

    #[test]
    fn universal_period_examples() {
        let model = dirac_model(3, &[1, 2]);
        let psi = PsiSystem::new(3, 2);
        let triv = UnitChar::trivial(3);
        let chi = ToyCharacter { tame: vec![1], chi_p: triv.clone(), k: 2 };
        assert_eq!(value(&universal_period_eval(&model, &chi, &psi).unwrap()), Q::new(-3, 2));
        let chi = ToyCharacter { tame: vec![0], chi_p: triv, k: 0 };
        assert_eq!(value(&universal_period_eval(&model, &chi, &psi).unwrap()), Q::int(1));
        let quad = UnitChar::quadratic(3).unwrap();
        let chi = ToyCharacter { tame: vec![1], chi_p: quad, k: 0 };
        assert_eq!(value(&universal_period_eval(&model, &chi, &psi).unwrap()), Q::int(1));
    }

    #[test]
    fn weight0_examples() {
        let psi = PsiSystem::new(3, 2);
        let single = dirac_model(3, &[1]);
        let chi = ToyCharacter { tame: vec![0], chi_p: UnitChar::trivial(3), k: 0 };
        let (v, ok) = weight0_waldspurger_check(&single, &chi, &psi).unwrap();
        assert!(ok);
        assert_eq!(value(&v), Q::int(1));
        let model = dirac_model(3, &[1, 2]);
        let chi = ToyCharacter { tame: vec![1], chi_p: UnitChar::quadratic(3).unwrap(), k: 0 };
        assert!(weight0_waldspurger_check(&model, &chi, &psi).unwrap().1);
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(toy_l_ratio_eval(&Q::int(1), &Q::int(1), &Q::int(1)).unwrap(), Q::int(1));
        let (a, b, q) = (Q::new(-3, 2), Q::new(-3, 2), Q::new(1, 2));
        assert_eq!(toy_l_ratio_eval(&a, &b, &q).unwrap(), Q::new(9, 2));
        let seven = Q::int(7);
        assert_eq!(toy_l_ratio_eval(&a.mul(&seven), &b, &q.mul(&seven)).unwrap(), Q::new(9, 2));
        assert!(matches!(toy_l_ratio_eval(&a, &b, &Q::int(0)), Err(KernelError::ExcludedCharacter(_))));
    }

    #[test]
    fn weight_map_examples() {
        let g = Arc::new(FormalGroupLaw::multiplicative(&(), 5, 12).unwrap());
        let tame = FiniteAbelian::new(vec![2]).unwrap();
        let omega = UnitChar::quadratic(5).unwrap();
        let chi_p = UnitChar::all_of_level(5, 1).into_iter().find(|c| c.order() == 4).unwrap();
        let ring = period_ring::<Q>(&(), &tame, &chi_p);
        let dirac = |u: usize| {
            let mut b = vec![Q::int(0); 13];
            b[u] = Q::int(1);
            DiscFunction::from_dirac(&g, &b)
        };
        let one = weight_map_bw(&dirac(1), &omega, &tame, &ring).unwrap();
        for t in 0..2 {
            let chi = ToyCharacter { tame: vec![t], chi_p: chi_p.clone(), k: 3 };
            assert_eq!(one.eval(&chi).unwrap(), QuotElem::one(&ring));
        }
        let chi = ToyCharacter { tame: vec![1], chi_p: chi_p.clone(), k: 2 };
        let d2 = weight_map_bw(&dirac(2), &omega, &tame, &ring).unwrap();
        let expected = omega
            .value::<QuotElem<Q>>(&ring, 2)
            .unwrap()
            .mul(&chi_p.value::<QuotElem<Q>>(&ring, 2).unwrap())
            .mul_int(4);
        assert_eq!(d2.eval(&chi).unwrap(), expected);
        let d3 = weight_map_bw(&dirac(3), &omega, &tame, &ring).unwrap();
        let both = weight_map_bw(&dirac(2).add(&dirac(3)), &omega, &tame, &ring).unwrap();
        assert_eq!(both.eval(&chi).unwrap(), d2.eval(&chi).unwrap().add(&d3.eval(&chi).unwrap()));
        let prod = d2.convolve(&d3).unwrap();
        assert_eq!(prod.eval(&chi).unwrap(), d2.eval(&chi).unwrap().mul(&d3.eval(&chi).unwrap()));
    }
}
