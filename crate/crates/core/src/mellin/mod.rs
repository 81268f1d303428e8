//! Stable and admissible functions on the Lubin-Tate disc and the local
//! Mellin transform.
//!
//! A disc function is stable when the sum of its translates over `Ker[p]`
//! vanishes. Its Mellin transform evaluated at `t ↦ t^k` is `Θ^k φ`, at
//! `t ↦ t^{-1}` it is the unique stable primitive, and at `χ⟨k⟩` it is the
//! Gauss-sum weighted average of translates computed by
//! [`mellin_at_character`].
//!
//! Everything that twists by a character or divides by `p` is restricted to
//! the multiplicative model, where disc functions are polynomials and every
//! identity holds exactly.

pub mod characters;
pub mod disc;

use num_bigint::BigInt;

use crate::arith::mpoly::BiSeries;
use crate::arith::quotient::CyclicAccumulator;
use crate::arith::{modular, sum, BaseRing, QuotCtx, QuotElem, Ring, TruncatedSeries};
use crate::error::{KernelError, Result};

pub use characters::{PsiSystem, UnitChar};
pub use disc::{from_dirac, to_dirac, DiscFunction};

/// Result of [`is_stable`]: the flag and `W = Σ_{z ∈ Ker[p]} φ(F(S, z))`.
#[derive(Debug, Clone)]
pub struct Stability<R: BaseRing> {
    pub stable: bool,
    pub witness: TruncatedSeries<R>,
    /// Outside the multiplicative model `W_j` is only known modulo
    /// `p^{window[j]}`; `None` when the witness is exact.
    pub window: Option<Vec<u32>>,
}

fn require_multiplicative<R: BaseRing>(phi: &DiscFunction<R>, what: &str) -> Result<()> {
    if phi.group().is_multiplicative() {
        Ok(())
    } else {
        Err(KernelError::Domain(format!("{what} is implemented for the multiplicative model only")))
    }
}

/// Stability test with its witness sum.
///
/// The nonzero points of `Ker[p]` are the conjugates of the generator `t` of
/// the level-one torsion ring, so `W = φ + Tr(φ(F(S, t)))`.
pub fn is_stable<R: BaseRing>(phi: &DiscFunction<R>) -> Result<Stability<R>> {
    let group = phi.group();
    let tor = group.torsion_ring(1)?;
    let ring = tor.ring();
    let lifted = phi.series().map(ring, |c| ring.embed(c.clone()));
    let moved = group.translate(&lifted, &tor.point());
    let trace = moved.map(group.base(), QuotElem::trace);
    let witness = phi.series().add(&trace);
    if group.is_multiplicative() {
        return Ok(Stability { stable: witness.is_zero(), witness, window: None });
    }
    // coefficient j of F(S, t) is known mod t^{D+1-j}; Tr(t^m) ⊂ p^{⌈m/e⌉} (tame, e = p-1)
    let d = witness.trunc();
    let e = (group.p() - 1) as usize;
    let window: Vec<u32> = (0..=d).map(|j| (d + 1 - j).div_ceil(e) as u32).collect();
    let stable = witness
        .coeffs()
        .iter()
        .zip(&window)
        .all(|(w, &need)| w.p_valuation(group.p()).is_none_or(|v| v >= need as i64));
    Ok(Stability { stable, witness, window: Some(window) })
}

fn require_stable<R: BaseRing>(phi: &DiscFunction<R>) -> Result<()> {
    let st = is_stable(phi)?;
    if st.stable {
        Ok(())
    } else {
        Err(KernelError::NotStable(format!("witness {}", st.witness)))
    }
}

/// Projection `φ - p^{-1} Σ_z φ(F(S, z))` onto stable functions.
pub fn stabilize<R: BaseRing>(phi: &DiscFunction<R>) -> Result<DiscFunction<R>> {
    require_multiplicative(phi, "stabilize")?;
    let w = is_stable(phi)?.witness;
    let p = BigInt::from(phi.group().p());
    Ok(phi.with_series(phi.series().sub(&w.div_int(&p)?)))
}

/// `φ(F(S, ν(1/p^n))) = ψ(1/p^n) φ`, checked on the generator of `p^{-n}Z/Z`.
pub fn is_admissible<R: BaseRing>(phi: &DiscFunction<R>, n: u32, psi: &PsiSystem) -> Result<bool> {
    require_multiplicative(phi, "admissibility")?;
    require_stable(phi)?;
    if n == 0 {
        return Ok(true);
    }
    psi.check_level(n)?;
    let group = phi.group();
    let ring = QuotCtx::<R>::cyclotomic(group.base(), modular::ipow(group.p(), n));
    let zeta: QuotElem<R> = psi.value(&ring, 1, n)?;
    let t = zeta.sub(&QuotElem::one(&ring));
    let lifted = phi.series().map(&ring, |c| ring.embed(c.clone()));
    let moved = group.translate(&lifted, &t);
    Ok(moved == lifted.scale(&zeta))
}

/// Both routes of the weight-`k` Mellin transform.
#[derive(Debug, Clone)]
pub struct WeightRoutes<R: BaseRing> {
    /// `[Θ_Y^k φ(F(X,Y))]_{Y=0}`, known mod `X^{D-k+1}`.
    pub route_a: TruncatedSeries<R>,
    /// `Θ^k φ(X)`.
    pub route_b: DiscFunction<R>,
}

/// Compute both routes without comparing them.
pub fn weight_routes<R: BaseRing>(phi: &DiscFunction<R>, k: u32) -> Result<WeightRoutes<R>> {
    let group = phi.group();
    let d = phi.series().trunc();
    if k as usize > d {
        return Err(KernelError::Domain(format!("weight {k} exceeds truncation {d}")));
    }
    let law = group.law().truncate(d);
    // Y^0 after k rounds of ∂_Y then ·v(Y) only sees Y-degrees ≤ k
    let y_max = k as usize;
    let mut biv = BiSeries::compose_into_y_bounded(phi.series(), &law, y_max);
    let v = BiSeries::from_y(&group.vector_field().truncate(d), d);
    for _ in 0..k {
        biv = biv.d_dy().mul_y_bounded(&v, y_max);
    }
    let route_a = biv.at_y0().truncate(d - k as usize);
    Ok(WeightRoutes { route_a, route_b: phi.theta_pow(k) })
}

/// `M(φ)(⟨k⟩)`: checks that the bivariate route agrees with `Θ^k φ` modulo
/// `X^{D-k+1}` and returns `Θ^k φ`.
pub fn mellin_at_weight<R: BaseRing>(phi: &DiscFunction<R>, k: u32) -> Result<DiscFunction<R>> {
    require_stable(phi)?;
    let routes = weight_routes(phi, k)?;
    let window = routes.route_a.trunc();
    if routes.route_b.series().truncate(window) != routes.route_a {
        return Err(KernelError::Consistency(format!(
            "weight {k}: bivariate route {} differs from Θ^k route {}",
            routes.route_a,
            routes.route_b.series()
        )));
    }
    Ok(routes.route_b)
}

/// `M(φ)(⟨-1⟩)`: the unique stable `g` with `Θg = φ`.
///
/// A stable polynomial is divisible by `1 + S`; `g_0 = ∫ φ/(1+S)` is a
/// primitive, and the constant making it stable is `-p^{-1} Σ_z g_0(z)`.
pub fn stable_primitive<R: BaseRing>(phi: &DiscFunction<R>) -> Result<DiscFunction<R>> {
    require_multiplicative(phi, "stable_primitive")?;
    let st = is_stable(phi)?;
    if !st.stable {
        return Err(KernelError::Domain(format!(
            "no stable primitive: input is not stable (witness {})",
            st.witness
        )));
    }
    let base = phi.group().base().clone();
    let d = phi.series().trunc();
    // synthetic division by (1 + S)
    let a = phi.series().coeffs();
    let mut q = vec![R::zero(&base); d];
    let mut carry = R::zero(&base);
    for j in (1..=d).rev() {
        let c = a[j].sub(&carry);
        q[j - 1] = c.clone();
        carry = c;
    }
    if !a[0].sub(&carry).is_zero() {
        return Err(KernelError::Consistency("stable polynomial not divisible by 1+S".into()));
    }
    let quotient = TruncatedSeries::new(&base, d, q);
    let g0 = quotient.integrate()?.truncate(d);
    let g0 = phi.with_series(g0);
    let w = is_stable(&g0)?.witness;
    if w.coeffs()[1..].iter().any(|c| !c.is_zero()) {
        return Err(KernelError::Consistency(format!("translate sum of a primitive is not constant: {w}")));
    }
    let c = w.coeff(0).div_int(&BigInt::from(phi.group().p()))?;
    let g = g0.series().sub(&TruncatedSeries::constant(&base, d, c));
    Ok(phi.with_series(g))
}

/// Cyclotomic ring `R[ζ_M]` used for the level-`n` character sums of `p`.
pub fn character_value_ring<R: BaseRing>(base: &R::Ctx, p: u64, n: u32) -> QuotCtx<R> {
    QuotCtx::cyclotomic(base, characters::value_ring_order(p, n))
}

/// `M(φ)(χ⟨k⟩) = p^{-n} Σ_{x ∈ p^{-n}Z/Z} G(x) · (Θ^k φ)(F(S, ν(x)))` with
/// `G(x) = Σ_{u ∈ (Z/p^n)^×} χ(u) ψ(-xu)`, `p^n` the conductor of `χ`.
///
/// The translate by `ν(c/p^n) = ζ^c - 1` acts on the Dirac coefficient `b_u`
/// of `Θ^kφ` by `ζ^{cu}`; the double sum is accumulated in `R[Z/M]` and
/// reduced once per `u`.
pub fn mellin_at_character<R: BaseRing>(
    phi: &DiscFunction<R>,
    chi: &UnitChar,
    k: u32,
    psi: &PsiSystem,
) -> Result<DiscFunction<R, QuotElem<R>>> {
    require_multiplicative(phi, "mellin_at_character")?;
    require_stable(phi)?;
    let group = phi.group();
    let p = group.p();
    if chi.l() != p {
        return Err(KernelError::Conductor(format!("character of (Z/{})^× on a {p}-adic disc", chi.l())));
    }
    let chi = chi.primitive();
    let n = chi.conductor();
    psi.check_level(n)?;
    let base = group.base().clone();
    let m = characters::value_ring_order(p, n);
    let ring = character_value_ring::<R>(&base, p, n);
    if n == 0 {
        return Ok(mellin_at_weight(phi, k)?.embed_into(&ring));
    }
    let pn = modular::ipow(p, n) as i64;
    let psi_step = (m as i64 / pn) * psi.sign;
    let chi_step = (m / chi.value_order()) as i64;
    let one = R::one(&base);
    // G(c) for c mod p^n
    let gauss: Vec<CyclicAccumulator<R>> = (0..pn)
        .map(|c| {
            let mut g = CyclicAccumulator::new(&base, m);
            for u in 0..pn {
                if let Some(e) = chi.exp_at(u) {
                    g.add_term(e as i64 * chi_step - c * u * psi_step, &one);
                }
            }
            g
        })
        .collect();
    let target = phi.theta_pow(k);
    let dirac = to_dirac(target.series());
    let pn_big = BigInt::from(pn);
    let weights = dirac
        .iter()
        .enumerate()
        .map(|(u, b)| {
            if b.is_zero() {
                return Ok(QuotElem::zero(&ring));
            }
            let mut acc = CyclicAccumulator::new(&base, m);
            for (c, g) in gauss.iter().enumerate() {
                acc.add_scaled(c as i64 * u as i64 * psi_step, &one, g);
            }
            let w = acc.reduce(&ring).div_int(&pn_big)?;
            Ok(w.mul(&ring.embed(b.clone())))
        })
        .collect::<Result<Vec<QuotElem<R>>>>()?;
    let series = from_dirac(&ring, target.series().trunc(), &weights);
    Ok(DiscFunction::new(group, series))
}

/// The base-ring series of a Mellin value with rational-cyclotomic coefficients,
/// if every coefficient lies in the base ring.
pub fn to_base_series<R: BaseRing>(f: &DiscFunction<R, QuotElem<R>>) -> Option<DiscFunction<R>> {
    let base = f.group().base().clone();
    let coeffs = f.series().coeffs().iter().map(QuotElem::to_base).collect::<Option<Vec<R>>>()?;
    Some(DiscFunction::new(f.group(), TruncatedSeries::new(&base, f.series().trunc(), coeffs)))
}

/// `Σ_c G(c) translate_c(φ)` computed with genuine torsion translations in
/// `R[ζ_M]`; exposed so tests can compare it with the Dirac route.
pub fn mellin_at_character_by_translation<R: BaseRing>(
    phi: &DiscFunction<R>,
    chi: &UnitChar,
    k: u32,
    psi: &PsiSystem,
) -> Result<DiscFunction<R, QuotElem<R>>> {
    require_multiplicative(phi, "mellin_at_character")?;
    let group = phi.group();
    let p = group.p();
    let chi = chi.primitive();
    // the trivial character is summed at level 1, where it is the indicator of the units
    let n = chi.conductor().max(1);
    psi.check_level(n)?;
    let base = group.base().clone();
    let ring = character_value_ring::<R>(&base, p, n);
    let pn = modular::ipow(p, n) as i64;
    let target = phi.theta_pow(k).embed_into::<QuotElem<R>>(&ring);
    let mut total = TruncatedSeries::zero(&ring, target.series().trunc());
    for c in 0..pn {
        let g = sum(
            &ring,
            (0..pn).map(|u| -> QuotElem<R> {
                let chi_u: QuotElem<R> = chi.value(&ring, u).expect("values live in the value ring");
                let psi_v: QuotElem<R> = psi.value(&ring, -c * u, n).expect("level checked");
                chi_u.mul(&psi_v)
            }),
        );
        let point: QuotElem<R> = psi.value::<QuotElem<R>>(&ring, c, n)?.sub(&QuotElem::one(&ring));
        let moved = group.translate(target.series(), &point);
        total = total.add(&moved.scale(&g));
    }
    Ok(DiscFunction::new(group, total.div_int(&BigInt::from(pn))?))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::Q;
    use crate::lubin_tate::FormalGroupLaw;

    fn group(p: u64, d: usize) -> Arc<FormalGroupLaw<Q>> {
        Arc::new(FormalGroupLaw::multiplicative(&(), p, d).unwrap())
    }

    fn dirac(g: &Arc<FormalGroupLaw<Q>>, masses: &[(usize, i64)]) -> DiscFunction<Q> {
        let mut b = vec![Q::int(0); g.trunc() + 1];
        for &(u, c) in masses {
            b[u] = Q::int(c);
        }
        DiscFunction::from_dirac(g, &b)
    }

    #[test]
    fn stability_examples() {
        let g2 = group(2, 8);
        let one = dirac(&g2, &[(0, 1)]);
        let st = is_stable(&one).unwrap();
        assert!(!st.stable);
        assert_eq!(st.witness, TruncatedSeries::from_ints(&(), 8, &[2]));
        assert!(is_stable(&dirac(&g2, &[(1, 1)])).unwrap().stable);
        let g5 = group(5, 8);
        let u5 = dirac(&g5, &[(5, 1)]);
        let st = is_stable(&u5).unwrap();
        assert!(!st.stable);
        assert_eq!(st.witness, u5.series().mul_int(5));
    }

    #[test]
    fn stabilize_examples() {
        let g3 = group(3, 8);
        let stable = dirac(&g3, &[(1, 2), (4, -1)]);
        assert_eq!(stabilize(&stable).unwrap(), stable);
        assert!(stabilize(&dirac(&g3, &[(0, 1)])).unwrap().is_zero());
        let mixed = dirac(&g3, &[(1, 1), (3, 1)]);
        assert_eq!(stabilize(&mixed).unwrap(), dirac(&g3, &[(1, 1)]));
    }

    #[test]
    fn admissibility_examples() {
        let g3 = group(3, 8);
        let psi = PsiSystem::new(3, 2);
        assert!(is_admissible(&dirac(&g3, &[(2, 1)]), 0, &psi).unwrap());
        assert!(is_admissible(&dirac(&g3, &[(4, 1)]), 1, &psi).unwrap());
        assert!(!is_admissible(&dirac(&g3, &[(2, 1)]), 1, &psi).unwrap());
        assert!(matches!(
            is_admissible(&dirac(&g3, &[(4, 1)]), 3, &psi),
            Err(KernelError::LevelExceeded { .. })
        ));
    }

    #[test]
    fn weight_examples() {
        let g2 = group(2, 10);
        let u1 = dirac(&g2, &[(1, 1)]);
        assert_eq!(mellin_at_weight(&u1, 0).unwrap(), u1);
        assert_eq!(mellin_at_weight(&u1, 3).unwrap(), u1);
        let g3 = group(3, 10);
        let u4 = dirac(&g3, &[(4, 1)]);
        assert_eq!(mellin_at_weight(&u4, 2).unwrap(), dirac(&g3, &[(4, 16)]));
        assert!(matches!(mellin_at_weight(&dirac(&g3, &[(3, 1)]), 1), Err(KernelError::NotStable(_))));
    }

    #[test]
    fn primitive_examples() {
        let g3 = group(3, 10);
        let u1 = dirac(&g3, &[(1, 1)]);
        assert_eq!(stable_primitive(&u1).unwrap(), u1);
        let mut half = vec![Q::int(0); 11];
        half[2] = Q::new(1, 2);
        assert_eq!(stable_primitive(&dirac(&g3, &[(2, 1)])).unwrap(), DiscFunction::from_dirac(&g3, &half));
        assert!(matches!(stable_primitive(&dirac(&g3, &[(0, 1)])), Err(KernelError::Domain(_))));
    }

    #[test]
    fn character_examples() {
        let g3 = group(3, 8);
        let psi = PsiSystem::new(3, 2);
        let quad = UnitChar::quadratic(3).unwrap();
        let m = mellin_at_character(&dirac(&g3, &[(4, 1)]), &quad, 1, &psi).unwrap();
        assert_eq!(to_base_series(&m).unwrap(), dirac(&g3, &[(4, 4)]));
        let m = mellin_at_character(&dirac(&g3, &[(2, 1)]), &quad, 0, &psi).unwrap();
        assert_eq!(to_base_series(&m).unwrap(), dirac(&g3, &[(2, -1)]));
        let m = mellin_at_character(&dirac(&g3, &[(1, 1), (2, 1)]), &quad, 0, &psi).unwrap();
        assert_eq!(to_base_series(&m).unwrap(), dirac(&g3, &[(1, 1), (2, -1)]));
        let triv = UnitChar::trivial(3);
        let m = mellin_at_character(&dirac(&g3, &[(1, 1), (2, 1)]), &triv, 2, &psi).unwrap();
        assert_eq!(to_base_series(&m).unwrap(), dirac(&g3, &[(1, 1), (2, 4)]));
    }

    #[test]
    fn dirac_route_matches_translation_route() {
        let g5 = group(5, 7);
        let psi = PsiSystem::new(5, 1);
        let phi = dirac(&g5, &[(1, 3), (2, -1), (3, 2), (7, 5)]);
        for chi in UnitChar::all_of_level(5, 1) {
            for k in 0..3 {
                let a = mellin_at_character(&phi, &chi, k, &psi).unwrap();
                let b = mellin_at_character_by_translation(&phi, &chi, k, &psi).unwrap();
                let ring = b.coeff_ctx().clone();
                let a = a.series().try_map(&ring, |c| c.embed_cyclotomic(&ring)).unwrap();
                assert_eq!(&a, b.series());
            }
        }
    }
}
