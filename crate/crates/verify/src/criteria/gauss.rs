//! Criterion 4: `τ(χ, ψ) τ(χ^{-1}, ψ^{-1}) = χ(-1) l^n` for every nontrivial
//! character of `(Z/l)^×` and `(Z/l^2)^×` at its conductor `l^n`, and the
//! quadratic values `τ² = 5` (`l = 5`), `τ² = -3` (`l = 3`).
//!
//! The relation is checked as stated. Alongside it the run counts the two
//! identities that do hold for every character: the same product equals
//! `l^n`, and `τ(χ, ψ) τ(χ^{-1}, ψ) = χ(-1) l^n`. The stated form therefore
//! fails exactly on odd characters.

use lt_kernel::arith::{QuotElem, Ring};
use lt_kernel::local_factors::{gauss_sum, MultChar};
use lt_kernel::mellin::{character_value_ring, PsiSystem, UnitChar};
use num_bigint::BigInt;

use super::{guarded, Backend};
use crate::Trace;

pub fn norm_relation<R: Backend>(ctx: &R::Ctx, l: u64, _seed: u64) -> Trace<R> {
    guarded(|t| {
        let mut total = 0;
        let mut literal_fail = 0;
        let mut odd = 0;
        let mut abs_ok = 0;
        let mut same_psi_ok = 0;
        for level in 1..=2 {
            let ring = character_value_ring::<R>(ctx, l, level);
            let psi = PsiSystem::new(l, level);
            for chi in UnitChar::all_of_level(l, level) {
                let prim = chi.primitive();
                let n = prim.conductor();
                if n == 0 {
                    continue;
                }
                total += 1;
                let one = QuotElem::one(&ring);
                let mc = MultChar::new(prim.clone(), one.clone());
                let mc_inv = MultChar::new(prim.inverse(), one.clone());
                let tau: QuotElem<R> = gauss_sum(&ring, &mc, &psi)?;
                let tau_dual: QuotElem<R> = gauss_sum(&ring, &mc_inv, &psi.inverse())?;
                let tau_same: QuotElem<R> = gauss_sum(&ring, &mc_inv, &psi)?;
                let ln = ring.embed(R::from_int(ctx, &BigInt::from(l).pow(n)));
                let target = ln.mul_int(prim.parity());
                if tau.mul(&tau_dual) != target {
                    literal_fail += 1;
                }
                odd += usize::from(prim.parity() == -1);
                abs_ok += usize::from(tau.mul(&tau_dual) == ln);
                same_psi_ok += usize::from(tau.mul(&tau_same) == target);
                t.record_quot(&tau, 0);
            }
        }
        t.check(abs_ok == total && same_psi_ok == total, || {
            format!("control identities broken: |τ|² = l^n on {abs_ok}/{total}, same-ψ on {same_psi_ok}/{total}")
        });
        let quad = quadratic_square::<R>(ctx, l)?;
        t.record_quot(&quad, 0);
        let expected = match l {
            5 => Some(5),
            3 => Some(-3),
            _ => None,
        };
        let quad_ok = expected.is_none_or(|e| quad == QuotElem::one(quad.ring()).mul_int(e));
        t.check(quad_ok, || format!("quadratic τ² = {quad}"));
        if literal_fail > 0 {
            t.fail(format!(
                "stated relation fails on {literal_fail}/{total} characters ({odd} odd); \
                 τ(χ,ψ)τ(χ⁻¹,ψ⁻¹) = l^n on {abs_ok}/{total}, τ(χ,ψ)τ(χ⁻¹,ψ) = χ(-1)l^n on {same_psi_ok}/{total}; \
                 quadratic τ² {}",
                if quad_ok { "exact" } else { "wrong" }
            ));
        } else if t.pass {
            t.detail = format!("{total} characters, quadratic τ² exact");
        }
        Ok(())
    })
}

/// `τ(χ_quad)²` at level one.
fn quadratic_square<R: Backend>(ctx: &R::Ctx, l: u64) -> lt_kernel::Result<QuotElem<R>> {
    let ring = character_value_ring::<R>(ctx, l, 1);
    let psi = PsiSystem::new(l, 1);
    let quad = MultChar::new(UnitChar::quadratic(l)?, QuotElem::one(&ring));
    let tau: QuotElem<R> = gauss_sum(&ring, &quad, &psi)?;
    Ok(tau.mul(&tau))
}
