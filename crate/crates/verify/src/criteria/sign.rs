//! Criterion 9: `ε(Π ⊗ χ, ψ)` for principal series `μ¹ ⊕ μ²` against the
//! product of brute-forced abelian ε-factors `(λ(ϖ))^c Σ_u λ(u) ψ(u/l^c)`.
//!
//! Every other pair is made self-dual, `μ²χ = (μ¹χ)^{-1}`, where the sign
//! predicate must read off `λ(-1)` and the forced Hasse invariant.

use lt_kernel::arith::{QuotCtx, QuotElem, Ring};
use lt_kernel::local_factors::{LocalRep, MultChar};
use lt_kernel::mellin::{character_value_ring, PsiSystem};
use lt_kernel::wald_local::saito_tunnell_sign;
use rand::Rng as _;

use super::{guarded, rng, to_unit, Backend};
use crate::oracle::{gauss_sum, GenChar};
use crate::{ledger, Trace};

/// Pairs per prime; three primes give at least 50.
pub const PAIRS: usize = 17;
const LEVEL: u32 = 2;

pub fn epsilon_products<R: Backend>(ctx: &R::Ctx, p: u64, seed: u64) -> Trace<R> {
    guarded(|t| {
        let mut rng = rng(seed);
        let ring = character_value_ring::<R>(ctx, p, LEVEL);
        let psi = PsiSystem::new(p, LEVEL);
        let order = GenChar::new(p, LEVEL, 0).order_of_group();
        let mut self_dual = 0;
        for i in 0..PAIRS {
            let nu1 = GenChar::new(p, LEVEL, rng.gen_range(0..order));
            let chi0 = GenChar::new(p, LEVEL, rng.gen_range(0..order));
            let a1 = unit(&ring, unit_int(&mut rng, p));
            let c = unit(&ring, unit_int(&mut rng, p));
            let dual = i % 2 == 0;
            let (nu2, a2) = if dual {
                (nu1.mul(&chi0).mul(&chi0).inverse(), a1.mul(&c).mul(&c).try_inv()?)
            } else {
                (GenChar::new(p, LEVEL, rng.gen_range(0..order)), unit(&ring, unit_int(&mut rng, p)))
            };
            let rep = LocalRep::Principal(
                MultChar::new(to_unit(&nu1), a1.clone()),
                MultChar::new(to_unit(&nu2), a2.clone()),
            );
            let chi = MultChar::new(to_unit(&chi0), c.clone());
            let got = rep.twisted_epsilon(&ring, &chi, &psi)?;
            let want = oracle_epsilon(&ring, &nu1.mul(&chi0), &a1.mul(&c))
                .mul(&oracle_epsilon(&ring, &nu2.mul(&chi0), &a2.mul(&c)));
            t.check(got == want, || format!("pair {i}: ε = {got}, Gauss-sum product {want}"));
            t.record_quot(&got, ledger::EXACT);
            if dual {
                self_dual += 1;
                let eta = if rng.gen_bool(0.5) { 1 } else { -1 };
                let pred = saito_tunnell_sign(&ring, &rep, &chi, eta, &psi)?;
                let lambda = nu1.mul(&chi0);
                let sign = lambda.parity();
                t.check(pred.sign == sign && pred.hasse == sign * chi0.parity() * eta, || {
                    format!("pair {i}: sign {} hasse {}, expected {sign} and {}", pred.sign, pred.hasse, sign * chi0.parity() * eta)
                });
            }
        }
        if t.pass {
            t.detail = format!("{PAIRS} pairs match, {self_dual} self-dual signs correct");
        }
        Ok(())
    })
}

fn unit_int(rng: &mut impl rand::Rng, p: u64) -> i64 {
    loop {
        let a: i64 = rng.gen_range(-9..=9);
        if a % p as i64 != 0 {
            return a;
        }
    }
}

fn unit<R: Backend>(ring: &QuotCtx<R>, a: i64) -> QuotElem<R> {
    ring.embed(R::from_i64(ring.base(), a))
}

/// `1` if `λ` is unramified, else `π^c τ(λ)` with `c` its conductor and `π = λ(ϖ)`.
fn oracle_epsilon<R: Backend>(ring: &QuotCtx<R>, lambda: &GenChar, pi: &QuotElem<R>) -> QuotElem<R> {
    let c = lambda.conductor();
    if c == 0 {
        return QuotElem::one(ring);
    }
    pi.pow(c as u64).mul(&gauss_sum(ring, lambda, c, 1))
}
