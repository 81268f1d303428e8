//! Criterion 6: on pairs supported on `(1 + p^n)^×`, the local period
//! distribution takes the same value at every character of conductor `≤ p^n`.
//!
//! The kernel already checks the character route against the unit
//! integrals; here the value must also not move as `χ` varies, including
//! its unramified part `χ(ϖ) = p·w`.

use lt_kernel::arith::{QuotCtx, QuotElem};
use lt_kernel::local_factors::{Coset, LocalRep, MultChar};
use lt_kernel::mellin::{character_value_ring, UnitChar};
use lt_kernel::wald_local::{q_distribution_eval, KirillovVector, StablePair};
use rand::Rng as _;

use super::{guarded, rng, Backend};
use crate::{ledger, Trace};

pub const PAIRS: usize = 10;
pub const CHARACTERS: usize = 10;

pub fn depth_invariance<R: Backend>(ctx: &R::Ctx, p: u64, seed: u64) -> Trace<R> {
    guarded(|t| {
        let mut rng = rng(seed);
        let mut evaluations = 0;
        for n in 1..=2u32 {
            let ring = character_value_ring::<R>(ctx, p, n);
            let chars = UnitChar::all_of_level(p, n);
            let depth = n + 1;
            for pair_index in 0..PAIRS {
                let pair = StablePair {
                    plus: random_vector(&mut rng, &ring, p, n, depth)?,
                    minus_j: random_vector(&mut rng, &ring, p, n, depth)?,
                };
                let a = unit_int(&mut rng, p);
                let b = loop {
                    let b = unit_int(&mut rng, p);
                    if b != a {
                        break b;
                    }
                };
                let rep = LocalRep::Principal(
                    MultChar::unramified(p, constant(&ring, a)),
                    MultChar::unramified(p, constant(&ring, b)),
                );
                let mut first: Option<QuotElem<R>> = None;
                for _ in 0..CHARACTERS {
                    let unit = chars[rng.gen_range(0..chars.len())].clone();
                    let pi = constant(&ring, p as i64 * unit_int(&mut rng, p));
                    let chi = MultChar::new(unit, pi);
                    let value = q_distribution_eval(&ring, &pair, n, &chi, &rep)?;
                    evaluations += 1;
                    match &first {
                        None => first = Some(value),
                        Some(v) => t.check(*v == value, || {
                            format!("n = {n}, pair {pair_index}: value moved from {v} to {value}")
                        }),
                    }
                }
                let v = first.expect("at least one character");
                t.record_quot(&v, 2 * ledger::coset_integral(depth));
            }
        }
        if t.pass {
            t.detail = format!("{} pairs, {evaluations} evaluations constant in χ", 2 * PAIRS);
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

fn constant<R: Backend>(ring: &QuotCtx<R>, a: i64) -> QuotElem<R> {
    ring.embed(R::from_i64(ring.base(), a))
}

/// One to `p` cosets `(1 + p^n j)(1 + p^depth)` with masses in `p^{depth-1} Z`.
fn random_vector<R: Backend>(
    rng: &mut impl rand::Rng,
    ring: &QuotCtx<R>,
    p: u64,
    n: u32,
    depth: u32,
) -> lt_kernel::Result<KirillovVector<QuotElem<R>>> {
    let count = rng.gen_range(1..=p as usize);
    let mut js: Vec<u64> = (0..p).collect();
    let mut cosets = Vec::new();
    for _ in 0..count {
        let j = js.swap_remove(rng.gen_range(0..js.len()));
        let mut mass = 0;
        while mass == 0 {
            mass = rng.gen_range(-5..=5);
        }
        let mass = mass * p.pow(depth - 1) as i64;
        cosets.push((Coset::new(p, 1 + p.pow(n) * j, depth, 0)?, constant(ring, mass)));
    }
    KirillovVector::new(p, cosets, None)
}
