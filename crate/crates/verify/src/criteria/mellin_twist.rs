//! Criterion 3: on the Dirac family `(1+S)^u`, the character transform at
//! `χ⟨k⟩` with conductor `≤ p^n` equals the weight transform exactly when
//! `u ∈ 1 + p^n Z_p`.

use std::sync::Arc;

use lt_kernel::lubin_tate::FormalGroupLaw;
use lt_kernel::mellin::{self, DiscFunction, PsiSystem, UnitChar};

use super::{guarded, Backend};
use crate::{ledger, Trace};

pub const TRUNC: usize = 30;
pub const MAX_DEPTH: u32 = 2;
pub const WEIGHTS: [u32; 3] = [0, 1, 2];

pub fn twist_invariance<R: Backend>(ctx: &R::Ctx, p: u64, _seed: u64) -> Trace<R> {
    guarded(|t| {
        let g = Arc::new(FormalGroupLaw::<R>::multiplicative(ctx, p, TRUNC)?);
        let psi = PsiSystem::new(p, MAX_DEPTH);
        let mut agreements = 0;
        let mut separations = 0;
        for n in 1..=MAX_DEPTH {
            let pn = p.pow(n) as usize;
            let chars = UnitChar::all_of_level(p, n);
            for u in (1..=TRUNC).filter(|u| u % p as usize != 0) {
                let mut b = vec![R::zero(ctx); TRUNC + 1];
                b[u] = R::one(ctx);
                let phi = DiscFunction::from_dirac(&g, &b);
                let in_family = (u - 1) % pn == 0;
                t.check(mellin::is_admissible(&phi, n, &psi)? == in_family, || {
                    format!("(1+S)^{u}: n = {n} admissibility disagrees with u ≡ 1 mod p^n")
                });
                for k in WEIGHTS {
                    let weight = mellin::mellin_at_weight(&phi, k)?;
                    let mut separated = false;
                    for chi in &chars {
                        let twisted = mellin::mellin_at_character(&phi, chi, k, &psi)?;
                        let same = twisted == weight.embed_into(twisted.coeff_ctx());
                        if in_family {
                            t.check(same, || format!("u = {u}, n = {n}, k = {k}: χ-transform differs"));
                            agreements += 1;
                            let loss = ledger::character_transform(chi.conductor());
                            t.record_quot(&twisted.at_origin(), loss);
                        }
                        separated |= !same;
                    }
                    if !in_family {
                        t.check(separated, || format!("u = {u}, n = {n}, k = {k}: no character separates"));
                        separations += 1;
                    }
                }
            }
        }
        if t.pass {
            t.detail = format!("{agreements} equalities on 1+p^n, {separations} separations off it");
        }
        Ok(())
    })
}
