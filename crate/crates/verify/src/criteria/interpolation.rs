//! Criteria 1 and 2: the weight-`k` Mellin transform computed through the
//! bivariate law agrees with `Θ^k`, and the stable primitive inverts `Θ`.

use std::sync::Arc;

use lt_kernel::arith::TruncatedSeries;
use lt_kernel::lubin_tate::FormalGroupLaw;
use lt_kernel::mellin::{self, DiscFunction};
use rand::Rng as _;

use super::{guarded, rng, Backend};
use crate::{ledger, Trace};

pub const TRUNC: usize = 40;
pub const SAMPLES: usize = 30;
pub const MAX_WEIGHT: u32 = 6;

/// `SAMPLES` stable functions: `stabilize` applied to random integral polynomials.
pub fn stable_sample<R: Backend>(
    g: &Arc<FormalGroupLaw<R>>,
    seed: u64,
) -> lt_kernel::Result<Vec<DiscFunction<R>>> {
    let mut rng = rng(seed);
    let base = g.base().clone();
    (0..SAMPLES)
        .map(|_| {
            let coeffs: Vec<R> = (0..=TRUNC).map(|_| R::from_i64(&base, rng.gen_range(-20..=20))).collect();
            mellin::stabilize(&DiscFunction::new(g, TruncatedSeries::new(&base, TRUNC, coeffs)))
        })
        .collect()
}

pub fn weight_routes_agree<R: Backend>(ctx: &R::Ctx, p: u64, seed: u64) -> Trace<R> {
    guarded(|t| {
        let g = Arc::new(FormalGroupLaw::<R>::multiplicative(ctx, p, TRUNC)?);
        let sample = stable_sample(&g, seed)?;
        let mut checked = 0;
        for (i, phi) in sample.iter().enumerate() {
            t.check(mellin::is_stable(phi)?.stable, || format!("sample {i} is not stable"));
            for k in 0..=MAX_WEIGHT {
                let routes = mellin::weight_routes(phi, k)?;
                let window = TRUNC - k as usize;
                t.check(routes.route_b.series().truncate(window) == routes.route_a, || {
                    format!("sample {i}, k = {k}: routes differ mod T^{}", window + 1)
                });
                t.record_series(&routes.route_a, ledger::STABILIZE);
                checked += 1;
            }
        }
        if t.pass {
            t.detail = format!("{checked} (φ, k) pairs agree mod T^(D-k+1)");
        }
        Ok(())
    })
}

pub fn primitive_inverts_theta<R: Backend>(ctx: &R::Ctx, p: u64, seed: u64) -> Trace<R> {
    guarded(|t| {
        let g = Arc::new(FormalGroupLaw::<R>::multiplicative(ctx, p, TRUNC)?);
        let sample = stable_sample(&g, seed)?;
        let loss = ledger::STABILIZE + ledger::stable_primitive(p, TRUNC);
        for (i, phi) in sample.iter().enumerate() {
            let prim = mellin::stable_primitive(phi)?;
            t.check(prim.theta() == *phi, || format!("sample {i}: Θ(primitive) ≠ φ"));
            let back = mellin::stable_primitive(&phi.theta())?;
            t.check(back == *phi, || format!("sample {i}: primitive(Θφ) ≠ φ"));
            t.record_series(prim.series(), loss);
        }
        if t.pass {
            t.detail = format!("{} samples: Θ∘primitive = id and primitive∘Θ = id", sample.len());
        }
        Ok(())
    })
}
