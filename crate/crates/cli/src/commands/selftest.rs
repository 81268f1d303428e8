//! `selftest`: built-in invariants on small fixed inputs.
//!
//! Input `{"p"?}` (default 3, odd). Every check pairs two independent
//! computations of the same quantity.

use std::sync::Arc;

use lt_kernel::arith::{QuotElem, Ring};
use lt_kernel::coleman::{coleman_primitive, ColemanFunction, FrobeniusSpec, TorusDifferential};
use lt_kernel::local_factors::{gauss_sum, MultChar};
use lt_kernel::lubin_tate::FormalGroupLaw;
use lt_kernel::mellin::{self, character_value_ring, DiscFunction, PsiSystem, UnitChar};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{dispatch, parse, Base, Config};
use crate::error::{CliError, Result};
use crate::report::Report;

const TRUNC: usize = 8;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SelftestInput {
    #[serde(default = "default_p")]
    p: u64,
}

fn default_p() -> u64 {
    3
}

pub fn run(input: &Value, cfg: &Config) -> Result<Report> {
    let inp: SelftestInput = parse(input)?;
    if inp.p < 3 || inp.p % 2 == 0 {
        return Err(CliError::Input(format!("selftest needs an odd prime, got {}", inp.p)));
    }
    dispatch!(cfg, inp.p, checks(inp.p))
}

fn checks<R: Base>(ctx: &R::Ctx, p: u64) -> Result<Report> {
    let mut rep = Report::default();
    let g = Arc::new(FormalGroupLaw::<R>::multiplicative(ctx, p, TRUNC)?);
    for (name, ok) in g.check_axioms(TRUNC) {
        rep.check(format!("lt:{name}"), ok);
    }

    // Dirac masses on units only: stable by construction
    let masses: Vec<R> =
        (0..=TRUNC as i64).map(|u| R::from_i64(ctx, if u % p as i64 == 0 { 0 } else { u * u - 2 })).collect();
    let phi = DiscFunction::from_dirac(&g, &masses);
    rep.check("mellin:stable", mellin::is_stable(&phi)?.stable);
    rep.check("mellin:theta_inverts_primitive", mellin::stable_primitive(&phi)?.theta() == phi);

    let chi = UnitChar::quadratic(p)?;
    let psi = PsiSystem::new(p, 1);
    let dirac = mellin::mellin_at_character(&phi, &chi, 1, &psi)?;
    let translated = mellin::mellin_at_character_by_translation(&phi, &chi, 1, &psi)?;
    rep.check("mellin:character_routes_agree", dirac.series() == translated.series());

    // τ(χ)² = χ(-1) p for the quadratic character
    let ring = character_value_ring::<R>(ctx, p, 1);
    let tau: QuotElem<R> = gauss_sum(&ring, &MultChar::new(chi.clone(), QuotElem::one(&ring)), &psi)?;
    let want = ring.embed(R::from_i64(ctx, chi.parity() * p as i64));
    rep.check("factors:quadratic_gauss_square", tau.mul(&tau) == want);

    let spec = FrobeniusSpec::torus(p)?;
    let f = coleman_primitive(&TorusDifferential::dlog(ctx, R::one(ctx)), &spec)?;
    rep.check("coleman:dlog_is_log", f == ColemanFunction::log_symbol(ctx));

    rep.output("p", json!(p));
    rep.output("trunc", json!(TRUNC));
    Ok(rep)
}
