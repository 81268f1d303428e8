//! `mellin`: weight and character transforms of a disc function.
//!
//! Input `{"p", "series" | "dirac", "chi"?, "k"?, "stabilize"?}` on the
//! multiplicative disc. The weight transform is reported for stable inputs;
//! a character transform is computed by the Dirac route and by genuine
//! torsion translations, and the two must agree.

use std::collections::BTreeMap;
use std::sync::Arc;

use lt_kernel::arith::SeriesJson;
use lt_kernel::lubin_tate::FormalGroupLaw;
use lt_kernel::mellin::characters::CharJson;
use lt_kernel::mellin::{self, PsiSystem, UnitChar};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{disc_function, dispatch, parse, trunc_of, Base, Config};
use crate::error::Result;
use crate::report::{self, Report};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MellinInput {
    p: u64,
    #[serde(default)]
    series: Option<SeriesJson>,
    #[serde(default)]
    dirac: Option<BTreeMap<String, String>>,
    #[serde(default)]
    chi: Option<CharJson>,
    #[serde(default)]
    k: u32,
    #[serde(default)]
    stabilize: bool,
}

pub fn run(input: &Value, cfg: &Config) -> Result<Report> {
    let inp: MellinInput = parse(input)?;
    dispatch!(cfg, inp.p, transform(&inp, cfg))
}

fn transform<R: Base>(ctx: &R::Ctx, inp: &MellinInput, cfg: &Config) -> Result<Report> {
    let d = trunc_of(cfg, inp.series.as_ref());
    let g = Arc::new(FormalGroupLaw::<R>::multiplicative(ctx, inp.p, d)?);
    let mut phi = disc_function(&g, inp.series.as_ref(), inp.dirac.as_ref())?;
    if inp.stabilize {
        phi = mellin::stabilize(&phi)?;
    }
    let mut rep = Report::default();
    rep.output("phi", report::series(phi.series()));
    let stable = mellin::is_stable(&phi)?.stable;
    rep.output("stable", json!(stable));
    if stable {
        // raises a consistency error if the two weight routes disagree
        let weight = mellin::mellin_at_weight(&phi, inp.k)?;
        rep.output("weight", report::series(weight.series()));
        let prim = mellin::stable_primitive(&phi)?;
        rep.check("primitive:theta_inverts", prim.theta() == phi);
        rep.output("stable_primitive", report::series(prim.series()));
    }
    if let Some(j) = &inp.chi {
        let chi = UnitChar::from_json(j)?;
        let n = chi.primitive().conductor().max(1);
        let psi = PsiSystem::new(inp.p, n);
        let dirac = mellin::mellin_at_character(&phi, &chi, inp.k, &psi)?;
        let translated = mellin::mellin_at_character_by_translation(&phi, &chi, inp.k, &psi)?;
        rep.check("character:routes_agree", dirac.series() == translated.series());
        rep.output("admissible", json!(mellin::is_admissible(&phi, n, &psi)?));
        rep.output("character", report::quot_series(dirac.series()));
    }
    Ok(rep)
}
