//! `zeta`: the zeta integral `Z(f, χ)` of a Kirillov vector, and optionally
//! the local period distribution of a stable pair.
//!
//! Input `{"vector", "chi", "rep", "minus_j"?, "depth"?}` with `rep` one of
//! `{"kind":"principal","mu":[μ¹, μ²]}`, `{"kind":"special","mu":μ}`,
//! `{"kind":"supercuspidal","adjoint_l":"…"}`.

use lt_kernel::arith::{QuotCtx, QuotElem};
use lt_kernel::local_factors::{Coset, LocalRep, MultCharJson, SupercuspidalData};
use lt_kernel::mellin::character_value_ring;
use lt_kernel::wald_local::{q_distribution_eval, zeta, KirillovJson, KirillovVector, StablePair, Tail};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{dispatch, lift_char, parse, Base, Config};
use crate::error::{CliError, Result};
use crate::report::{self, Report};

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RepJson {
    Principal { mu: [MultCharJson; 2] },
    Special { mu: MultCharJson },
    Supercuspidal {
        #[serde(default)]
        adjoint_l: Option<String>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ZetaInput {
    vector: KirillovJson,
    chi: MultCharJson,
    rep: RepJson,
    #[serde(default)]
    minus_j: Option<KirillovJson>,
    #[serde(default)]
    depth: Option<u32>,
}

pub fn run(input: &Value, cfg: &Config) -> Result<Report> {
    let inp: ZetaInput = parse(input)?;
    dispatch!(cfg, inp.vector.l, integrate(&inp))
}

/// Largest character level in the input, at least 1.
fn level(inp: &ZetaInput) -> u32 {
    let mut chars = vec![&inp.chi];
    match &inp.rep {
        RepJson::Principal { mu } => chars.extend(mu.iter()),
        RepJson::Special { mu } => chars.push(mu),
        RepJson::Supercuspidal { .. } => {}
    }
    for v in std::iter::once(&inp.vector).chain(inp.minus_j.as_ref()) {
        chars.extend(v.tail.as_ref().map(|t| &t.mu));
    }
    chars.iter().map(|c| c.unit.n).max().unwrap_or(1).max(1)
}

fn vector<R: Base>(ctx: &R::Ctx, ring: &QuotCtx<R>, j: &KirillovJson) -> Result<KirillovVector<QuotElem<R>>> {
    let cosets = j
        .cosets
        .iter()
        .map(|c| Ok((Coset::new(j.l, c.rep, c.depth, c.vpi)?, ring.embed(R::parse(ctx, &c.value)?))))
        .collect::<Result<Vec<_>>>()?;
    let tail = j.tail.as_ref().map(|t| Ok::<_, CliError>(Tail { kind: t.kind, mu: lift_char(ctx, ring, &t.mu)? })).transpose()?;
    Ok(KirillovVector::new(j.l, cosets, tail)?)
}

fn integrate<R: Base>(ctx: &R::Ctx, inp: &ZetaInput) -> Result<Report> {
    let l = inp.vector.l;
    let ring = character_value_ring::<R>(ctx, l, level(inp));
    let f = vector(ctx, &ring, &inp.vector)?;
    let chi = lift_char(ctx, &ring, &inp.chi)?;
    let rep = match &inp.rep {
        RepJson::Principal { mu } => LocalRep::Principal(lift_char(ctx, &ring, &mu[0])?, lift_char(ctx, &ring, &mu[1])?),
        RepJson::Special { mu } => LocalRep::Special(lift_char(ctx, &ring, mu)?),
        RepJson::Supercuspidal { adjoint_l } => LocalRep::Supercuspidal(SupercuspidalData {
            epsilon: Vec::new(),
            adjoint_l: adjoint_l.as_ref().map(|s| R::parse(ctx, s).map(|x| ring.embed(x))).transpose()?,
        }),
    };
    let mut out = Report::default();
    out.output("ring", json!({"cyclotomic": ring.cyclotomic_order()}));
    out.output("zeta", report::quot(&zeta(&ring, &f, &chi, &rep)?));
    match (&inp.minus_j, inp.depth) {
        (Some(m), Some(n)) => {
            let pair = StablePair { plus: f, minus_j: vector(ctx, &ring, m)? };
            // a character route disagreeing with the unit integrals is an internal error
            let q = q_distribution_eval(&ring, &pair, n, &chi, &rep)?;
            out.output("q_distribution", report::quot(&q));
        }
        (None, None) => {}
        _ => return Err(CliError::Input("\"minus_j\" and \"depth\" go together".into())),
    }
    Ok(out)
}
