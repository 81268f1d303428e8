//! `lt`: build a Lubin-Tate group from a Frobenius polynomial.
//!
//! Input `{"p", "pi"?, "q_res"?, "frobenius"?, "D"?, "torsion_level"?}`;
//! `frobenius` defaults to `(1+T)^p - 1` and `pi` to `p`.

use lt_kernel::arith::{BaseRing, TruncatedSeries, Q};
use lt_kernel::lubin_tate::{lt_construct, multiplicative_frobenius};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{dispatch, parse, Base, Config, DEFAULT_TRUNC};
use crate::error::Result;
use crate::report::{self, Report};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LtInput {
    p: u64,
    #[serde(default)]
    pi: Option<String>,
    #[serde(default)]
    q_res: Option<u64>,
    #[serde(default)]
    frobenius: Option<Vec<String>>,
    #[serde(rename = "D", default)]
    d: Option<usize>,
    #[serde(default)]
    torsion_level: Option<u32>,
}

pub fn run(input: &Value, cfg: &Config) -> Result<Report> {
    let inp: LtInput = parse(input)?;
    dispatch!(cfg, inp.p, build(&inp, cfg))
}

fn build<R: Base>(ctx: &R::Ctx, inp: &LtInput, cfg: &Config) -> Result<Report> {
    let d = cfg.trunc.or(inp.d).unwrap_or(DEFAULT_TRUNC);
    let pi = match &inp.pi {
        Some(s) => Q::parse(&(), s)?,
        None => Q::int(inp.p as i64),
    };
    let frob = match &inp.frobenius {
        Some(v) => v.iter().map(|s| Q::parse(&(), s)).collect::<std::result::Result<Vec<_>, _>>()?,
        None => multiplicative_frobenius(inp.p),
    };
    let g = lt_construct::<R>(ctx, inp.p, &pi, inp.q_res.unwrap_or(inp.p), &frob, d)?;
    let mut rep = Report::default();
    rep.output("model", json!(format!("{:?}", g.model()).to_lowercase()));
    rep.output("law", report::triangular(g.law()));
    // the logarithm has denominators, so over Z/p^N it may not exist
    match g.log() {
        Ok(log) => {
            rep.output("log", report::series(&log.log));
            rep.check("log:additive", log.additivity_defect(&g).is_zero());
        }
        Err(e) if !e.is_internal() => {
            rep.output("log", Value::Null);
            rep.output("log_unavailable", json!(e.to_string()));
        }
        Err(e) => return Err(e.into()),
    }
    let endo = g.endo(&pi)?;
    rep.output("endo_pi", report::series(&endo));
    for (name, ok) in g.check_axioms(d) {
        rep.check(format!("axiom:{name}"), ok);
    }
    let frob_r = frob.iter().map(|c| R::from_rational(ctx, &c.0)).collect::<std::result::Result<Vec<_>, _>>()?;
    rep.check("endo:pi_is_frobenius", endo == TruncatedSeries::new(ctx, d, frob_r));
    if let Some(m) = inp.torsion_level {
        rep.check(format!("torsion:level_{m}"), g.torsion_ring(m)?.check_invariants()?);
    }
    Ok(rep)
}
