//! `coleman`: Coleman primitives of forms on the torus.
//!
//! Input `{"q", "poly"?, "p"?, "forms": [{"residue", "exact"}]}` with `poly`
//! the ascending rational coefficients of `P` (default `X - q`) and `p` the
//! prime of p-adic mode (default `q`).

use lt_kernel::arith::{BaseRing, Q};
use lt_kernel::coleman::{coleman_primitive, is_frobenius_proper, DifferentialJson, FrobeniusSpec, TorusDifferential};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use super::{dispatch, parse, Base, Config};
use crate::error::Result;
use crate::report::Report;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColemanInput {
    q: u64,
    #[serde(default)]
    poly: Option<Vec<String>>,
    #[serde(default)]
    p: Option<u64>,
    forms: Vec<DifferentialJson>,
}

pub fn run(input: &Value, cfg: &Config) -> Result<Report> {
    let inp: ColemanInput = parse(input)?;
    let spec = match &inp.poly {
        Some(v) => FrobeniusSpec::new(inp.q, v.iter().map(|s| Q::parse(&(), s)).collect::<std::result::Result<_, _>>()?)?,
        None => FrobeniusSpec::torus(inp.q)?,
    };
    dispatch!(cfg, inp.p.unwrap_or(inp.q), integrate(&inp, &spec))
}

fn integrate<R: Base>(ctx: &R::Ctx, inp: &ColemanInput, spec: &FrobeniusSpec) -> Result<Report> {
    let mut rep = Report::default();
    let mut rows = Vec::new();
    for (i, j) in inp.forms.iter().enumerate() {
        let omega = TorusDifferential::<R>::from_json(ctx, j)?;
        if !is_frobenius_proper(&omega, spec)?.proper {
            rows.push(json!({"proper": false}));
            continue;
        }
        let f = coleman_primitive(&omega, spec)?;
        rep.check(format!("primitive:d_equals_form[{i}]"), f.d() == omega);
        rep.check(format!("primitive:frobenius_log_free[{i}]"), !spec.apply_to_function(&f)?.has_log());
        let laurent: Map<String, Value> = f.laurent.terms().map(|(e, c)| (e.to_string(), json!(c.to_string()))).collect();
        rows.push(json!({"proper": true, "log": f.log.to_string(), "laurent": laurent}));
    }
    rep.output("primitives", Value::Array(rows));
    Ok(rep)
}
