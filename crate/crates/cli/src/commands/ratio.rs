//! `ratio`: the toy L-value ratio `P₊ P₋ / Q` at one character.
//!
//! Input `{"p"?, "p_plus", "p_minus", "q"}`; p-adic mode needs `p`.

use serde::Deserialize;
use serde_json::{json, Value};

use lt_kernel::global_toy::toy_l_ratio_eval;

use super::{parse, Base, Config, Mode};
use crate::error::{CliError, Result};
use crate::report::Report;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RatioInput {
    #[serde(default)]
    p: Option<u64>,
    p_plus: String,
    p_minus: String,
    q: String,
}

pub fn run(input: &Value, cfg: &Config) -> Result<Report> {
    let inp: RatioInput = parse(input)?;
    match cfg.mode {
        Mode::Rational => ratio::<lt_kernel::arith::Q>(&(), &inp),
        Mode::Padic => {
            let p = inp.p.ok_or_else(|| CliError::Input("p-adic mode needs \"p\"".into()))?;
            ratio::<lt_kernel::arith::Zp>(&cfg.padic_ctx(p)?, &inp)
        }
    }
}

fn ratio<R: Base>(ctx: &R::Ctx, inp: &RatioInput) -> Result<Report> {
    let plus = R::parse(ctx, &inp.p_plus)?;
    let minus = R::parse(ctx, &inp.p_minus)?;
    let q = R::parse(ctx, &inp.q)?;
    let r = toy_l_ratio_eval(&plus, &minus, &q)?;
    let mut rep = Report::default();
    rep.check("ratio:times_q", r.mul(&q) == plus.mul(&minus));
    rep.output("ratio", json!(r.to_string()));
    Ok(rep)
}
