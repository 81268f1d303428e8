//! `factors`: L-factor, Gauss sum and ε-factor of each character.
//!
//! Input `{"l", "chars": [{"p","n","values","l","pi_value"}, …]}`. Each
//! ramified character also checks `τ(χ, ψ) τ(χ^{-1}, ψ) = χ(-1) l^c`.

use lt_kernel::arith::{QuotElem, Ring};
use lt_kernel::local_factors::{epsilon_abelian, gauss_sum, l_factor, MultChar, MultCharJson};
use lt_kernel::mellin::{character_value_ring, PsiSystem};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use super::{dispatch, lift_char, parse, Base, Config};
use crate::error::Result;
use crate::report::{self, Report};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorsInput {
    l: u64,
    chars: Vec<MultCharJson>,
}

pub fn run(input: &Value, cfg: &Config) -> Result<Report> {
    let inp: FactorsInput = parse(input)?;
    dispatch!(cfg, inp.l, factors(&inp))
}

fn factors<R: Base>(ctx: &R::Ctx, inp: &FactorsInput) -> Result<Report> {
    let level = inp.chars.iter().map(|c| c.unit.n).max().unwrap_or(1).max(1);
    let ring = character_value_ring::<R>(ctx, inp.l, level);
    let psi = PsiSystem::new(inp.l, level);
    let rows = inp
        .chars
        .par_iter()
        .map(|j| -> Result<(Value, Option<bool>)> {
            let chi = lift_char(ctx, &ring, j)?;
            let n = chi.conductor();
            let mut row = json!({
                "conductor": n,
                "L": report::quot(&l_factor(&chi)?),
                "epsilon": report::quot(&epsilon_abelian(&ring, &chi, &psi)?),
            });
            let mut relation = None;
            if n > 0 {
                let tau: QuotElem<R> = gauss_sum(&ring, &chi, &psi)?;
                let dual = MultChar::new(chi.unit().inverse(), QuotElem::one(&ring));
                let tau_dual: QuotElem<R> = gauss_sum(&ring, &dual, &psi)?;
                let ln = ring.embed(R::from_int(ctx, &BigInt::from(inp.l).pow(n)));
                relation = Some(tau.mul(&tau_dual) == ln.mul_int(chi.unit().parity()));
                row["gauss_sum"] = report::quot(&tau);
            }
            Ok((row, relation))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rep = Report::default();
    let mut values = Vec::new();
    for (i, (row, relation)) in rows.into_iter().enumerate() {
        values.push(row);
        if let Some(ok) = relation {
            rep.check(format!("gauss:norm_relation[{i}]"), ok);
        }
    }
    rep.output("ring", json!({"cyclotomic": ring.cyclotomic_order()}));
    rep.output("chars", Value::Array(values));
    Ok(rep)
}
