//! `period`: the universal period of a toy CM model.
//!
//! Input `{"p", "C": {"invariants"}, "D"?, "points": [{"id", "tame",
//! "series" | "dirac"}], "chars": [{"tame", "chi_p"?, "k"}], "action"?}`.
//! Each point carries its label in `C`; `action` lists moves
//! `{"c", "from", "to"}` that must agree with those labels.

use std::collections::BTreeMap;
use std::sync::Arc;

use lt_kernel::arith::SeriesJson;
use lt_kernel::global_toy::{universal_period_eval, weight0_waldspurger_check, CMCosetModel, FiniteAbelian, ToyCharacter};
use lt_kernel::lubin_tate::FormalGroupLaw;
use lt_kernel::mellin::characters::CharJson;
use lt_kernel::mellin::{PsiSystem, UnitChar};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{disc_function, dispatch, parse, trunc_of, Base, Config};
use crate::error::{CliError, Result};
use crate::report::{self, Report};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointJson {
    id: String,
    tame: Vec<u64>,
    #[serde(default)]
    series: Option<SeriesJson>,
    #[serde(default)]
    dirac: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharInput {
    tame: Vec<u64>,
    #[serde(default)]
    chi_p: Option<CharJson>,
    #[serde(default)]
    k: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Move {
    c: Vec<u64>,
    from: String,
    to: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PeriodInput {
    p: u64,
    #[serde(rename = "C")]
    c: FiniteAbelian,
    #[serde(rename = "D", default)]
    d: Option<usize>,
    points: Vec<PointJson>,
    chars: Vec<CharInput>,
    #[serde(default)]
    action: Vec<Move>,
}

pub fn run(input: &Value, cfg: &Config) -> Result<Report> {
    let inp: PeriodInput = parse(input)?;
    dispatch!(cfg, inp.p, evaluate(&inp, cfg))
}

fn evaluate<R: Base>(ctx: &R::Ctx, inp: &PeriodInput, cfg: &Config) -> Result<Report> {
    let tame = FiniteAbelian::new(inp.c.invariants.clone())?;
    let first = inp.points.first().and_then(|pt| pt.series.as_ref());
    let d = cfg.trunc.or(inp.d).unwrap_or_else(|| trunc_of(cfg, first));
    let g = Arc::new(FormalGroupLaw::<R>::multiplicative(ctx, inp.p, d)?);
    let phi = inp
        .points
        .iter()
        .map(|pt| disc_function(&g, pt.series.as_ref(), pt.dirac.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let ids: Vec<String> = inp.points.iter().map(|pt| pt.id.clone()).collect();
    let labels = inp.points.iter().map(|pt| pt.tame.clone()).collect();
    let model = CMCosetModel::new(tame.clone(), ids, labels, phi)?;
    let mut rep = Report::default();
    for (i, mv) in inp.action.iter().enumerate() {
        let label = |id: &str| {
            model
                .ids()
                .iter()
                .position(|x| x == id)
                .map(|j| model.labels()[j].clone())
                .ok_or_else(|| CliError::Input(format!("action names unknown point {id:?}")))
        };
        let moved = tame.add(&tame.normalize(&mv.c)?, &label(&mv.from)?);
        rep.check(format!("action:torsor[{i}]"), moved == label(&mv.to)?);
    }
    let mut values = Vec::new();
    for (i, c) in inp.chars.iter().enumerate() {
        let chi_p = match &c.chi_p {
            Some(j) => UnitChar::from_json(j)?,
            None => UnitChar::trivial(inp.p),
        };
        let psi = PsiSystem::new(inp.p, chi_p.primitive().conductor().max(1));
        let chi = ToyCharacter { tame: c.tame.clone(), chi_p, k: c.k };
        let value = universal_period_eval(&model, &chi, &psi)?;
        if c.k == 0 {
            let (w0, flag) = weight0_waldspurger_check(&model, &chi, &psi)?;
            rep.check(format!("weight0:primitive_route[{i}]"), flag && w0 == value);
        }
        values.push(json!({
            "ring": {"cyclotomic": value.ring().cyclotomic_order()},
            "value": report::quot(&value),
        }));
    }
    rep.output("values", Value::Array(values));
    Ok(rep)
}
