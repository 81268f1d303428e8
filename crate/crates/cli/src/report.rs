//! The versioned JSON report and the wire forms of kernel values.
//!
//! `serde_json` maps are ordered, so a report depends only on its inputs.

use lt_kernel::arith::mpoly::BiSeries;
use lt_kernel::arith::{DomainRing, QuotElem, Ring, SeriesJson, TruncatedSeries};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "v1";

/// One named module invariant and whether it held.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Default)]
pub struct Report {
    pub outputs: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn output(&mut self, key: &str, v: Value) {
        self.outputs.insert(key.to_string(), v);
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check { name: name.into(), pass });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self, command: &str, mode: &str, inputs: &Value) -> Value {
        json!({
            "schema": SCHEMA,
            "command": command,
            "mode": mode,
            "inputs": inputs,
            "outputs": Value::Object(self.outputs.clone()),
            "checks": self.checks,
        })
    }
}

pub fn series<R: DomainRing>(s: &TruncatedSeries<R>) -> Value {
    serde_json::to_value(SeriesJson::from_series(s)).expect("series serializes")
}

/// Coordinates in the power basis of `ζ`, padded to the ring degree.
pub fn quot<R: Ring>(x: &QuotElem<R>) -> Value {
    let base = x.ring().base().clone();
    let coords: Vec<String> =
        (0..x.ring().degree()).map(|i| x.coeffs().get(i).cloned().unwrap_or_else(|| R::zero(&base)).to_string()).collect();
    json!(coords)
}

pub fn quot_series<R: Ring>(s: &TruncatedSeries<QuotElem<R>>) -> Value {
    let order = s.base_ctx().cyclotomic_order();
    json!({
        "ring": {"cyclotomic": order},
        "trunc": s.trunc(),
        "coeffs": s.coeffs().iter().map(quot).collect::<Vec<_>>(),
    })
}

/// Row `s` lists the coefficients of `X^{s-j} Y^j`, `j = 0..=s`.
pub fn triangular<R: Ring>(b: &BiSeries<R>) -> Value {
    let rows: Vec<Vec<String>> =
        (0..=b.trunc()).map(|s| (0..=s).map(|j| b.coeff(s - j, j).to_string()).collect()).collect();
    json!(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lt_kernel::arith::{QuotCtx, Q};

    #[test]
    fn quot_pads_to_degree() {
        let ring = QuotCtx::<Q>::cyclotomic(&(), 5);
        assert_eq!(quot(&ring.zeta_pow(1)), json!(["0", "1", "0", "0"]));
        assert_eq!(quot(&ring.embed(Q::int(2))), json!(["2", "0", "0", "0"]));
    }

    #[test]
    fn report_passes_only_when_every_check_does() {
        let mut r = Report::default();
        assert!(r.all_pass());
        r.check("a", true);
        r.check("b", false);
        assert!(!r.all_pass());
        assert_eq!(r.to_json("c", "rational", &json!({}))["checks"][1]["name"], "b");
    }
}
