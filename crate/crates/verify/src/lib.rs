//! Acceptance criteria for `lt-kernel`, each checked against an oracle that
//! does not share the code path under test.
//!
//! Every criterion is a function generic over the base ring, so the same
//! sampled inputs run in exact rational mode and in `Z/p^N`. A run returns a
//! [`Trace`]: the verdict plus the values it produced, each tagged with the
//! number of `p`-adic digits the documented [`ledger`] allows it to lose.
//! [`backend::compare`] then checks the fixed-modulus trace against the
//! reduction of the rational one.

use lt_kernel::arith::{BaseRing, QuotElem, TruncatedSeries};

pub mod backend;
pub mod criteria;
pub mod ledger;
pub mod oracle;

/// Outcome of one criterion run.
#[derive(Debug, Clone)]
pub struct Trace<R: BaseRing> {
    pub pass: bool,
    pub detail: String,
    /// `(value, allowed loss)` in the order the run produced them.
    pub values: Vec<(R, u32)>,
}

impl<R: BaseRing> Trace<R> {
    pub fn new() -> Self {
        Trace { pass: true, detail: String::new(), values: Vec::new() }
    }

    pub fn fail(&mut self, why: impl Into<String>) {
        if self.pass {
            self.detail = why.into();
        }
        self.pass = false;
    }

    pub fn check(&mut self, ok: bool, why: impl FnOnce() -> String) {
        if !ok {
            self.fail(why());
        }
    }

    pub fn record(&mut self, x: &R, loss: u32) {
        self.values.push((x.clone(), loss));
    }

    /// Every coordinate in the power basis, padded to the ring degree.
    pub fn record_quot(&mut self, x: &QuotElem<R>, loss: u32) {
        let deg = x.ring().degree();
        let base = x.ring().base().clone();
        for i in 0..deg {
            let c = x.coeffs().get(i).cloned().unwrap_or_else(|| R::zero(&base));
            self.values.push((c, loss));
        }
    }

    pub fn record_series(&mut self, s: &TruncatedSeries<R>, loss: u32) {
        for i in 0..=s.trunc() {
            self.values.push((s.coeff(i), loss));
        }
    }

    pub fn record_quot_series(&mut self, s: &TruncatedSeries<QuotElem<R>>, loss: u32) {
        for i in 0..=s.trunc() {
            self.record_quot(&s.coeff(i), loss);
        }
    }

    /// Fold a sub-run in, keeping the first failure message.
    pub fn absorb(&mut self, other: Trace<R>) {
        if !other.pass {
            self.fail(other.detail);
        }
        self.values.extend(other.values);
    }
}

impl<R: BaseRing> Default for Trace<R> {
    fn default() -> Self {
        Self::new()
    }
}

/// One line of the acceptance report.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] criterion {:>2} {}: {}", self.id, self.name, self.detail)
    }
}
