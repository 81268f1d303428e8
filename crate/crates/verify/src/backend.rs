//! Agreement between a rational trace and its fixed-modulus rerun.

use lt_kernel::arith::{PAdicCtx, Ring, Zp, Q};

use crate::Trace;

/// Summary of one comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agreement {
    pub ok: bool,
    pub values: usize,
    /// Largest loss actually observed, `N - prec`.
    pub worst_loss: u32,
    pub detail: String,
}

/// Each fixed-modulus value must equal the rational one mod its own
/// precision, and that precision must be at least `N - allowed`.
pub fn compare(exact: &Trace<Q>, fixed: &Trace<Zp>, ctx: &PAdicCtx) -> Agreement {
    let n = ctx.cap();
    let mut worst = 0;
    let bad = |detail: String, worst| Agreement { ok: false, values: exact.values.len(), worst_loss: worst, detail };
    if exact.pass != fixed.pass {
        return bad(format!("verdicts differ: rational {} vs fixed {}", exact.pass, fixed.pass), 0);
    }
    if exact.values.len() != fixed.values.len() {
        return bad(format!("{} rational values vs {} fixed", exact.values.len(), fixed.values.len()), 0);
    }
    for (i, ((q, allowed), (z, _))) in exact.values.iter().zip(&fixed.values).enumerate() {
        let loss = n - z.prec();
        worst = worst.max(loss);
        let reduced = match Zp::from_rational(ctx, &q.0) {
            Ok(r) => r,
            Err(_) => return bad(format!("value {i} = {q} is not {}-integral", ctx.p()), worst),
        };
        if reduced != *z {
            return bad(format!("value {i}: {z} is not {q} mod p^{}", z.prec()), worst);
        }
        if loss > *allowed {
            return bad(format!("value {i} lost {loss} digits, ledger allows {allowed}"), worst);
        }
    }
    Agreement { ok: true, values: exact.values.len(), worst_loss: worst, detail: String::new() }
}
