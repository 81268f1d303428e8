//! Criterion 7: the Coleman primitive on the torus with Frobenius `T ↦ T^q`
//! and `P(x) = x - q`.
//!
//! For each random form `ω = c dT/T + h(T) dT` the primitive `F` must satisfy
//! `dF = ω` and `(φ* - q) F` must carry no `LOG`. Both are recomputed here
//! coefficient by coefficient rather than through the kernel's `d` and
//! pullback. `ω = dT/T` must give exactly `LOG`.
//!
//! In `Z/p^N` the coefficient at `T^e` is pre-multiplied by `e + 1`, so the
//! sampled forms are integrable over `Z_p`; the rational run adds 500
//! unrestricted forms on top.

use lt_kernel::arith::{LaurentPoly, Q};
use lt_kernel::coleman::{coleman_primitive, ColemanFunction, FrobeniusSpec, TorusDifferential};

use super::{guarded, rng, Backend};
use crate::{ledger, Trace};

pub const FORMS: usize = 500;
const MIN_EXP: i64 = -6;
const MAX_EXP: i64 = 8;

pub fn suite<R: Backend>(ctx: &R::Ctx, p: u64, seed: u64) -> Trace<R> {
    guarded(|t| {
        let spec = FrobeniusSpec::torus(p)?;
        let mut rng = rng(seed);
        let loss = ledger::antiderivative(p, MAX_EXP as u64);
        for i in 0..FORMS {
            let omega = random_form::<R>(&mut rng, ctx, true);
            let f = coleman_primitive(&omega, &spec)?;
            check_primitive(t, &omega, &f, p, i);
            for e in MIN_EXP..=MAX_EXP + 1 {
                t.record(&f.laurent.coeff(e), loss);
            }
            t.record(&f.log, loss);
        }
        let dlog = TorusDifferential::dlog(ctx, R::one(ctx));
        let f = coleman_primitive(&dlog, &spec)?;
        t.check(f == ColemanFunction::log_symbol(ctx), || format!("primitive of dT/T is {f:?}, not LOG"));
        if t.pass {
            t.detail = format!("{FORMS} integral forms: dF = ω and (φ*-q)F LOG-free; dT/T ↦ LOG");
        }
        Ok(())
    })
}

/// [`suite`] plus `FORMS` forms with arbitrary rational antiderivatives.
pub fn suite_exact(ctx: &(), p: u64, seed: u64) -> Trace<Q> {
    let mut t = suite::<Q>(ctx, p, seed);
    let extra = guarded::<Q>(|t| {
        let spec = FrobeniusSpec::torus(p)?;
        let mut rng = rng(seed ^ 0x5eed);
        for i in 0..FORMS {
            let omega = random_form::<Q>(&mut rng, ctx, false);
            let f = coleman_primitive(&omega, &spec)?;
            check_primitive(t, &omega, &f, p, FORMS + i);
        }
        Ok(())
    });
    if !extra.pass {
        t.fail(extra.detail);
    } else if t.pass {
        t.detail = format!("{} forms: dF = ω and (φ*-q)F LOG-free; dT/T ↦ LOG", 2 * FORMS);
    }
    t
}

fn random_form<R: Backend>(rng: &mut impl rand::Rng, ctx: &R::Ctx, integral: bool) -> TorusDifferential<R> {
    let residue = R::from_i64(ctx, rng.gen_range(-9..=9));
    let count = rng.gen_range(0..8);
    let terms = (0..count).filter_map(|_| {
        let e = rng.gen_range(MIN_EXP..=MAX_EXP);
        let mut c = rng.gen_range(-9..=9);
        if integral {
            c *= e + 1;
        }
        (e != -1).then(|| (e, R::from_i64(ctx, c)))
    });
    let form = LaurentPoly::from_terms(ctx, terms.collect::<Vec<_>>());
    TorusDifferential::new(residue, form).expect("no T^-1 term")
}

/// `dF = ω` and `(φ* - q)F` LOG-free, by explicit coefficients.
fn check_primitive<R: Backend>(
    t: &mut Trace<R>,
    omega: &TorusDifferential<R>,
    f: &ColemanFunction<R>,
    q: u64,
    i: usize,
) {
    t.check(f.log == *omega.residue(), || format!("form {i}: LOG coefficient {} ≠ residue", f.log));
    // d(c_e T^e) = e c_e T^{e-1} dT
    let derivative_ok = (MIN_EXP - 1..=MAX_EXP + 1)
        .all(|e| f.laurent.coeff(e + 1).mul_int(e + 1) == omega.form().coeff(e));
    t.check(derivative_ok, || format!("form {i}: dF ≠ ω"));
    let spec = FrobeniusSpec::torus(q).expect("q ≥ 2");
    match spec.apply_to_function(f) {
        Ok(image) => {
            let mut ok = !image.has_log();
            for e in (MIN_EXP * q as i64)..=((MAX_EXP + 1) * q as i64) {
                let mut want = f.laurent.coeff(e).mul_int(-(q as i64));
                if e % q as i64 == 0 {
                    want = want.add(&f.laurent.coeff(e / q as i64));
                }
                ok &= image.laurent.coeff(e) == want;
            }
            t.check(ok, || format!("form {i}: (φ*-q)F ≠ F(T^q) - qF(T) or has LOG"));
        }
        Err(e) => t.fail(format!("form {i}: {e}")),
    }
}
