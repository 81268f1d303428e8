//! Criterion 5: the zeta integral of every (representation kind × twist
//! ramification) cell against a truncated double sum.
//!
//! `χ(ϖ)` is a formal variable `Z`, so values live in `R[ζ_20][[Z]]/Z^51`
//! and the tail `Σ_v` is cut exactly at `ϖ^50`. The oracle sums
//! `f(ϖ^v u) χ(ϖ^v u)` over `v ≤ 50` and `u ∈ (Z/25)^×`, evaluating cosets
//! and tails itself, and multiplies by `L(Π ⊗ χ)^{-1}` assembled from the
//! oracle's own ramification test.

use lt_kernel::arith::{QuotCtx, QuotElem, Ring, SeriesCtx, TruncatedSeries};
use lt_kernel::local_factors::{Coset, LocalRep, MultChar, SupercuspidalData};
use lt_kernel::wald_local::{zeta, KirillovVector, Tail, TailKind};
use rand::Rng as _;

use super::{guarded, rng, to_unit, Backend};
use crate::oracle::GenChar;
use crate::{ledger, Trace};

pub const TRUNC: usize = 50;
pub const TRIALS: usize = 4;
/// Level of every character; cosets have depth at most this.
const LEVEL: u32 = 2;
/// `φ(25)`: the order of every character value.
const ORDER: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Principal,
    Special,
    Supercuspidal,
}

/// Oracle-side description of `μ`: unit part and constant `μ(ϖ)`.
#[derive(Debug, Clone)]
struct OracleChar {
    unit: GenChar,
    pi: i64,
}

/// Oracle-side Kirillov vector.
struct OracleVector {
    cosets: Vec<(u64, u32, i64, i64)>,
    tail: Option<(TailKind, OracleChar)>,
}

pub fn case_table<R: Backend>(ctx: &R::Ctx, l: u64, seed: u64) -> Trace<R> {
    guarded(|t| {
        assert_eq!(l, 5, "the case table runs over (Z/25)^×");
        let ring = QuotCtx::<R>::cyclotomic(ctx, ORDER);
        let sctx = SeriesCtx { base: ring.clone(), trunc: TRUNC };
        let mut rng = rng(seed);
        let mut cells = 0;
        for kind in [Kind::Principal, Kind::Special, Kind::Supercuspidal] {
            for ramified in [false, true] {
                for trial in 0..TRIALS {
                    let nu_chi = loop {
                        let c = GenChar::new(l, LEVEL, rng.gen_range(0..ORDER));
                        // supercuspidal cells classify χ itself
                        if kind != Kind::Supercuspidal || c.is_trivial() != ramified {
                            break c;
                        }
                    };
                    let chi_series = MultChar::new(to_unit(&nu_chi), TruncatedSeries::var(&ring, TRUNC));
                    // μ with μχ unramified exactly when the cell is unramified
                    let draw_mu = |rng: &mut rand_chacha::ChaCha8Rng| {
                        let unit = if ramified {
                            loop {
                                let c = GenChar::new(l, LEVEL, rng.gen_range(0..ORDER));
                                if !c.mul(&nu_chi).is_trivial() {
                                    break c;
                                }
                            }
                        } else {
                            nu_chi.inverse()
                        };
                        OracleChar { unit, pi: unit_int(rng, l) }
                    };
                    let (params, tail_kind) = match kind {
                        Kind::Principal => {
                            let m1 = draw_mu(&mut rng);
                            // the log tail needs the double root μ¹ = μ²
                            let log = trial % 2 == 1;
                            let m2 = if log { m1.clone() } else { draw_mu(&mut rng) };
                            (vec![m1, m2], Some(if log { TailKind::Log } else { TailKind::Sharp }))
                        }
                        Kind::Special => (vec![draw_mu(&mut rng)], Some(TailKind::Sharp)),
                        Kind::Supercuspidal => (Vec::new(), None),
                    };
                    let cosets = random_cosets(&mut rng, l);
                    let oracle_f = OracleVector {
                        cosets: cosets.clone(),
                        tail: tail_kind.map(|k| (k, params[0].clone())),
                    };

                    let lift = |m: &OracleChar| MultChar::new(to_unit(&m.unit), constant(&ring, m.pi));
                    let rep = match kind {
                        Kind::Principal => LocalRep::Principal(lift(&params[0]), lift(&params[1])),
                        Kind::Special => LocalRep::Special(lift(&params[0])),
                        Kind::Supercuspidal => {
                            LocalRep::Supercuspidal(SupercuspidalData { epsilon: vec![], adjoint_l: None })
                        }
                    };
                    let kernel_cosets = cosets
                        .iter()
                        .map(|&(rep, depth, vpi, mass)| Ok((Coset::new(l, rep, depth, vpi)?, constant(&ring, mass))))
                        .collect::<lt_kernel::Result<Vec<_>>>()?;
                    let tail = tail_kind.map(|kind| Tail { kind, mu: lift(&params[0]) });
                    let f = KirillovVector::new(l, kernel_cosets, tail)?;
                    let got = zeta(&sctx, &f, &chi_series, &rep)?;

                    let roots: Vec<i64> =
                        params.iter().filter(|m| m.unit.mul(&nu_chi).is_trivial()).map(|m| m.pi).collect();
                    let want = oracle_zeta(&ring, l, &oracle_f, &nu_chi, &roots)?;
                    t.check(got == want, || {
                        format!("{kind:?}, {} twist, trial {trial}: kernel zeta differs from the truncated sum", ram(ramified))
                    });
                    t.record_quot_series(&got, ledger::coset_integral(LEVEL));
                }
                cells += 1;
            }
        }
        if t.pass {
            t.detail = format!("{cells} cells × {TRIALS} vectors match the sum cut at ϖ^{TRUNC}");
        }
        Ok(())
    })
}

fn ram(ramified: bool) -> &'static str {
    if ramified {
        "ramified"
    } else {
        "unramified"
    }
}

fn unit_int(rng: &mut impl rand::Rng, l: u64) -> i64 {
    loop {
        let a: i64 = rng.gen_range(-12..=12);
        if a % l as i64 != 0 {
            return a;
        }
    }
}

fn constant<R: Backend>(ring: &QuotCtx<R>, a: i64) -> TruncatedSeries<QuotElem<R>> {
    TruncatedSeries::constant(ring, TRUNC, ring.embed(R::from_i64(ring.base(), a)))
}

/// Up to three pairwise disjoint cosets `(rep, depth, vpi, mass)` with
/// `depth ∈ {1, 2}`, `vpi ∈ {0, 1, 2}` and masses divisible by `l`.
fn random_cosets(rng: &mut impl rand::Rng, l: u64) -> Vec<(u64, u32, i64, i64)> {
    let mut out: Vec<(u64, u32, i64, i64)> = Vec::new();
    for _ in 0..3 {
        let depth = rng.gen_range(1..=LEVEL);
        let vpi = rng.gen_range(0..=2);
        let rep = loop {
            let r = rng.gen_range(1..l.pow(depth));
            if r % l != 0 {
                break r;
            }
        };
        let disjoint = out.iter().all(|&(r, d, v, _)| {
            let m = l.pow(d.min(depth));
            v != vpi || r % m != rep % m
        });
        if disjoint {
            out.push((rep, depth, vpi, l as i64 * rng.gen_range(-4..=4)));
        }
    }
    out
}

/// `L(Π ⊗ χ)^{-1} Σ_{v ≤ 50} Σ_{u ∈ (Z/25)^×} f(ϖ^v u) χ(ϖ^v u) / 20`.
fn oracle_zeta<R: Backend>(
    ring: &QuotCtx<R>,
    l: u64,
    f: &OracleVector,
    chi: &GenChar,
    roots: &[i64],
) -> lt_kernel::Result<TruncatedSeries<QuotElem<R>>> {
    let base = ring.base();
    let m = l.pow(LEVEL);
    let units = (1..m).filter(|u| u % l != 0).count() as i64;
    let mut coeffs = Vec::with_capacity(TRUNC + 1);
    for v in 0..=TRUNC as i64 {
        let mut acc = QuotElem::zero(ring);
        for u in (1..m).filter(|u| u % l != 0) {
            let mut fv = QuotElem::zero(ring);
            for &(rep, depth, vpi, mass) in &f.cosets {
                if vpi == v && u % l.pow(depth) == rep {
                    fv = fv.add(&ring.embed(R::from_i64(base, mass)));
                }
            }
            if let Some((kind, mu)) = &f.tail {
                let w = match kind {
                    TailKind::Sharp => 1,
                    TailKind::Log => 1 + v,
                };
                let pi_pow = R::from_int(base, &num_bigint::BigInt::from(mu.pi).pow(v as u32));
                fv = fv.add(&mu.unit.value(ring, u as i64).mul(&ring.embed(pi_pow)).mul_int(w));
            }
            acc = acc.add(&fv.mul(&chi.value(ring, u as i64)));
        }
        coeffs.push(acc.div_int(&num_bigint::BigInt::from(units))?);
    }
    let sum = TruncatedSeries::new(ring, TRUNC, coeffs);
    let mut inverse_l = TruncatedSeries::constant(ring, TRUNC, QuotElem::one(ring));
    for &a in roots {
        let factor = TruncatedSeries::new(
            ring,
            TRUNC,
            vec![QuotElem::one(ring), ring.embed(R::from_i64(base, -a))],
        );
        inverse_l = inverse_l.mul(&factor);
    }
    Ok(sum.mul(&inverse_l))
}
