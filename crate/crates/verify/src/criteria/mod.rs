//! The ten acceptance criteria.
//!
//! Each submodule exposes a runner `fn(ctx, p, seed) -> Trace<R>` for a single
//! prime; [`run_rational`] drives the primes each criterion names in exact
//! mode and [`crate::backend`] reruns the same seeds in `Z/p^30`.

use lt_kernel::arith::{BaseRing, PAdicCtx, Topological, Zp, Q};
use lt_kernel::mellin::UnitChar;
use lt_kernel::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::backend::{compare, Agreement};
use crate::oracle::GenChar;
use crate::{Trace, Verdict};

pub mod coleman;
pub mod gauss;
pub mod interpolation;
pub mod mellin_twist;
pub mod period;
pub mod qdist;
pub mod sign;
pub mod zeta_table;

/// Base rings every criterion runs over.
pub trait Backend: BaseRing + Topological {}
impl<R: BaseRing + Topological> Backend for R {}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Run a fallible body, turning an error into a failed trace.
pub fn guarded<R: BaseRing>(body: impl FnOnce(&mut Trace<R>) -> Result<()>) -> Trace<R> {
    let mut t = Trace::new();
    if let Err(e) = body(&mut t) {
        t.fail(format!("error: {e}"));
    }
    t
}

/// The kernel's view of an oracle character of `(Z/l^n)^×`, odd `l`.
pub fn to_unit(chi: &GenChar) -> UnitChar {
    let gens = lt_kernel::mellin::characters::unit_generators(chi.l, chi.n);
    let images: Vec<u64> = gens.iter().map(|&(g, _)| chi.image_on(g)).collect();
    UnitChar::from_generator_images(chi.l, chi.n, &images).expect("odd prime power")
}

type Runner<R> = fn(&<R as lt_kernel::arith::Ring>::Ctx, u64, u64) -> Trace<R>;

/// A criterion: the primes it covers and its runner in both modes.
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub primes: &'static [u64],
    pub rational: Runner<Q>,
    pub fixed: Runner<Zp>,
    /// Seed offset so criteria sample independently.
    pub seed: u64,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "interpolation identity",
            primes: &[2, 3, 5],
            rational: interpolation::weight_routes_agree::<Q>,
            fixed: interpolation::weight_routes_agree::<Zp>,
            seed: 100,
        },
        Criterion {
            id: 2,
            name: "primitive identity",
            primes: &[2, 3, 5],
            rational: interpolation::primitive_inverts_theta::<Q>,
            fixed: interpolation::primitive_inverts_theta::<Zp>,
            seed: 100,
        },
        Criterion {
            id: 3,
            name: "admissibility twist-invariance",
            primes: &[3, 5],
            rational: mellin_twist::twist_invariance::<Q>,
            fixed: mellin_twist::twist_invariance::<Zp>,
            seed: 300,
        },
        Criterion {
            id: 4,
            name: "Gauss-sum norm relation",
            primes: &[3, 5, 7],
            rational: gauss::norm_relation::<Q>,
            fixed: gauss::norm_relation::<Zp>,
            seed: 400,
        },
        Criterion {
            id: 5,
            name: "zeta-integral case table",
            primes: &[5],
            rational: zeta_table::case_table::<Q>,
            fixed: zeta_table::case_table::<Zp>,
            seed: 500,
        },
        Criterion {
            id: 6,
            name: "Q-distribution depth invariance",
            primes: &[3, 5],
            rational: qdist::depth_invariance::<Q>,
            fixed: qdist::depth_invariance::<Zp>,
            seed: 600,
        },
        Criterion {
            id: 7,
            name: "Coleman suite",
            primes: &[3],
            rational: coleman::suite_exact,
            fixed: coleman::suite::<Zp>,
            seed: 700,
        },
        Criterion {
            id: 8,
            name: "universal-period consistency",
            primes: &[3, 5],
            rational: period::consistency::<Q>,
            fixed: period::consistency::<Zp>,
            seed: 800,
        },
        Criterion {
            id: 9,
            name: "Saito-Tunnell sign predicate",
            primes: &[3, 5, 7],
            rational: sign::epsilon_products::<Q>,
            fixed: sign::epsilon_products::<Zp>,
            seed: 900,
        },
    ]
}

/// Exact-mode verdict of one criterion over all of its primes.
pub fn run_rational(c: &Criterion) -> (Verdict, Vec<Trace<Q>>) {
    let traces: Vec<Trace<Q>> = c.primes.iter().map(|&p| (c.rational)(&(), p, c.seed + p)).collect();
    let mut detail = Vec::new();
    let mut pass = true;
    for (p, t) in c.primes.iter().zip(&traces) {
        pass &= t.pass;
        detail.push(format!("p={p}: {}", t.detail));
    }
    (Verdict { id: c.id, name: c.name, pass, detail: detail.join("; ") }, traces)
}

/// Precision cap of the fixed-modulus rerun.
pub const FIXED_N: u32 = 30;

/// Criterion 10: rerun every criterion in `Z/p^30` and compare.
pub fn backend_agreement(rational: &[(u32, Vec<Trace<Q>>)]) -> Verdict {
    let mut pass = true;
    let mut notes = Vec::new();
    let mut total = 0;
    let mut worst = 0;
    for c in criteria() {
        let exact = &rational.iter().find(|(id, _)| *id == c.id).expect("criterion ran").1;
        for (&p, tq) in c.primes.iter().zip(exact) {
            let ctx = PAdicCtx::new(p, FIXED_N).expect("prime");
            let tz = (c.fixed)(&ctx, p, c.seed + p);
            let Agreement { ok, values, worst_loss, detail } = compare(tq, &tz, &ctx);
            total += values;
            worst = worst.max(worst_loss);
            if !ok {
                pass = false;
                notes.push(format!("criterion {} p={p}: {detail}", c.id));
            }
        }
    }
    let detail = if pass {
        format!("{total} values agree mod p^(30-loss), worst observed loss {worst}, all within the ledger")
    } else {
        notes.join("; ")
    };
    Verdict { id: 10, name: "backend agreement", pass, detail }
}
