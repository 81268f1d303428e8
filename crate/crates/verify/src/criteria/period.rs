//! Criterion 8: the universal period on random Dirac-family CM models equals
//! the double sum `|C|^{-1} Σ_y χ_tame(y) Σ_u b_{y,u} χ_p(u) u^k`, and the
//! weight-0 check reports agreement of its two routes.

use std::sync::Arc;

use lt_kernel::arith::{QuotElem, Ring};
use lt_kernel::global_toy::{universal_period_eval, weight0_waldspurger_check, CMCosetModel, FiniteAbelian, ToyCharacter};
use lt_kernel::lubin_tate::FormalGroupLaw;
use lt_kernel::mellin::{DiscFunction, PsiSystem};
use num_bigint::BigInt;
use rand::Rng as _;

use super::{guarded, rng, to_unit, Backend};
use crate::oracle::GenChar;
use crate::{ledger, Trace};

pub const MODELS: usize = 10;
pub const TRUNC: usize = 10;
pub const MAX_WEIGHT: u32 = 4;

/// Tame class groups of order prime to `p`.
fn tame_shapes(p: u64) -> Vec<Vec<u64>> {
    match p {
        3 => vec![vec![2], vec![4], vec![2, 2], vec![5]],
        _ => vec![vec![2], vec![3], vec![4], vec![2, 2], vec![2, 3]],
    }
}

pub fn consistency<R: Backend>(ctx: &R::Ctx, p: u64, seed: u64) -> Trace<R> {
    guarded(|t| {
        let mut rng = rng(seed);
        let g = Arc::new(FormalGroupLaw::<R>::multiplicative(ctx, p, TRUNC)?);
        let psi = PsiSystem::new(p, 1);
        let shapes = tame_shapes(p);
        let chars_p: Vec<GenChar> = (0..p - 1).map(|a| GenChar::new(p, 1, a)).collect();
        let mut evaluations = 0;
        for model_index in 0..MODELS {
            let tame = FiniteAbelian::new(shapes[model_index % shapes.len()].clone())?;
            let labels = tame.elements();
            let masses: Vec<Vec<i64>> = labels
                .iter()
                .map(|_| (0..=TRUNC as u64).map(|u| if u % p == 0 { 0 } else { rng.gen_range(-5..=5) }).collect())
                .collect();
            let phi = masses
                .iter()
                .map(|b| DiscFunction::from_dirac(&g, &b.iter().map(|&x| R::from_i64(ctx, x)).collect::<Vec<_>>()))
                .collect();
            let ids = (0..labels.len()).map(|i| format!("y{i}")).collect();
            let model = CMCosetModel::new(tame.clone(), ids, labels.clone(), phi)?;
            for chi_tame in &labels {
                for chi_p in &chars_p {
                    let unit = to_unit(chi_p);
                    for k in 0..=MAX_WEIGHT {
                        let chi = ToyCharacter { tame: chi_tame.clone(), chi_p: unit.clone(), k };
                        let got = universal_period_eval(&model, &chi, &psi)?;
                        let want = double_sum(&got, &tame, &labels, &masses, chi_tame, chi_p, k)?;
                        t.check(got == want, || {
                            format!("model {model_index}, χ_tame = {chi_tame:?}, χ_p = {}, k = {k}: {got} ≠ {want}", chi_p.a)
                        });
                        t.record_quot(&got, ledger::character_transform(chi_p.conductor()));
                        evaluations += 1;
                        if k == 0 {
                            let (value, flag) = weight0_waldspurger_check(&model, &chi, &psi)?;
                            t.check(flag && value == got, || {
                                format!("model {model_index}: weight-0 check disagrees ({flag})")
                            });
                        }
                    }
                }
            }
        }
        if t.pass {
            t.detail = format!("{MODELS} models, {evaluations} evaluations match; weight-0 flag true");
        }
        Ok(())
    })
}

/// `|C|^{-1} Σ_y Π_i ζ_{n_i}^{χ_i y_i} Σ_u b_{y,u} χ_p(u) u^k` in the ring of `like`.
fn double_sum<R: Backend>(
    like: &QuotElem<R>,
    tame: &FiniteAbelian,
    labels: &[Vec<u64>],
    masses: &[Vec<i64>],
    chi_tame: &[u64],
    chi_p: &GenChar,
    k: u32,
) -> lt_kernel::Result<QuotElem<R>> {
    let ring = like.ring();
    let base = ring.base();
    let m = ring.cyclotomic_order().expect("cyclotomic period ring");
    let invariants = &tame.invariants;
    let mut acc = QuotElem::zero(ring);
    for (y, b) in labels.iter().zip(masses) {
        let exponent: u64 = invariants
            .iter()
            .zip(chi_tame.iter().zip(y))
            .map(|(&n, (&c, &x))| (c * x % n) * (m / n))
            .sum();
        let twist = ring.zeta_pow((exponent % m) as i64);
        let mut inner = QuotElem::zero(ring);
        for (u, &bu) in b.iter().enumerate() {
            if bu == 0 {
                continue;
            }
            let weight = R::from_int(base, &(BigInt::from(bu) * BigInt::from(u).pow(k)));
            inner = inner.add(&chi_p.value(ring, u as i64).mul(&ring.embed(weight)));
        }
        acc = acc.add(&twist.mul(&inner));
    }
    Ok(acc.div_int(&BigInt::from(labels.len()))?)
}
