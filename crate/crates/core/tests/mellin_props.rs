use std::sync::Arc;

use lt_kernel::arith::{Ring, TruncatedSeries, Q};
use lt_kernel::global_toy::{period_ring, universal_period_eval, CMCosetModel, FiniteAbelian, ToyCharacter};
use lt_kernel::lubin_tate::{lt_construct, FormalGroupLaw};
use lt_kernel::mellin::{self, DiscFunction, PsiSystem, UnitChar};
use proptest::prelude::*;

fn mult(p: u64, d: usize) -> Arc<FormalGroupLaw<Q>> {
    Arc::new(FormalGroupLaw::multiplicative(&(), p, d).unwrap())
}

fn stable_from(g: &Arc<FormalGroupLaw<Q>>, coeffs: &[i64]) -> DiscFunction<Q> {
    let raw = DiscFunction::new(g, TruncatedSeries::from_ints(&(), g.trunc(), coeffs));
    mellin::stabilize(&raw).unwrap()
}

/// On `φ = g([p]S)` every translate by `Ker[p]` is `φ` itself, so the witness
/// is `p·φ` to the precision the window promises.
#[test]
fn general_model_witness_on_pullbacks() {
    let p = 3u64;
    let d = 9;
    let f = vec![Q::int(0), Q::int(3), Q::int(0), Q::int(1)];
    let g = Arc::new(lt_construct::<Q>(&(), p, &Q::int(3), p, &f, d).unwrap());
    let frob = TruncatedSeries::new(&(), d, f.clone());
    for inner in [[1i64, 2, 0], [0, 1, -1], [4, 0, 5]] {
        let outer = TruncatedSeries::<Q>::from_ints(&(), d, &inner);
        let phi = DiscFunction::new(&g, outer.compose_polynomial(&frob));
        let st = mellin::is_stable(&phi).unwrap();
        let window = st.window.expect("general model reports a window");
        for (j, need) in window.iter().enumerate() {
            let diff = st.witness.coeff(j).sub(&phi.series().coeff(j).mul_int(p as i64));
            assert!(diff.valuation(p).is_none_or(|v| v >= *need as i64), "coefficient {j}: {diff}");
        }
    }
    // a constant has witness p, which is not small enough to be stable
    let one = DiscFunction::new(&g, TruncatedSeries::constant(&(), d, Q::int(1)));
    assert!(!mellin::is_stable(&one).unwrap().stable);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn mellin_at_character_is_linear(
        a in prop::collection::vec(-9i64..10, 9),
        b in prop::collection::vec(-9i64..10, 9),
        s in -5i64..6,
        k in 0u32..3,
        which in 0usize..4,
    ) {
        let g = mult(5, 8);
        let psi = PsiSystem::new(5, 1);
        let chi = &UnitChar::all_of_level(5, 1)[which];
        let (x, y) = (stable_from(&g, &a), stable_from(&g, &b));
        let combo = x.scale(&Q::int(s)).add(&y);
        let lhs = mellin::mellin_at_character(&combo, chi, k, &psi).unwrap();
        let mx = mellin::mellin_at_character(&x, chi, k, &psi).unwrap();
        let my = mellin::mellin_at_character(&y, chi, k, &psi).unwrap();
        let ring = lhs.coeff_ctx().clone();
        prop_assert_eq!(lhs, mx.scale(&ring.embed(Q::int(s))).add(&my));
    }

    /// Translating the CM points by `c` multiplies the period by `χ_tame(c)^{-1}`.
    #[test]
    fn universal_period_is_equivariant(
        masses in prop::collection::vec(prop::collection::vec(-4i64..5, 4), 6),
        c0 in 0u64..2,
        c1 in 0u64..3,
        t0 in 0u64..2,
        t1 in 0u64..3,
        k in 0u32..3,
    ) {
        let p = 5;
        let g = mult(p, 6);
        let tame = FiniteAbelian::new(vec![2, 3]).unwrap();
        let labels = tame.elements();
        let phi = masses
            .iter()
            .map(|m| {
                // Dirac masses at the units 1..4
                let mut b = vec![Q::int(0); 7];
                for (i, &x) in m.iter().enumerate() {
                    b[i + 1] = Q::int(x);
                }
                DiscFunction::from_dirac(&g, &b)
            })
            .collect();
        let ids = (0..6).map(|i| format!("y{i}")).collect();
        let model = CMCosetModel::new(tame.clone(), ids, labels, phi).unwrap();
        let psi = PsiSystem::new(p, 1);
        let chi_p = UnitChar::all_of_level(p, 1)[1].clone();
        let chi = ToyCharacter { tame: vec![t0, t1], chi_p: chi_p.clone(), k };
        let c = vec![c0, c1];
        let moved = universal_period_eval(&model.translate(&c).unwrap(), &chi, &psi).unwrap();
        let base = universal_period_eval(&model, &chi, &psi).unwrap();
        let ring = period_ring::<Q>(&(), &tame, &chi_p);
        let step = (ring.cyclotomic_order().unwrap() / tame.exponent()) as i64;
        let factor = ring.zeta_pow(-tame.pairing(&chi.tame, &c) * step);
        prop_assert_eq!(moved, base.mul(&factor));
    }
}
