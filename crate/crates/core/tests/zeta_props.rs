use lt_kernel::arith::{QuotCtx, QuotElem, Ring, Q};
use lt_kernel::local_factors::{LocalRep, MultChar};
use lt_kernel::mellin::characters::value_ring_order;
use lt_kernel::mellin::UnitChar;
use lt_kernel::wald_local::{zeta, KirillovVector};
use num_bigint::BigInt;
use proptest::prelude::*;

type C = QuotElem<Q>;

const L: u64 = 5;

fn ring() -> QuotCtx<Q> {
    QuotCtx::cyclotomic(&(), value_ring_order(L, 2))
}

fn vector(ring: &QuotCtx<Q>, masses: &[(u64, i64, i64)]) -> KirillovVector<C> {
    // depth-2 cosets rep(1+25) at ϖ^vpi; reps are distinct mod 25 per vpi
    let cosets = masses
        .iter()
        .map(|&(rep, vpi, c)| (lt_kernel::local_factors::Coset::new(L, rep, 2, vpi).unwrap(), ring.embed(Q::int(c))))
        .collect();
    KirillovVector::new(L, cosets, None).unwrap()
}

fn masses() -> impl Strategy<Value = Vec<(u64, i64, i64)>> {
    prop::collection::btree_map((1u64..25).prop_filter("unit", |r| r % 5 != 0), (-1i64..3, -6i64..7), 0..5)
        .prop_map(|m| m.into_iter().map(|(r, (v, c))| (r, v, c)).collect())
}

fn rep(ring: &QuotCtx<Q>) -> LocalRep<C> {
    LocalRep::Principal(
        MultChar::unramified(L, ring.embed(Q::new(1, 3))),
        MultChar::unramified(L, ring.embed(Q::int(2))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn zeta_is_linear(a in masses(), b in masses(), which in 0usize..20, pi in 1i64..4) {
        let ring = ring();
        let chi_unit = UnitChar::all_of_level(L, 2)[which].clone();
        let chi = MultChar::new(chi_unit, ring.embed(Q::int(pi)));
        let (x, y) = (vector(&ring, &a), vector(&ring, &b));
        // disjointness is not guaranteed between a and b, so compare against scaling
        let two = ring.embed(Q::int(2));
        let lhs = zeta(&ring, &x.scale(&two).unwrap(), &chi, &rep(&ring)).unwrap();
        prop_assert_eq!(lhs, zeta(&ring, &x, &chi, &rep(&ring)).unwrap().mul(&two));
        let sum = zeta(&ring, &x, &chi, &rep(&ring)).unwrap().add(&zeta(&ring, &y, &chi, &rep(&ring)).unwrap());
        let merged = merge(&ring, &a, &b);
        prop_assert_eq!(zeta(&ring, &merged, &chi, &rep(&ring)).unwrap(), sum);
    }

    /// Coset integrals against a brute-force sum over `(O/l^2)^×` at each valuation.
    #[test]
    fn coset_zeta_matches_brute_force(a in masses(), which in 0usize..20, pi in 1i64..4) {
        prop_assume!(!a.is_empty());
        let ring = ring();
        let chi = MultChar::new(UnitChar::all_of_level(L, 2)[which].clone(), ring.embed(Q::int(pi)));
        let f = vector(&ring, &a);
        let r = rep(&ring);
        let mut total = C::zero(&ring);
        for v in -1..3 {
            for u in (1..25u64).filter(|u| u % L != 0) {
                let term = f.eval(v, u).unwrap().mul(&chi.value(&ring, v, u as i64).unwrap());
                total = total.add(&term);
            }
        }
        let total = total.div_int(&BigInt::from(20)).unwrap();
        let l_inv = r.twisted_l(&chi).roots.iter().fold(C::one(&ring), |acc, x| acc.mul(&C::one(&ring).sub(x)));
        prop_assert_eq!(zeta(&ring, &f, &chi, &r).unwrap(), l_inv.mul(&total));
    }
}

/// The vector whose masses are the sums of those of `a` and `b`.
fn merge(ring: &QuotCtx<Q>, a: &[(u64, i64, i64)], b: &[(u64, i64, i64)]) -> KirillovVector<C> {
    let mut m = std::collections::BTreeMap::new();
    for &(r, v, c) in a.iter().chain(b) {
        *m.entry((r, v)).or_insert(0) += c;
    }
    let flat: Vec<_> = m.into_iter().map(|((r, v), c)| (r, v, c)).collect();
    vector(ring, &flat)
}
