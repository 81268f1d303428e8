use std::sync::Arc;

use lt_kernel::arith::{Ring, TruncatedSeries, Q};
use lt_kernel::lubin_tate::{lt_construct, FormalGroupLaw};
use lt_kernel::mellin::DiscFunction;
use proptest::prelude::*;

fn general_group(p: u64, d: usize) -> FormalGroupLaw<Q> {
    // f(T) = pT + T^p, a non-multiplicative Lubin-Tate polynomial
    let mut f = vec![Q::int(0); p as usize + 1];
    f[1] = Q::int(p as i64);
    f[p as usize] = Q::int(1);
    lt_construct(&(), p, &Q::int(p as i64), p, &f, d).unwrap()
}

#[test]
fn group_axioms_hold_for_both_models() {
    for p in [2, 3, 5] {
        let m = FormalGroupLaw::<Q>::multiplicative(&(), p, 8).unwrap();
        let g = general_group(p, 8);
        for (name, ok) in m.check_axioms(8).into_iter().chain(g.check_axioms(8)) {
            assert!(ok, "p = {p}: {name}");
        }
    }
}

#[test]
fn endomorphisms_commute_with_frobenius_and_add() {
    let g = general_group(3, 10);
    let f = TruncatedSeries::new(&(), 10, g.frobenius().to_vec());
    let two = g.endo(&Q::int(2)).unwrap();
    assert_eq!(two.compose(&f).unwrap(), f.compose(&two).unwrap());
    // [2] = F(T, T) on the diagonal
    let t = TruncatedSeries::<Q>::var(&(), 10);
    let diag = g
        .law()
        .terms()
        .map(|(i, j, c)| t.pow((i + j) as u64).scale(c))
        .fold(TruncatedSeries::zero(&(), 10), |a, b| a.add(&b));
    assert_eq!(two, diag);
}

#[test]
fn logarithm_is_additive() {
    for g in [general_group(3, 9), general_group(5, 7), FormalGroupLaw::multiplicative(&(), 2, 9).unwrap()] {
        let log = g.log().unwrap();
        assert!(log.additivity_defect(&g).is_zero());
    }
}

fn disc(g: &Arc<FormalGroupLaw<Q>>, coeffs: &[i64]) -> DiscFunction<Q> {
    DiscFunction::new(g, TruncatedSeries::from_ints(&(), g.trunc(), coeffs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Θ(φψ) = Θ(φ)ψ + φΘ(ψ) on polynomials whose product fits.
    #[test]
    fn theta_is_a_derivation(a in prop::collection::vec(-9i64..10, 5), b in prop::collection::vec(-9i64..10, 5)) {
        let g = Arc::new(FormalGroupLaw::<Q>::multiplicative(&(), 3, 10).unwrap());
        let (x, y) = (disc(&g, &a), disc(&g, &b));
        let prod = x.series().mul(y.series());
        let lhs = g.theta(&prod);
        let rhs = g.theta(x.series()).mul(y.series()).add(&x.series().mul(&g.theta(y.series())));
        prop_assert_eq!(lhs, rhs);
    }

    /// Θ commutes with translation by a torsion point.
    #[test]
    fn theta_commutes_with_translation(a in prop::collection::vec(-9i64..10, 7)) {
        let g = Arc::new(FormalGroupLaw::<Q>::multiplicative(&(), 3, 6).unwrap());
        let tor = g.torsion_ring(1).unwrap();
        let ring = tor.ring().clone();
        let phi = disc(&g, &a).series().map(&ring, |c| ring.embed(c.clone()));
        let t = tor.point();
        prop_assert_eq!(g.translate(&g.theta(&phi), &t), g.theta(&g.translate(&phi, &t)));
    }

    /// The general-model Θ is a derivation up to the degree it is known to.
    #[test]
    fn general_theta_is_a_derivation(a in prop::collection::vec(-9i64..10, 4), b in prop::collection::vec(-9i64..10, 4)) {
        let g = general_group(3, 8);
        let x = TruncatedSeries::<Q>::from_ints(&(), 8, &a);
        let y = TruncatedSeries::<Q>::from_ints(&(), 8, &b);
        let lhs = g.theta(&x.mul(&y));
        let rhs = g.theta(&x).mul(&y.truncate(7)).add(&x.truncate(7).mul(&g.theta(&y)));
        prop_assert_eq!(lhs, rhs);
    }
}
