use std::sync::Arc;

use lt_kernel::arith::{LaurentPoly, Q};
use lt_kernel::coleman::{coleman_primitive, disc_to_laurent, is_frobenius_proper, FrobeniusSpec, TorusDifferential};
use lt_kernel::lubin_tate::FormalGroupLaw;
use lt_kernel::mellin::{self, DiscFunction};
use proptest::prelude::*;

fn form() -> impl Strategy<Value = (i64, Vec<(i64, i64)>)> {
    (
        -9i64..10,
        prop::collection::vec((-6i64..7, -9i64..10), 0..8).prop_map(|v| v.into_iter().filter(|(e, _)| *e != -1).collect()),
    )
}

fn build((c, terms): &(i64, Vec<(i64, i64)>)) -> TorusDifferential<Q> {
    let h = LaurentPoly::from_terms(&(), terms.iter().map(|&(e, x)| (e, Q::int(x))));
    TorusDifferential::new(Q::int(*c), h).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn primitive_inverts_d_and_is_log_rigid(w in form(), q in 2u64..6) {
        let spec = FrobeniusSpec::torus(q).unwrap();
        let omega = build(&w);
        let f = coleman_primitive(&omega, &spec).unwrap();
        prop_assert_eq!(f.d(), omega.clone());
        prop_assert!(!spec.apply_to_function(&f).unwrap().has_log());
        // the properness witness integrates P(φ*)ω
        let pr = is_frobenius_proper(&omega, &spec).unwrap();
        let image = spec.apply_to_function(&f).unwrap();
        prop_assert_eq!(pr.witness.unwrap(), image.laurent.sub(&LaurentPoly::monomial(&(), 0, image.laurent.coeff(0))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn primitive_is_additive(a in form(), b in form(), s in -4i64..5) {
        let spec = FrobeniusSpec::torus(3).unwrap();
        let (x, y) = (build(&a), build(&b));
        let combo = x.scale(&Q::int(s)).add(&y);
        let lhs = coleman_primitive(&combo, &spec).unwrap();
        let rhs = coleman_primitive(&x, &spec).unwrap().scale(&Q::int(s)).add(&coleman_primitive(&y, &spec).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    /// On the multiplicative disc, `T = 1 + S` and `Θ = T d/dT`, so the stable
    /// primitive of `φ` is the Coleman primitive of `φ dT/T`, normalized to be stable.
    #[test]
    fn matches_stable_primitive(masses in prop::collection::vec(-9i64..10, 10)) {
        let g = Arc::new(FormalGroupLaw::<Q>::multiplicative(&(), 3, 9).unwrap());
        let mut b: Vec<Q> = masses.iter().map(|&x| Q::int(x)).collect();
        for (u, x) in b.iter_mut().enumerate() {
            if u % 3 == 0 {
                *x = Q::int(0);
            }
        }
        let phi = DiscFunction::from_dirac(&g, &b);
        let stable = mellin::stable_primitive(&phi).unwrap();
        let lp = disc_to_laurent(&phi).unwrap();
        // φ dT/T has no residue because b_0 = 0
        let omega = TorusDifferential::from_form(&lp.mul(&LaurentPoly::monomial(&(), -1, Q::int(1))));
        let f = coleman_primitive(&omega, &FrobeniusSpec::torus(3).unwrap()).unwrap();
        prop_assert!(!f.has_log());
        prop_assert_eq!(disc_to_laurent(&stable).unwrap(), f.laurent);
    }
}
