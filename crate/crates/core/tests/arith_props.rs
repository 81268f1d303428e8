use lt_kernel::arith::{PAdicCtx, QuotCtx, QuotElem, Ring, TruncatedSeries, Zp, Q};
use num_bigint::BigInt;
use proptest::prelude::*;

fn axioms<R: Ring>(a: &R, b: &R, c: &R) {
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.mul(b), b.mul(a));
    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(a.sub(a), a.zero_like());
    assert_eq!(a.mul(&a.one_like()), *a);
}

fn small() -> impl Strategy<Value = i64> {
    -50i64..50
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals(a in small(), b in 1i64..20, c in small(), d in 1i64..20, e in small()) {
        axioms(&Q::new(a, b), &Q::new(c, d), &Q::int(e));
    }

    #[test]
    fn fixed_modulus(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let ctx = PAdicCtx::new(5, 12).unwrap();
        axioms(&Zp::from_i64(&ctx, a), &Zp::from_i64(&ctx, b), &Zp::from_i64(&ctx, c));
    }

    #[test]
    fn fixed_modulus_matches_integers(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        let ctx = PAdicCtx::new(3, 20).unwrap();
        let prod = Zp::from_i64(&ctx, a).mul(&Zp::from_i64(&ctx, b));
        prop_assert_eq!(prod, Zp::from_i64(&ctx, a * b));
    }

    #[test]
    fn cyclotomic(a in prop::collection::vec(small(), 4), b in prop::collection::vec(small(), 4), c in prop::collection::vec(small(), 4)) {
        let ring = QuotCtx::<Q>::cyclotomic(&(), 5);
        let el = |v: &[i64]| ring.from_poly(&v.iter().map(|&x| Q::int(x)).collect::<Vec<_>>());
        let (x, y, z) = (el(&a), el(&b), el(&c));
        axioms(&x, &y, &z);
        // ζ^5 = 1
        prop_assert!(ring.gen().pow(5).is_one());
    }

    #[test]
    fn series(a in prop::collection::vec(small(), 8), b in prop::collection::vec(small(), 8), c in prop::collection::vec(small(), 8)) {
        let s = |v: &[i64]| TruncatedSeries::<Q>::from_ints(&(), 7, v);
        axioms(&s(&a), &s(&b), &s(&c));
    }
}

fn random_series(rng: &mut impl rand::Rng, d: usize) -> TruncatedSeries<Q> {
    let mut v = vec![Q::int(0), Q::int(rng.gen_range(1..6) * if rng.gen() { 1 } else { -1 })];
    for _ in 2..=d {
        v.push(Q::new(rng.gen_range(-9..10), rng.gen_range(1..5)));
    }
    TruncatedSeries::new(&(), d, v)
}

#[test]
fn reversion_on_random_series() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let d = 12;
    let t = TruncatedSeries::<Q>::var(&(), d);
    for _ in 0..100 {
        let f = random_series(&mut rng, d);
        let g = f.revert().unwrap();
        assert_eq!(f.compose(&g).unwrap(), t);
        assert_eq!(g.compose(&f).unwrap(), t);
    }
}

/// Lagrange inversion: `[T^n] g = [T^{n-1}] (T/f)^n / n`.
#[test]
fn reversion_matches_lagrange_inversion() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
    let d = 9;
    for _ in 0..20 {
        let f = random_series(&mut rng, d);
        let g = f.revert().unwrap();
        // T/f as a series: shift f down by one
        let shifted = TruncatedSeries::new(&(), d, f.coeffs()[1..].to_vec());
        let q = shifted.inverse().unwrap();
        for n in 1..=d {
            let lag = q.pow(n as u64).coeff(n - 1).div_int(&BigInt::from(n)).unwrap();
            assert_eq!(g.coeff(n), lag, "coefficient {n}");
        }
    }
}

#[test]
fn fixed_modulus_division_tracks_loss() {
    let ctx = PAdicCtx::new(3, 10).unwrap();
    let x = Zp::from_i64(&ctx, 27 * 4);
    let y = x.div_int(&BigInt::from(9)).unwrap();
    assert_eq!(y.prec(), 8);
    assert_eq!(y, Zp::from_i64(&ctx, 12));
    assert!(Zp::from_i64(&ctx, 4).div_int(&BigInt::from(3)).is_err());
    let ring = QuotCtx::<Zp>::cyclotomic(&ctx, 3);
    let z: QuotElem<Zp> = ring.gen();
    assert!(z.pow(3).is_one());
}
