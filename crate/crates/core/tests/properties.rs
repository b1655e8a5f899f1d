use laumon::characters::{corr_tangent_char, tangent_char};
use laumon::fixedpoints::{enumerate, kostant_count, DegreeVector};
use laumon::symbolic::{eq_random, EvalPoint, ExponentVector, LaurentPoly, RatFunc};
use laumon::Error;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;

const NV: usize = 3;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::array::uniform3(-2i32..=2), -3i64..=3), 0..4).prop_map(|terms| {
        LaurentPoly::from_terms(
            NV,
            terms
                .into_iter()
                .map(|(e, c)| (ExponentVector::from_ints(&e), BigInt::from(c))),
        )
        .unwrap()
    })
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(a, b)| RatFunc::new(&a, &b).unwrap())
}

fn point(seed: u64) -> EvalPoint {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    EvalPoint::random(NV, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative_and_commutative(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        let l = &(&a + &b) + &c;
        let r = &a + &(&b + &c);
        prop_assert!(l.eq_exact(&r));
        prop_assert!((&a + &b).eq_exact(&(&b + &a)));
    }

    #[test]
    fn multiplication_distributes(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        let l = &a * &(&b + &c);
        let r = &(&a * &b) + &(&a * &c);
        prop_assert!(l.eq_exact(&r));
    }

    #[test]
    fn inverses(a in ratfunc()) {
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.checked_mul(&a.inv().unwrap()).unwrap().eq_exact(&RatFunc::one(NV)));
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), seed in any::<u64>()) {
        let pt = point(seed);
        match (a.eval(&pt), b.eval(&pt)) {
            (Ok(x), Ok(y)) => {
                prop_assert_eq!((&a + &b).eval(&pt).unwrap(), &x + &y);
                prop_assert_eq!((&a * &b).eval(&pt).unwrap(), &x * &y);
            }
            (Err(Error::Evaluation(_)), _) | (_, Err(Error::Evaluation(_))) => {}
            (Err(e), _) | (_, Err(e)) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn randomized_equality_agrees_with_exact(a in ratfunc(), b in ratfunc(), seed in 0u64..1000) {
        let exact = a.eq_exact(&b);
        let random = eq_random(&a, &b, 3, seed).unwrap();
        prop_assert_eq!(exact, random);
        prop_assert!(eq_random(&a, &a.clone(), 3, seed).unwrap());
    }

    #[test]
    fn seeded_points_are_deterministic(seed in any::<u64>()) {
        let (a, b) = (point(seed), point(seed));
        prop_assert_eq!(a.values(), b.values());
    }

    #[test]
    fn fixed_points_match_kostant_and_degree(n in 2usize..=4, raw in prop::collection::vec(0i32..=3, 3)) {
        let d = DegreeVector::new(raw[..n - 1].to_vec()).unwrap();
        let pts = enumerate(n, &d).unwrap();
        prop_assert_eq!(pts.len(), kostant_count(n, &d));
        for w in pts.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for p in &pts {
            prop_assert_eq!(&p.degree(), &d);
            let dim = tangent_char(p).dimension();
            prop_assert_eq!(dim, BigInt::from(2 * d.total()));
        }
    }

    #[test]
    fn raising_and_lowering_are_symmetric(n in 2usize..=4, raw in prop::collection::vec(0i32..=2, 3)) {
        let d = DegreeVector::new(raw[..n - 1].to_vec()).unwrap();
        for p in enumerate(n, &d).unwrap() {
            for i in 1..n {
                for (q, j) in p.raise(i) {
                    prop_assert!(q.lower(i).iter().any(|(r, k)| r == &p && *k == j));
                    prop_assert_eq!(p.raised_entry(&q), Some((i, j)));
                    let dim = corr_tangent_char(&p, &q).unwrap().dimension();
                    prop_assert_eq!(dim, BigInt::from(2 * d.total() + 1));
                }
                for (q, _) in p.lower(i) {
                    prop_assert!(q.raise(i).iter().any(|(r, _)| r == &p));
                }
            }
        }
    }
}
