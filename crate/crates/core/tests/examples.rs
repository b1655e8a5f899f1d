//! Worked examples with hand-derived expected values.

use laumon::characters::*;
use laumon::fixedpoints::*;
use laumon::report::CheckOptions;
use laumon::symbolic::*;
use laumon::umodule::*;
use laumon::whittaker::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;

fn dv(v: &[i32]) -> DegreeVector {
    DegreeVector::new(v.to_vec()).unwrap()
}

fn fp(n: usize, rows: &[&[i32]]) -> FixedPoint {
    FixedPoint::new(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn w(n: usize) -> Weight {
    Weight::one(n)
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn rational_arithmetic() {
    let n = 1;
    let t1 = w(n).t(1, 1).rat();
    let v = w(n).v(1).rat();
    assert!((&(&t1 + &v) + &t1.neg()).eq_exact(&v));
    let sq = &(&t1 + &v) * &(&t1 - &v);
    assert!(sq.eq_exact(&(&w(n).t(1, 2).rat() - &w(n).v(2).rat())));
    let a = w(n).v(2).one_minus().inv().unwrap();
    let b = w(n).v(-2).one_minus().inv().unwrap();
    assert!((&a + &b).eq_exact(&RatFunc::one(2)));
    assert!((&w(n).t(1, 1).v(1).rat() / &t1).eq_exact(&v));
    assert!(!v.eq_exact(&w(n).v(-1).rat()));
    assert!(!eq_random(&v, &w(n).v(-1).rat(), 3, 11).unwrap());
    let (pt, pv) = (LaurentPoly::var(2, 0), LaurentPoly::var(2, 1));
    let diff_sq = RatFunc::new(&(&(&pt * &pt) - &(&pv * &pv)), &(&pt - &pv)).unwrap();
    assert!(diff_sq.eq_exact(&(&t1 + &v)));
}

#[test]
fn evaluation_values() {
    let x = Weight::one(1).v(2).one_minus().inv().unwrap();
    assert_eq!(x.eval(&EvalPoint::new(vec![q(1, 1), q(2, 1)])).unwrap(), q(-1, 3));
    let m = Weight::one(2).t(1, 1).t(2, 1).rat();
    assert_eq!(m.eval(&EvalPoint::from_ints(&[2, 3, 1])).unwrap(), q(6, 1));
    let blk = geometric_block(0, 2, &ExponentVector::zero(2));
    let want = LaurentPoly::from_terms(
        2,
        [0, 2, 4].map(|e| (ExponentVector::from_ints(&[0, e]), BigInt::from(1))),
    )
    .unwrap();
    assert_eq!(blk, want);
    assert!(geometric_block(3, 2, &ExponentVector::zero(2)).is_zero());
}

#[test]
fn fixed_point_listings() {
    assert_eq!(enumerate(2, &dv(&[3])).unwrap(), vec![fp(2, &[&[3]])]);
    let pts = enumerate(3, &dv(&[1, 1])).unwrap();
    assert_eq!(pts.len(), 2);
    assert!(pts.contains(&fp(3, &[&[1], &[1, 0]])));
    assert!(pts.contains(&fp(3, &[&[1], &[0, 1]])));
    assert_eq!(enumerate(3, &dv(&[0, 1])).unwrap(), vec![fp(3, &[&[0], &[0, 1]])]);
    assert_eq!(kostant_count(3, &dv(&[2, 1])), 2);
    for k in 0..6 {
        assert_eq!(kostant_count(2, &dv(&[k])), 1);
    }
}

#[test]
fn raising_and_lowering_examples() {
    let succ = fp(3, &[&[1], &[0, 1]]).raise(2);
    assert_eq!(succ.len(), 2);
    assert_eq!(fp(3, &[&[0], &[0, 0]]).raise(1), vec![(fp(3, &[&[1], &[0, 0]]), 1)]);
    assert_eq!(fp(3, &[&[1], &[1, 0]]).lower(2), vec![(fp(3, &[&[1], &[0, 0]]), 1)]);
    assert_eq!(fp(2, &[&[1]]).lower(1), vec![(fp(2, &[&[0]]), 1)]);
}

#[test]
fn hom_characters() {
    assert!(hom_char(3, 2, 1, 2, 2).poly().eq(&w(3).t(2, 2).t(1, -2).poly()));
    let m = w(2).t(2, 2).t(1, -2);
    // sections 1 and z^{-1}; z carries v^{-2}
    let want = &m.poly() + &m.clone().v(2).poly();
    assert_eq!(hom_char(2, 1, 1, 0, 2).poly(), &want);
    assert!(hom_char(2, 0, 1, 1, 2).poly().is_zero());
}

#[test]
fn tangent_dimensions() {
    assert!(tangent_char(&FixedPoint::zero(2)).poly().is_zero());
    let t = tangent_char(&fp(2, &[&[1]]));
    assert_eq!(t.poly().len(), 2);
    assert_eq!(t.dimension(), BigInt::from(2));
    for p in enumerate(3, &dv(&[1, 1])).unwrap() {
        assert_eq!(tangent_char(&p).dimension(), BigInt::from(4));
    }
    let c = corr_tangent_char(&FixedPoint::zero(2), &fp(2, &[&[1]])).unwrap();
    assert_eq!(c.dimension(), BigInt::from(1));
}

#[test]
fn line_weights() {
    let l = |p: FixedPoint, q: FixedPoint| corr_line_weight(&p, &q).unwrap().rat();
    assert!(l(fp(2, &[&[0]]), fp(2, &[&[1]])).eq_exact(&w(2).t(1, 2).rat()));
    assert!(l(fp(2, &[&[1]]), fp(2, &[&[2]])).eq_exact(&w(2).t(1, 2).v(-2).rat()));
    assert!(l(fp(3, &[&[1], &[0, 1]]), fp(3, &[&[1], &[1, 1]])).eq_exact(&w(3).t(1, 2).rat()));
}

#[test]
fn localization_factors() {
    let zero = Character::zero(2);
    assert!(sym_inverse(&zero, Convention::A).unwrap().eq_exact(&RatFunc::one(3)));
    let v2 = Character::new(w(2).v(2).poly());
    assert!(sym_inverse(&v2, Convention::A)
        .unwrap()
        .eq_exact(&w(2).v(2).one_minus().inv().unwrap()));
    let s = sym_inverse(&tangent_char(&fp(2, &[&[1]])), Convention::A).unwrap();
    let x = s.eval(&EvalPoint::from_ints(&[2, 3, 5])).unwrap();
    assert!(x != q(0, 1));
}

#[test]
fn det_rgamma_examples() {
    for n in 2..=4 {
        let want = (1..=n).fold(w(n), |acc, j| acc.t(j, 2 * (n - j) as i32));
        assert!(det_rgamma_weight(&FixedPoint::zero(n)).rat().eq_exact(&want.rat()));
    }
    for n in 2..=3 {
        for d in DegreeVector::all_up_to_total(n, 3) {
            for p in enumerate(n, &d).unwrap() {
                for i in 1..n {
                    for (up, _) in p.raise(i) {
                        let ratio = det_rgamma_weight(&p).times(&det_rgamma_weight(&up).inv());
                        let lambda = corr_line_weight(&p, &up).unwrap();
                        assert!(ratio.rat().eq_exact(&lambda.rat()));
                    }
                }
            }
        }
    }
}

#[test]
fn structure_sheaf_examples() {
    let k0 = structure_sheaf_vector(3, &DegreeVector::zero(3), Convention::A).unwrap();
    assert!(k0.eq_exact(&ModuleVector::basis(&FixedPoint::zero(3))).unwrap());
    let k1 = structure_sheaf_vector(2, &dv(&[1]), Convention::A).unwrap();
    assert_eq!(k1.len(), 1);
    let (_, c) = k1.iter().next().unwrap();
    assert_eq!(c.factors().count(), 2);
}

#[test]
fn cartan_and_levi_scalars() {
    let k = k_scalar(3, 1, &dv(&[1, 1])).rat();
    assert!(k.eq_exact(&w(3).t(2, 1).t(1, -1).v(2).rat()));
    assert!(k_scalar(2, 1, &dv(&[0])).rat().eq_exact(&w(2).t(2, 1).t(1, -1).v(1).rat()));
    assert!(l_scalar(3, 1, &dv(&[0, 0])).rat().eq_exact(&w(3).t(1, -1).v(1).rat()));
    assert!(l_scalar(4, 1, &dv(&[0, 0, 0])).rat().eq_exact(&w(4).t(1, -1).v_halves(3).rat()));
}

#[test]
fn twisted_generators_rescale_by_cartan() {
    let n = 3;
    for d in DegreeVector::all_up_to_total(n, 3) {
        for p in enumerate(n, &d).unwrap() {
            for i in 1..n {
                for (q, _) in p.lower(i) {
                    let f = GradedOperator::closed(n, Generator::F(i)).unwrap().entry(&p, &q).unwrap();
                    let small = GradedOperator::closed(n, Generator::SmallF(i)).unwrap().entry(&p, &q).unwrap();
                    let k = k_scalar(n, i, &q.degree()).pow(-(i as i32)).rat();
                    assert!(small.eq_exact(&f.checked_mul(&k).unwrap()));
                    let loc = GradedOperator::new(n, Generator::SmallF(i), Path::Localized, Convention::A)
                        .unwrap()
                        .entry(&p, &q)
                        .unwrap();
                    assert!(small.eq_exact(&loc));
                }
            }
        }
    }
}

#[test]
fn commutator_on_lowest_vector() {
    let n = 2;
    let tr = Truncation::new(n, 2).unwrap();
    let x = ModuleVector::basis(&FixedPoint::zero(n));
    let e = GradedOperator::closed(n, Generator::E(1)).unwrap();
    let f = GradedOperator::closed(n, Generator::F(1)).unwrap();
    assert!(apply(&f, &x, &tr).unwrap().is_none());
    let ef = apply_word(&[e, f], &x, &tr).unwrap();
    assert!(ef.is_none());
    let fe = apply_word(&[f, e], &x, &tr).unwrap().unwrap();
    let kk = &w(n).t(2, 1).t(1, -1).v(1).rat() - &w(n).t(1, 1).t(2, -1).v(-1).rat();
    let want = kk.checked_div(&(&w(n).v(1).rat() - &w(n).v(-1).rat())).unwrap();
    assert!(fe.coefficient(&FixedPoint::zero(n)).neg().eq_exact(&want));
}

#[test]
fn boundary_application_is_dropped() {
    let tr = Truncation::new(2, 1).unwrap();
    let x = ModuleVector::basis(&fp(2, &[&[1]]));
    let e = GradedOperator::closed(2, Generator::E(1)).unwrap();
    assert!(apply(&e, &x, &tr).unwrap().is_none());
}

#[test]
fn mrak_examples() {
    let rows = MrakRows::new(2, 1, vec![], vec![0], vec![0, 0]).unwrap();
    assert!(verify_mrak(&rows, true, &CheckOptions::default()).unwrap());
    let s = mrak_substituted(1).unwrap();
    assert!(s.lhs.eq_exact(&s.rhs));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let rows = MrakRows::random(4, 3, 3, &mut rng).unwrap();
    let opts = CheckOptions {
        seed: 7,
        trials: 5,
        ..CheckOptions::default()
    };
    assert!(verify_mrak(&rows, false, &opts).unwrap());
    assert!(verify_mrak(&rows, true, &opts).unwrap());
}

#[test]
fn partial_fractions() {
    for i in 1..=4 {
        assert!(partial_fraction_identity(i).unwrap());
    }
    assert!(localized_sum_identity(4).unwrap());
}

#[test]
fn whittaker_examples() {
    let opts = CheckOptions::default();
    let k0 = whittaker_k(2, &dv(&[0]), opts.conv).unwrap();
    let w0 = whittaker_w(2, &dv(&[0]), opts.conv).unwrap();
    let b = ModuleVector::basis(&FixedPoint::zero(2));
    assert!(k0.eq_exact(&b).unwrap() && w0.eq_exact(&b).unwrap());
    let kw = pair_kw(2, &dv(&[0]), opts.conv).unwrap();
    assert!(kw.via_pairing.eq_exact(&RatFunc::one(3)));
    for d in DegreeVector::all_up_to_total(3, 3) {
        let kw = pair_kw(3, &d, opts.conv).unwrap();
        assert!(kw.via_pairing.eq_exact(&kw.via_rgamma), "{d:?}");
    }
    let k = whittaker_k(3, &dv(&[1, 1]), opts.conv).unwrap();
    let w = whittaker_w(3, &dv(&[1, 1]), opts.conv).unwrap();
    assert!(shapovalov_pair(&k, &w, opts.conv)
        .unwrap()
        .eq_exact(&shapovalov_pair(&w, &k, opts.conv).unwrap()));
}
