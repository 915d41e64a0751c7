mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::One;
use pvspace::case2::*;
use pvspace::oracle::split::{split_action_check, split_delta, to_split};
use pvspace::*;
use rand_chacha::ChaCha8Rng;

/// `Q[t]/(t(t − 1)(t + 1))`, a split cubic algebra.
fn split_cubic_q() -> Alg<Q> {
    EtaleAlgebra::make_extension(&Poly::from_i64(&[0, -1, 0, 1]), &[]).unwrap()
}

fn random_x<S: Scalar>(k1: &Alg<S>, r: &mut ChaCha8Rng, h: u32) -> V2Elem<S> {
    V2Elem::new(k1, S::sample(r, h), AlgElem::sample(k1, r, h), AlgElem::sample(k1, r, h), S::sample(r, h)).unwrap()
}

fn random_g<S: Scalar>(k1: &Alg<S>, r: &mut ChaCha8Rng, h: u32) -> GrpElt2<S> {
    GrpElt2::new(k1, unit(r, h), invertible_over(k1, 2, r, h)).unwrap()
}

fn coords<S: Scalar>(k1: &Alg<S>, c: [i64; 4]) -> V2Elem<S> {
    V2Elem::from_base(k1, c.map(S::from_i64)).unwrap()
}

#[test]
fn identity_and_tau() {
    let k1 = cube_root_two();
    let mut r = rng(1);
    for _ in 0..50 {
        let x = random_x(&k1, &mut r, 5);
        assert_eq!(act2(&GrpElt2::identity(&k1), &x).unwrap(), x);
        let t = GrpElt2::tau(&k1);
        assert_eq!(act2(&t, &act2(&t, &x).unwrap()).unwrap(), x);
    }
    let w = make_w2(&k1).unwrap();
    assert_eq!(act2(&GrpElt2::tau(&k1), &w).unwrap(), w);
}

#[test]
fn unipotent_on_w() {
    let k1 = cube_root_two();
    let mut r = rng(2);
    let w = make_w2(&k1).unwrap();
    for _ in 0..20 {
        let u = AlgElem::sample(&k1, &mut r, 5);
        let y = act_unipotent(&u, &w);
        let (e1, e2) = (u.trace(), u.e2());
        assert_eq!(y.x111, q(1));
        assert_eq!(y.x211, u);
        assert_eq!(y.x122, u.clone() * u.clone() - u.scale(&e1) + AlgElem::from_base(&k1, e2));
        assert_eq!(y.x222, q(1) + u.norm());
    }
}

#[test]
fn torus_formula() {
    let k1 = cyclic_cubic_q();
    let mut r = rng(3);
    for _ in 0..20 {
        let x = random_x(&k1, &mut r, 5);
        let (t1, t2) = (AlgElem::sample_unit(&k1, &mut r, 4), AlgElem::sample_unit(&k1, &mut r, 4));
        let y = act_torus(&t1, &t2, &x);
        let n1 = AlgElem::from_base(&k1, t1.norm());
        let n2 = AlgElem::from_base(&k1, t2.norm());
        let i1 = t1.inverse().unwrap();
        let i2 = t2.inverse().unwrap();
        assert_eq!(y.x111, t1.norm() * x.x111.clone());
        assert_eq!(y.x211, t2.clone() * i1 * n1 * x.x211.clone());
        assert_eq!(y.x122, t1.clone() * i2 * n2 * x.x122.clone());
        assert_eq!(y.x222, t2.norm() * x.x222.clone());
    }
}

#[test]
fn conjugate_identities_against_frobenius() {
    let k1 = ff::<F7>(3);
    let mut r = rng(4);
    for _ in 0..100 {
        let (x, u) = (AlgElem::sample(&k1, &mut r, 0), AlgElem::sample(&k1, &mut r, 0));
        let (us, uss) = (u.sigma(), u.sigma().sigma());
        let (xs, xss) = (x.sigma(), x.sigma().sigma());
        assert_eq!(adjoint_norm(&u), us.clone() * uss.clone());
        assert_eq!(cross_term(&x, &u), xss * us + xs * uss);
    }
}

#[test]
fn delta_examples() {
    let k1 = cube_root_two();
    assert_eq!(delta2(&make_w2(&k1).unwrap()), (q(1), true));
    assert_eq!(delta2(&coords(&k1, [3, 0, 0, -5])).0, q(225));
    let wa = make_w_alpha2(&k1, &form(&[1, 0, 1])).unwrap();
    assert_eq!(wa, coords(&k1, [2, 0, -2, 0]));
    assert_eq!(delta2(&wa), (q(-64), true));
    assert_eq!(classify2(&wa).unwrap(), ErLabel::quadratic(Some(BigInt::from(-1))));
    assert_eq!(classify2(&make_w2(&k1).unwrap()).unwrap(), ErLabel::trivial());
    assert_eq!(delta2(&coords(&k1, [0, 0, 0, 0])), (q(0), false));
    assert_eq!(classify2(&coords(&k1, [0, 0, 0, 1])).unwrap_err(), Error::NotSemistable);
}

#[test]
fn char_two_classification_refused() {
    let k1 = ff::<F2>(3);
    assert_eq!(classify2(&make_w2(&k1).unwrap()).unwrap_err(), Error::CharTwoUnsupported);
}

#[test]
fn degenerate_alpha() {
    let k1 = cube_root_two();
    assert_eq!(make_w_alpha2(&k1, &form(&[1, 2, 1])).unwrap_err(), Error::DegeneratePolynomial);
}

#[test]
fn rep2_examples() {
    let k1 = cube_root_two();
    let w = rep2(&k1, &Fiber2::Trivial(q(1), q(1))).unwrap();
    assert_eq!(w, make_w2(&k1).unwrap());
    let f = form::<Q>(&[1, 0, 1]);
    let ka = case1_root_algebra(&f);
    let one = AlgElem::one(&ka);
    assert_eq!(rep2(&k1, &Fiber2::Quadratic(f.clone(), one)).unwrap(), coords(&k1, [2, 0, -2, 0]));
    let a1 = AlgElem::basis(&ka, 1);
    // (Tr α1, −Tr α1², Tr α1³, −Tr α1⁴) with α1 = i
    let x = rep2(&k1, &Fiber2::Quadratic(f.clone(), a1)).unwrap();
    assert_eq!(x, coords(&k1, [0, 2, 0, -2]));
    assert_eq!(delta2(&x).0, q(-64));
    assert_eq!(rep2(&k1, &Fiber2::Trivial(q(0), q(1))).unwrap_err(), Error::NonUnit);
    let z = AlgElem::zero(&ka);
    assert_eq!(rep2(&k1, &Fiber2::Quadratic(f, z)).unwrap_err(), Error::NonUnit);
}

fn case1_root_algebra<S: Scalar>(f: &BinaryForm<S>) -> Alg<S> {
    pvspace::case1::quadratic_root_algebra(f).unwrap()
}

fn rep2_laws<S: Scalar>(k1: &Alg<S>, fs: &[BinaryForm<S>], seed: u64, h: u32) {
    let mut r = rng(seed);
    for f in fs {
        let ka = case1_root_algebra(f);
        let wa = rep2(k1, &Fiber2::Quadratic(f.clone(), AlgElem::one(&ka))).unwrap();
        assert_eq!(wa, make_w_alpha2(k1, f).unwrap());
        let d = f.disc().unwrap();
        assert_eq!(delta2(&wa).0, d.pow_u64(3));
        for _ in 0..5 {
            let b = AlgElem::sample_unit(&ka, &mut r, h);
            let x = rep2(k1, &Fiber2::Quadratic(f.clone(), b.clone())).unwrap();
            let n = b.norm();
            assert_eq!(delta2(&x).0, d.pow_u64(3) * n.clone() * n);
            if S::characteristic() != 2 {
                assert_eq!(classify2(&x).unwrap(), splitting_label(f).unwrap());
            }
        }
    }
    for _ in 0..5 {
        let (b1, b2) = (unit::<S>(&mut r, h), unit::<S>(&mut r, h));
        let x = rep2(k1, &Fiber2::Trivial(b1.clone(), b2.clone())).unwrap();
        let p = b1 * b2;
        assert_eq!(delta2(&x).0, p.clone() * p);
        if S::characteristic() != 2 {
            assert_eq!(classify2(&x).unwrap(), ErLabel::trivial());
        }
    }
}

#[test]
fn representatives_classify_to_their_fiber() {
    let mut r = rng(5);
    let fs: Vec<BinaryForm<Q>> = (0..20).map(|_| monic_squarefree(2, &mut r, -9, 9)).collect();
    rep2_laws(&cube_root_two(), &fs, 6, 4);
    rep2_laws(&cyclic_cubic_q(), &fs[..5], 7, 4);
    rep2_laws(&ff::<F7>(3), &all_monic_squarefree::<F7>(2), 8, 0);
    rep2_laws(&ff::<F2>(3), &all_monic_squarefree::<F2>(2), 9, 0);
}

fn action_laws<S: Scalar>(k1: &Alg<S>, seed: u64, h: u32, n: usize) {
    let mut r = rng(seed);
    for _ in 0..n {
        let x = random_x(k1, &mut r, h);
        let (g, hh) = (random_g(k1, &mut r, h), random_g(k1, &mut r, h));
        let gx = act2(&g, &x).unwrap();
        assert_eq!(act2(&g.mul(&hh).unwrap(), &x).unwrap(), act2(&g, &act2(&hh, &x).unwrap()).unwrap());
        assert_eq!(act2(&g.inverse(), &gx).unwrap(), x);
        assert_eq!(delta2(&gx).0, g.delta_factor() * delta2(&x).0);
        let c = g.chi();
        assert_eq!(g.delta_factor(), g.t.pow_u64(4) * c.clone() * c);
        if let Some(y) = act2_lu(&g, &x) {
            assert_eq!(y, gx);
        }
        let word = decompose(&g.g).unwrap();
        assert_eq!(word_matrix(k1, &word), g.g);
    }
}

#[test]
fn action_and_delta_equivariance_q() {
    action_laws(&cube_root_two(), 11, 3, 200);
    action_laws(&cyclic_cubic_q(), 12, 3, 200);
    action_laws(&split_cubic_q(), 13, 3, 200);
}

#[test]
fn action_and_delta_equivariance_finite() {
    action_laws(&ff::<F7>(3), 14, 0, 500);
    action_laws(&ff::<F2>(3), 15, 0, 500);
    action_laws(&ff::<F3>(3), 16, 0, 500);
}

#[test]
fn zero_divisor_entries_decompose() {
    let k1 = split_cubic_q();
    let o = AlgElem::one(&k1);
    let e = AlgElem::from_i64(&k1, &[1, 0, -1]);
    assert!(!e.is_unit() && !e.vanishes());
    let g = Matrix::from_rows(vec![vec![o.clone(), e.clone()], vec![e.clone() - o.clone(), o.clone()]]);
    let word = decompose(&g).unwrap();
    assert_eq!(word_matrix(&k1, &word), g);
}

#[test]
fn split_oracle_matches() {
    let mut r = rng(17);
    let rep = split_action_check(&ff::<F7>(3), 500, &mut r).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let rep = split_action_check(&ff::<F2>(3), 200, &mut r).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let rep = split_action_check(&ff::<F3>(3), 200, &mut r).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn identity_and_tau_in_split_form() {
    let k1 = ff::<F7>(3);
    let w = make_w2(&k1).unwrap();
    let mut r = rng(18);
    let x = random_x(&k1, &mut r, 0);
    let g = GrpElt2::identity(&k1);
    assert_eq!(to_split(&act2(&g, &x).unwrap()), to_split(&x));
    assert_eq!(to_split(&act2(&GrpElt2::tau(&k1), &w).unwrap()), to_split(&w));
}

#[test]
fn delta_formula_against_split_discriminant() {
    let k1 = ff::<F7>(3);
    let mut r = rng(19);
    for _ in 0..1000 {
        let x = random_x(&k1, &mut r, 0);
        assert_eq!(split_delta(&to_split(&x)), AlgElem::from_base(&k1, delta2(&x).0));
    }
}

fn classify_laws<S: Scalar>(k1: &Alg<S>, seed: u64, h: u32) {
    let mut r = rng(seed);
    let mut reps = vec![make_w2(k1).unwrap()];
    while reps.len() < 6 {
        let x = random_x(k1, &mut r, h);
        if delta2(&x).1 {
            reps.push(x);
        }
    }
    for x in reps {
        let l = classify2(&x).unwrap();
        let d = delta2(&x).0;
        let want = if d.is_square().unwrap() { ErLabel::trivial() } else { ErLabel::quadratic(d.square_class().unwrap()) };
        assert_eq!(l, want);
        for _ in 0..50 {
            let g = random_g(k1, &mut r, h);
            let y = act2(&g, &x).unwrap();
            assert_eq!(classify2(&y).unwrap(), l);
        }
    }
}

#[test]
fn classification_is_orbit_invariant() {
    classify_laws(&cube_root_two(), 21, 3);
    classify_laws(&ff::<F7>(3), 22, 0);
    classify_laws(&ff::<F5>(3), 23, 0);
}

fn stabilizer_laws<S: Scalar>(k1: &Alg<S>, fs: &[BinaryForm<S>], seed: u64, h: u32) {
    let mut r = rng(seed);
    let w = make_w2(k1).unwrap();
    for _ in 0..100 {
        let t = AlgElem::sample_unit(k1, &mut r, h);
        let u = AlgElem::sample_unit(k1, &mut r, h);
        let s = u.pow_u64(3) * AlgElem::from_base(k1, u.norm()).inverse().unwrap();
        let e = stab2_w(k1, &t, &s).unwrap();
        assert_eq!(act2(&e, &w).unwrap(), w);
    }
    for f in fs {
        let data = AlphaData2::new(k1, f).unwrap();
        let wa = make_w_alpha2(k1, f).unwrap();
        for _ in 0..100 {
            let c = AlgElem::embed_left(&data.composite, &AlgElem::sample_unit(k1, &mut r, h));
            let u = AlgElem::sample_unit(&data.composite, &mut r, h);
            let t21 = c * data.norm_one(&u).unwrap();
            let e = stab2_w_alpha(&data, &t21).unwrap();
            assert_eq!(act2(&e, &wa).unwrap(), wa);
        }
    }
}

#[test]
fn stabilizers_fix_targets() {
    stabilizer_laws(&cube_root_two(), &[form(&[1, 0, 1]), form(&[1, 1, -3])], 31, 3);
    stabilizer_laws(&ff::<F7>(3), &[form(&[1, 0, 1]), form(&[1, 0, -1])], 32, 0);
    stabilizer_laws(&ff::<F2>(3), &[form(&[1, 1, 1])], 33, 0);
}

#[test]
fn stabilizer_examples() {
    let k1 = ff::<F7>(3);
    let t = AlgElem::basis(&k1, 1);
    let s = t.clone() * t.pow_u64(7).inverse().unwrap();
    assert!(s.norm().is_one());
    let e = stab2_w(&k1, &t, &s).unwrap();
    let w = make_w2(&k1).unwrap();
    assert_eq!(act2(&e, &w).unwrap(), w);
    let one = AlgElem::one(&k1);
    assert_eq!(stab2_w(&k1, &one, &one).unwrap(), GrpElt2::identity(&k1));
    let e = stab2_w(&k1, &t, &one).unwrap();
    assert_eq!(e.t, t.norm().inverse().unwrap());
    let bad = stab2_w(&k1, &t, &t).unwrap_err();
    assert!(matches!(bad, Error::NormConditionUnsatisfiable(_)));
}

#[test]
fn json_roundtrip() {
    let k1 = cube_root_two();
    let mut r = rng(41);
    for _ in 0..10 {
        let x = random_x(&k1, &mut r, 4);
        assert_eq!(pvspace::json::v2_from_json::<Q>(&pvspace::json::v2_to_json(&x)).unwrap(), x);
        let g = random_g(&k1, &mut r, 4);
        assert_eq!(pvspace::json::grp2_from_json::<Q>(&pvspace::json::grp2_to_json(&g)).unwrap(), g);
    }
}
