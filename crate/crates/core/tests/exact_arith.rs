mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use pvspace::*;
use rand::Rng;

#[test]
fn gaussian_over_f7() {
    let k1 = EtaleAlgebra::<F7>::make_extension(&Poly::from_i64(&[1, 0, 1]), &[vec![F7::from_i64(0), F7::from_i64(-1)]]).unwrap();
    assert_eq!(k1.group_order(), 2);
    let t = AlgElem::basis(&k1, 1);
    assert_eq!(t.sigma(), -t.clone());
    assert_eq!(t.sigma().sigma(), t);
    assert_eq!(t.frobenius(), t.sigma());
    assert_eq!(k1.is_field(), Some(true));
}

#[test]
fn real_quadratic_and_split() {
    let k = quad_q(2);
    assert_eq!(k.is_field(), Some(true));
    let split = quad_q(4);
    assert_eq!(split.is_field(), Some(false));
    assert_eq!(split.group_order(), 2);
    let e = AlgElem::from_i64(&split, &[2, 1]);
    assert!(!e.is_unit());
    let err = EtaleAlgebra::<Q>::make_extension(&Poly::from_i64(&[1, -2, 1]), &[]).unwrap_err();
    assert_eq!(err, Error::NotSquarefree);
}

#[test]
fn bad_automorphisms() {
    let p = Poly::from_i64(&[-2, 0, 1]);
    assert_eq!(EtaleAlgebra::<Q>::make_extension(&p, &[vec![q(1), q(1)]]).unwrap_err(), Error::NotARoot(0));
    // t(t − 1)(t + 1) with t ↦ 0 is not bijective
    let p = Poly::from_i64(&[0, -1, 0, 1]);
    assert_eq!(EtaleAlgebra::<Q>::make_extension(&p, &[vec![q(0)]]).unwrap_err(), Error::NotAnAutomorphism(0));
}

#[test]
fn char_polys() {
    let k1 = EtaleAlgebra::<F7>::make_extension(&Poly::from_i64(&[1, 0, 1]), &[vec![F7::from_i64(0), F7::from_i64(-1)]]).unwrap();
    let x = AlgElem::from_i64(&k1, &[1, 1]);
    assert_eq!(x.char_poly(), Poly::from_i64(&[2, -2, 1]));
    assert_eq!(x.norm(), F7::from_i64(2));
    assert_eq!(x.trace(), F7::from_i64(2));

    let k = cube_root_two();
    let c = AlgElem::from_base(&k, qr(3, 2));
    assert_eq!(c.char_poly(), Poly::new(vec![-qr(27, 8), qr(27, 4), -qr(9, 2), q(1)]));
    assert_eq!(c.norm(), qr(27, 8));
    let t = AlgElem::basis(&k, 1);
    assert_eq!(t.char_poly(), Poly::from_i64(&[-2, 0, 0, 1]));
    assert_eq!(t.norm(), q(2));
    assert_eq!(t.trace(), q(0));
}

#[test]
fn tensor_examples() {
    let c = EtaleAlgebra::tensor(&cube_root_two(), &gaussian());
    assert_eq!(c.dim(), 6);
    assert_eq!(c.is_field(), Some(true));

    let a = cube_root_two();
    let ab = EtaleAlgebra::tensor(&a, &EtaleAlgebra::base());
    assert_eq!(ab.dim(), 3);
    let mut r = rng(1);
    for _ in 0..20 {
        let (x, y) = (AlgElem::sample(&a, &mut r, 5), AlgElem::sample(&a, &mut r, 5));
        let (ex, ey) = (AlgElem::embed_left(&ab, &x), AlgElem::embed_left(&ab, &y));
        assert_eq!((ex * ey).left_part().unwrap(), x * y);
    }

    let g = EtaleAlgebra::<F7>::make_extension(&Poly::from_i64(&[1, 0, 1]), &[vec![F7::from_i64(0), F7::from_i64(-1)]]).unwrap();
    let gg = EtaleAlgebra::tensor(&g, &g);
    assert_eq!(gg.is_field(), Some(false));
    assert_eq!(gg.group_order(), 4);
}

#[test]
fn base_mismatch_from_json() {
    let t = pvspace::json::tower_to_json(&gaussian());
    assert_eq!(pvspace::json::tower_from_json::<F7>(&t).unwrap_err(), Error::BaseMismatch);
}

#[test]
fn discriminants() {
    assert_eq!(binary_form_disc(&form::<Q>(&[0, 1, 0])).unwrap(), q(1));
    assert_eq!(binary_form_disc(&form::<Q>(&[1, 0, -1, 0])).unwrap(), q(4));
    for (a, b, c) in [(1, 1, 1), (1, 0, 1), (0, 1, 0), (1, 1, 0)] {
        let f = form::<F2>(&[a, b, c]);
        let b = F2::from_i64(b);
        assert_eq!(binary_form_disc(&f).unwrap(), b * b);
    }
    assert_eq!(binary_form_disc(&form::<Q>(&[1, 0])).unwrap_err(), Error::UnsupportedDegree(1));
    // characteristic 3
    let f = form::<F3>(&[1, 0, 0, 1]);
    assert_eq!(binary_form_disc(&f).unwrap(), F3::zero());
    let f = form::<F3>(&[1, 0, -1, 1]);
    assert_eq!(binary_form_disc(&f).unwrap(), F3::from_i64(4 - 27));
}

#[test]
fn factorizations() {
    let f = form::<F7>(&[1, 0, -1]);
    let fac = factor_binary_form(&f).unwrap();
    assert!(fac.is_split());
    assert_eq!(fac.expand(), f);
    let f = form::<Q>(&[1, 0, 1]);
    let fac = factor_binary_form(&f).unwrap();
    assert_eq!(fac.degrees(), vec![2]);
    assert_eq!(fac.expand(), f);
    let f = form::<Q>(&[0, -1, -1, 0]);
    let fac = factor_binary_form(&f).unwrap();
    assert_eq!(fac.degrees(), vec![1, 1, 1]);
    assert_eq!(fac.expand(), f);
}

#[test]
fn squares() {
    assert!(F7::from_i64(2).is_square().unwrap());
    assert!(!F7::from_i64(3).is_square().unwrap());
    assert!(qr(4, 9).is_square().unwrap());
    assert!(!q(2).is_square().unwrap());
    assert_eq!(q(0).is_square().unwrap_err(), Error::ZeroInput);
    let k = ff::<F7>(2);
    assert!(AlgElem::from_base(&k, F7::from_i64(3)).is_square().unwrap());
    let k = ff::<F2>(3);
    for x in AlgElem::all(&k).into_iter().skip(1) {
        assert!(x.is_square().unwrap());
    }
}

#[test]
fn norm_test_examples() {
    let m1 = BigInt::from(-1);
    assert!(is_norm_quadratic_rational(&m1, &q(2)).unwrap());
    assert!(!is_norm_quadratic_rational(&m1, &q(-1)).unwrap());
    assert!(!is_norm_quadratic_rational(&m1, &q(3)).unwrap());
    assert!(!is_norm_quadratic_rational(&m1, &q(7)).unwrap());
    assert_eq!(is_norm_quadratic_rational(&BigInt::from(4), &q(2)).unwrap_err(), Error::DIsSquare);
    assert_eq!(is_norm_quadratic_rational(&m1, &q(0)).unwrap_err(), Error::ZeroBeta);
    assert!(is_norm_quadratic_rational(&BigInt::from(2), &q(-1)).unwrap());
    assert!(is_norm_quadratic_rational(&BigInt::from(5), &qr(-1, 4)).unwrap());
}

#[test]
fn labels() {
    assert_eq!(splitting_label(&form::<Q>(&[0, 1, 0])).unwrap(), ErLabel::trivial());
    assert_eq!(splitting_label(&form::<Q>(&[1, 0, 1])).unwrap(), ErLabel::quadratic(Some(BigInt::from(-1))));
    let l = splitting_label(&form::<Q>(&[1, 0, -1, -1])).unwrap();
    assert_eq!(l, ErLabel::s3(Some(BigInt::from(-23))));
    assert_eq!(l.degree, 6);
    assert_eq!(splitting_label(&form::<Q>(&[1, 0, -3, -1])).unwrap(), ErLabel::cyclic_cubic());
    assert_eq!(splitting_label(&form::<Q>(&[1, 0, -2, 0])).unwrap(), ErLabel::quadratic(Some(BigInt::from(2))));
    assert_eq!(splitting_label(&form::<Q>(&[1, 0, 0])).unwrap_err(), Error::DegenerateForm);
    assert_eq!(splitting_label(&form::<F2>(&[1, 1, 1])).unwrap(), ErLabel::quadratic(None));
    assert_eq!(splitting_label(&form::<F2>(&[1, 0, 1, 1])).unwrap(), ErLabel::cyclic_cubic());
    // same form, same label
    assert_eq!(splitting_label(&form::<Q>(&[1, 0, -1, -1])).unwrap(), splitting_label(&form::<Q>(&[1, 0, -1, -1])).unwrap());
}

fn check_auts<S: Scalar>(alg: &Alg<S>, seed: u64) {
    let mut r = rng(seed);
    let one = AlgElem::one(alg);
    for g in 0..alg.group_order() {
        assert_eq!(one.apply(g), one);
        for _ in 0..100 {
            let (x, y) = (AlgElem::sample(alg, &mut r, 6), AlgElem::sample(alg, &mut r, 6));
            assert_eq!((x.clone() + y.clone()).apply(g), x.apply(g) + y.apply(g));
            assert_eq!((x.clone() * y.clone()).apply(g), x.apply(g) * y.apply(g));
        }
    }
}

#[test]
fn automorphisms_are_ring_maps() {
    check_auts(&gaussian(), 1);
    check_auts(&quad_q(4), 2);
    check_auts(&cyclic_cubic_q(), 3);
    check_auts(&ff::<F7>(3), 4);
    check_auts(&ff::<F2>(2), 5);
    check_auts(&EtaleAlgebra::tensor(&ff::<F3>(3), &ff::<F3>(2)), 6);
    check_auts(&EtaleAlgebra::tensor(&cube_root_two(), &gaussian()), 7);
}

fn check_norms<S: Scalar>(alg: &Alg<S>, seed: u64) {
    let mut r = rng(seed);
    for _ in 0..100 {
        let (x, y) = (AlgElem::sample(alg, &mut r, 6), AlgElem::sample(alg, &mut r, 6));
        assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
        assert_eq!((x.clone() + y.clone()).trace(), x.trace() + y.trace());
        if alg.dim() == 2 && alg.group_order() == 2 {
            assert_eq!(x.clone() * x.sigma(), AlgElem::from_base(alg, x.norm()));
        }
    }
}

#[test]
fn norms_and_traces() {
    check_norms(&gaussian(), 1);
    check_norms(&quad_q(5), 2);
    check_norms(&ff::<F7>(2), 3);
    check_norms(&ff::<F2>(2), 4);
    check_norms(&ff::<F3>(3), 5);
    check_norms(&cube_root_two(), 6);
}

fn check_disc_covariance<S: Scalar>(seed: u64, h: u32) {
    let mut r = rng(seed);
    for d in [2usize, 3] {
        for _ in 0..100 {
            let f = BinaryForm::new((0..=d).map(|_| S::sample(&mut r, h)).collect());
            let a = invertible2::<S>(&mut r, h);
            let lhs = f.subst(&a).disc().unwrap();
            let rhs = a.det().pow_u64((d * (d - 1)) as u64) * f.disc().unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn disc_covariance() {
    check_disc_covariance::<Q>(1, 6);
    check_disc_covariance::<F2>(2, 0);
    check_disc_covariance::<F3>(3, 0);
    check_disc_covariance::<F7>(4, 0);
}

#[test]
fn substitution_composes_on_the_left() {
    let mut r = rng(9);
    let mut differs = false;
    for _ in 0..50 {
        let f = BinaryForm::new((0..4).map(|_| Q::sample(&mut r, 5)).collect());
        let (a, b) = (invertible2::<Q>(&mut r, 5), invertible2::<Q>(&mut r, 5));
        assert_eq!(f.subst(&a).subst(&b), f.subst(&(&b * &a)));
        differs |= f.subst(&a).subst(&b) != f.subst(&(&a * &b));
    }
    assert!(differs);
}

fn check_factor_roundtrip<S: Scalar>() {
    for d in [2usize, 3] {
        for f in all_monic_squarefree::<S>(d) {
            let fac = factor_binary_form(&f).unwrap();
            assert_eq!(fac.expand(), f);
            let m = fac.degrees().into_iter().fold(1usize, num_integer::lcm);
            assert_eq!(splitting_label(&f).unwrap(), ErLabel::finite(m as u32));
        }
    }
}

#[test]
fn factor_roundtrip_finite() {
    check_factor_roundtrip::<F2>();
    check_factor_roundtrip::<F3>();
    check_factor_roundtrip::<F5>();
    check_factor_roundtrip::<F7>();
}

#[test]
fn factor_roundtrip_rational() {
    let mut r = rng(3);
    for _ in 0..200 {
        let d = r.gen_range(2..=3);
        let f = BinaryForm::new((0..=d).map(|_| q(r.gen_range(-9..=9))).collect());
        if f.coeff(0).is_zero() && f.coeff(d).is_zero() || f.is_zero() {
            continue;
        }
        let fac = factor_binary_form(&f).unwrap();
        assert_eq!(fac.expand(), f);
    }
}

/// Brute-force witness `β = a² − D b²` with a, b of height at most h.
pub fn norm_witness(d: i64, beta: &Q, h: i64) -> bool {
    for den in 1..=h {
        for an in -h..=h {
            let a = qr(an, den);
            for bn in 0..=h {
                let b = qr(bn, den);
                if a.clone() * a.clone() - q(d) * b.clone() * b == *beta {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn norm_test_agrees_with_search() {
    let mut found = 0;
    for d in [-1i64, 2, -2, 3, 5, -3] {
        for n in -12i64..=12 {
            if n == 0 {
                continue;
            }
            let beta = q(n);
            if norm_witness(d, &beta, 12) {
                found += 1;
                assert!(is_norm_quadratic_rational(&BigInt::from(d), &beta).unwrap(), "{n} is a norm from Q(√{d})");
            }
        }
    }
    assert!(found > 20);
}

#[test]
fn finite_field_arithmetic() {
    let k = ff::<F5>(3);
    assert_eq!(k.dim(), 3);
    assert_eq!(k.group_order(), 3);
    let z = pvspace::oracle::census::primitive_element(&k).unwrap();
    assert_eq!(z.pow_u64(124), AlgElem::one(&k));
    assert_ne!(z.pow_u64(62), AlgElem::one(&k));
    for x in AlgElem::all(&k).into_iter().skip(1).take(30) {
        assert_eq!(x.inverse().unwrap() * x.clone(), AlgElem::one(&k));
        assert_eq!(x.frobenius(), x.pow_u64(5));
    }
}

#[test]
fn rationals_are_normalized() {
    assert_eq!(qr(6, -4).to_json(), serde_json::json!("-3/2"));
    assert_eq!(Q::parse("6/-4").unwrap(), qr(-3, 2));
    assert_eq!(F7::from_i64(-1).to_json(), serde_json::json!(6));
    assert_eq!(F7::from_json(&serde_json::json!(13)).unwrap(), F7::from_i64(6));
    assert!(Q::parse("1/0").is_err());
    assert_eq!(Q::one().to_json(), serde_json::json!("1/1"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cubic_disc_matches_formula(a0 in -6i64..=6, a1 in -6i64..=6, a2 in -6i64..=6, a3 in -6i64..=6) {
        let f = form::<Q>(&[a0, a1, a2, a3]);
        let want = 18 * a0 * a1 * a2 * a3 - 4 * a1.pow(3) * a3 + a1 * a1 * a2 * a2 - 4 * a0 * a2.pow(3) - 27 * a0 * a0 * a3 * a3;
        prop_assert_eq!(binary_form_disc(&f).unwrap(), q(want));
    }

    #[test]
    fn quadratic_norm_is_x_times_conjugate(d in prop::sample::select(vec![-7i64, -3, -1, 2, 3, 5, 6]), a in -20i64..=20, b in -20i64..=20) {
        let k = quad_q(d);
        let x = AlgElem::from_i64(&k, &[a, b]);
        prop_assert_eq!(x.norm(), q(a * a - d * b * b));
    }

    #[test]
    fn norm_test_accepts_constructed_norms(d in prop::sample::select(vec![-5i64, -2, -1, 2, 3, 7]), a in -15i64..=15, b in 1i64..=15, c in 1i64..=9) {
        let beta = qr(a * a - d * b * b, c * c);
        prop_assume!(!beta.is_zero());
        prop_assert!(is_norm_quadratic_rational(&BigInt::from(d), &beta).unwrap());
    }
}
