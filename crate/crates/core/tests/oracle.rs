mod common;

use common::*;
use pvspace::case1::{act1, make_w1, GrpElt1};
use pvspace::case2::{act2, make_w2, GrpElt2};
use pvspace::oracle::census::*;
use pvspace::oracle::predict::predicted_counts;
use pvspace::*;

fn gl2_over<S: Scalar>(alg: &Alg<S>) -> Vec<Matrix<AlgElem<S>>> {
    let all = AlgElem::all(alg);
    let mut out = vec![];
    for a in &all {
        for b in &all {
            for c in &all {
                for d in &all {
                    let m = Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]);
                    if m.det().is_unit() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn base_gl2<S: Scalar>() -> Vec<Matrix<S>> {
    gl2_over(&EtaleAlgebra::<S>::base()).into_iter().map(|m| m.map(|x| x.to_base().unwrap())).collect()
}

fn check_counts<S: Scalar>(case: u8, want: usize) {
    let rep = census::<S>(case, &CensusConfig::default()).unwrap();
    assert_eq!(rep.orbit_count(), want, "case {case} over F_{}", S::characteristic());
    assert!(rep.matches_prediction());
    assert_eq!(rep.orbits.iter().map(|o| o.size).sum::<u64>(), rep.semistable);
    assert_eq!(rep.to_json()["matches"], true);
}

#[test]
fn census_case1() {
    check_counts::<F2>(1, 2);
    check_counts::<F3>(1, 2);
    check_counts::<F5>(1, 2);
}

#[test]
fn census_case2() {
    check_counts::<F2>(2, 2);
    check_counts::<F3>(2, 2);
    check_counts::<F5>(2, 2);
}

#[test]
fn census_case3_q2() {
    check_counts::<F2>(3, 3);
}

#[test]
fn case3_large_field_requires_opt_in() {
    let e = census::<F3>(3, &CensusConfig::default()).unwrap_err();
    assert!(matches!(e, Error::BudgetExceeded(_)));
}

#[test]
fn budget_is_enforced() {
    let cfg = CensusConfig { budget_bytes: 1024, ..CensusConfig::default() };
    assert!(matches!(census::<F3>(1, &cfg), Err(Error::BudgetExceeded(_))));
}

#[test]
fn partition_ignores_generator_order() {
    let sp = Case2Space::<F3>::new().unwrap();
    let base = partition(&sp, &CensusConfig::default()).unwrap();
    for s in [1, 2, 3] {
        let cfg = CensusConfig { shuffle: Some(s), ..CensusConfig::default() };
        assert_eq!(partition(&sp, &cfg).unwrap().root, base.root);
    }
    let sp = Case1Space::<F3>::new().unwrap();
    let base = partition(&sp, &CensusConfig::default()).unwrap();
    let cfg = CensusConfig { shuffle: Some(9), ..CensusConfig::default() };
    assert_eq!(partition(&sp, &cfg).unwrap().root, base.root);
}

#[test]
fn partition_is_closed_under_random_group_elements_case1() {
    let sp = Case1Space::<F5>::new().unwrap();
    let (rep, part) = enumerate_orbits(1, &sp, &CensusConfig::default()).unwrap();
    let mut r = rng(1);
    for o in &rep.orbits {
        let x = sp.decode(&part.coords::<F5>(o.rep_index)).unwrap();
        assert_eq!(pvspace::case1::classify1(&x).unwrap(), o.label);
        for _ in 0..100 {
            let g = GrpElt1::new(&sp.k1, invertible_over(&sp.k1, 2, &mut r, 0), invertible2(&mut r, 0)).unwrap();
            let y = act1(&g, &x).unwrap();
            assert_eq!(part.orbit_of(&sp.encode(&y)), o.rep_index);
        }
    }
}

#[test]
fn partition_is_closed_under_random_group_elements_case2() {
    let sp = Case2Space::<F3>::new().unwrap();
    let (rep, part) = enumerate_orbits(2, &sp, &CensusConfig::default()).unwrap();
    let mut r = rng(2);
    for o in &rep.orbits {
        let x = sp.decode(&part.coords::<F3>(o.rep_index)).unwrap();
        assert_eq!(case2_label(&x).unwrap(), o.label);
        for _ in 0..100 {
            let g = GrpElt2::new(&sp.k1, unit(&mut r, 0), invertible_over(&sp.k1, 2, &mut r, 0)).unwrap();
            let y = act2(&g, &x).unwrap();
            assert_eq!(part.orbit_of(&sp.encode(&y)), o.rep_index);
        }
    }
}

#[test]
fn orbit_of_w_matches_stabilizer_count_case1() {
    let sp = Case1Space::<F2>::new().unwrap();
    let (rep, part) = enumerate_orbits(1, &sp, &CensusConfig::default()).unwrap();
    let w = make_w1(&sp.k1).unwrap();
    let (g1s, g2s) = (gl2_over(&sp.k1), base_gl2::<F2>());
    assert_eq!((g1s.len(), g2s.len()), (180, 6));
    let mut fix = 0;
    for a in &g1s {
        for b in &g2s {
            if act1(&GrpElt1::new(&sp.k1, a.clone(), b.clone()).unwrap(), &w).unwrap() == w {
                fix += 1;
            }
        }
    }
    let root = part.orbit_of(&sp.encode(&w));
    let o = rep.orbits.iter().find(|o| o.rep_index == root).unwrap();
    assert_eq!(o.size * fix, (g1s.len() * g2s.len()) as u64);
}

#[test]
fn orbit_of_w_matches_stabilizer_count_case2() {
    let sp = Case2Space::<F2>::new().unwrap();
    let (rep, part) = enumerate_orbits(2, &sp, &CensusConfig::default()).unwrap();
    let w = make_w2(&sp.k1).unwrap();
    let gs = gl2_over(&sp.k1);
    assert_eq!(gs.len(), 63 * 56);
    let fix = gs.iter().filter(|g| act2(&GrpElt2::new(&sp.k1, F2::from_i64(1), (*g).clone()).unwrap(), &w).unwrap() == w).count();
    let root = part.orbit_of(&sp.encode(&w));
    let o = rep.orbits.iter().find(|o| o.rep_index == root).unwrap();
    assert_eq!(o.size * fix as u64, gs.len() as u64);
}

#[test]
fn predictions_beyond_the_census() {
    let p = predicted_counts::<F7>(1).unwrap();
    assert_eq!(p.values().sum::<usize>(), 2);
    let p = predicted_counts::<F7>(2).unwrap();
    assert_eq!(p.values().copied().collect::<Vec<_>>(), vec![1, 1]);
    let p = predicted_counts::<F3>(3).unwrap();
    assert_eq!(p.len(), 3);
    assert!(p.values().all(|&c| c == 1));
    assert_eq!(p.keys().cloned().collect::<Vec<_>>(), vec![ErLabel::trivial(), ErLabel::finite(2), ErLabel::finite(3)]);
}

#[test]
fn primitive_elements_generate() {
    for m in 1..=3 {
        let f = ff::<F5>(m);
        let g = primitive_element(&f).unwrap();
        let n = 5u64.pow(m as u32) - 1;
        assert!(g.pow_u64(n) == g.one_like());
        for d in (1..n).filter(|d| n % d == 0) {
            assert!(g.pow_u64(d) != g.one_like() || d == n);
        }
    }
}
