#![allow(dead_code)]

use pvspace::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k[t]/(t² − d)` with `t ↦ −t`.
pub fn quad_q(d: i64) -> Alg<Q> {
    EtaleAlgebra::make_extension(&Poly::from_i64(&[-d, 0, 1]), &[vec![q(0), q(-1)]]).unwrap()
}

pub fn gaussian() -> Alg<Q> {
    quad_q(-1)
}

/// `Q[t]/(t³ − 2)`.
pub fn cube_root_two() -> Alg<Q> {
    EtaleAlgebra::make_extension(&Poly::from_i64(&[-2, 0, 0, 1]), &[]).unwrap()
}

/// `Q[t]/(t³ − 3t + 1)`, cyclic with `t ↦ t² − 2`.
pub fn cyclic_cubic_q() -> Alg<Q> {
    EtaleAlgebra::make_extension(&Poly::from_i64(&[1, -3, 0, 1]), &[vec![q(-2), q(0), q(1)]]).unwrap()
}

pub fn ff<S: Scalar>(m: usize) -> Alg<S> {
    EtaleAlgebra::finite_field(m).unwrap()
}

pub fn form<S: Scalar>(c: &[i64]) -> BinaryForm<S> {
    BinaryForm::new(c.iter().map(|&x| S::from_i64(x)).collect())
}

pub fn unit<S: Scalar>(r: &mut ChaCha8Rng, h: u32) -> S {
    loop {
        let x = S::sample(r, h);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn invertible2<S: Scalar>(r: &mut ChaCha8Rng, h: u32) -> Matrix<S> {
    loop {
        let m = Matrix::from_fn(2, 2, |_, _| S::sample(r, h));
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn invertible_over<S: Scalar>(alg: &Alg<S>, n: usize, r: &mut ChaCha8Rng, h: u32) -> Matrix<AlgElem<S>> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| AlgElem::sample(alg, r, h));
        if m.det().is_unit() {
            return m;
        }
    }
}

/// Random element of `n×n` Hermitian matrices over a quadratic algebra.
pub fn hermitian<S: Scalar>(k1: &Alg<S>, n: usize, r: &mut ChaCha8Rng, h: u32) -> Matrix<AlgElem<S>> {
    let mut m = Matrix::identity(n, &AlgElem::zero(k1));
    for i in 0..n {
        m.set(i, i, AlgElem::from_base(k1, S::sample(r, h)));
        for j in i + 1..n {
            let e = AlgElem::sample(k1, r, h);
            m.set(j, i, e.sigma());
            m.set(i, j, e);
        }
    }
    m
}

/// Random monic binary form of degree d with nonzero discriminant.
pub fn monic_squarefree<S: Scalar>(d: usize, r: &mut ChaCha8Rng, lo: i64, hi: i64) -> BinaryForm<S> {
    loop {
        let mut c = vec![S::one()];
        c.extend((0..d).map(|_| S::from_i64(r.gen_range(lo..=hi))));
        let f = BinaryForm::new(c);
        if !f.disc().unwrap().is_zero() {
            return f;
        }
    }
}

/// Every monic binary form of degree d over a prime field with nonzero discriminant.
pub fn all_monic_squarefree<S: Scalar>(d: usize) -> Vec<BinaryForm<S>> {
    let p = S::order().unwrap();
    (0..p.pow(d as u32))
        .filter_map(|mut i| {
            let mut c = vec![S::one()];
            for _ in 0..d {
                c.push(S::from_index(i % p));
                i /= p;
            }
            let f = BinaryForm::new(c);
            (!f.disc().unwrap().is_zero()).then_some(f)
        })
        .collect()
}

pub fn one_of<S: Scalar>() -> S {
    S::one()
}
