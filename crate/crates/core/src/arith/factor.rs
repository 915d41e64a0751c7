//! Factorization of binary forms of degree at most 3 by root search on P¹.

use crate::arith::algebra::AlgElem;
use crate::arith::form::BinaryForm;
use crate::arith::poly::Poly;
use crate::arith::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

const ENUMERATION_CAP: u64 = 1 << 20;

/// `unit · Π factor^multiplicity`. Linear factors are `v1 - r v2` or `v2`;
/// higher-degree factors have leading coefficient 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<E> {
    pub unit: E,
    pub factors: Vec<(BinaryForm<E>, u32)>,
}

impl<E: Ring> Factorization<E> {
    pub fn expand(&self) -> BinaryForm<E> {
        self.factors
            .iter()
            .fold(BinaryForm::new(vec![self.unit.clone()]), |acc, (f, m)| acc.mul(&f.pow(*m as usize)))
    }

    /// Degrees of the irreducible factors, with multiplicity.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> =
            self.factors.iter().flat_map(|(f, m)| std::iter::repeat(f.degree()).take(*m as usize)).collect();
        d.sort_unstable();
        d
    }

    pub fn is_split(&self) -> bool {
        self.factors.iter().all(|(f, _)| f.degree() == 1)
    }
}

/// Synthetic division of a descending-coefficient polynomial by `x - r`.
fn deflate<E: Ring>(c: &[E], r: &E) -> (Vec<E>, E) {
    let mut q = Vec::with_capacity(c.len() - 1);
    let mut acc = c[0].zero_like();
    for a in c {
        acc = acc * r.clone() + a.clone();
        q.push(acc.clone());
    }
    let rem = q.pop().unwrap();
    (q, rem)
}

fn factor_with<E: Ring>(f: &BinaryForm<E>, roots: impl Fn(&[E]) -> Result<Vec<E>>) -> Result<Factorization<E>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.degree() > 3 {
        return Err(Error::UnsupportedDegree(f.degree()));
    }
    let one = f.coeff(0).one_like();
    let zero = one.zero_like();
    let mut c: Vec<E> = f.coeffs().to_vec();
    let mut factors = Vec::new();
    let mut m = 0;
    while c[0].vanishes() {
        c.remove(0);
        m += 1;
    }
    if m > 0 {
        factors.push((BinaryForm::new(vec![zero.clone(), one.clone()]), m));
    }
    let unit = c[0].clone();
    let inv = unit.inverse().ok_or(Error::NonUnit)?;
    let mut c: Vec<E> = c.into_iter().map(|x| x * inv.clone()).collect();
    for r in roots(&c)? {
        let mut m = 0;
        loop {
            let (q, rem) = deflate(&c, &r);
            if !rem.vanishes() {
                break;
            }
            c = q;
            m += 1;
        }
        if m > 0 {
            factors.push((BinaryForm::new(vec![one.clone(), -r.clone()]), m));
        }
    }
    if c.len() > 1 {
        factors.push((BinaryForm::new(c), 1));
    }
    Ok(Factorization { unit, factors })
}

/// Factorization over the base field: rational roots over Q, exhaustive
/// search over a prime field.
pub fn factor_binary_form<S: Scalar>(f: &BinaryForm<S>) -> Result<Factorization<S>> {
    factor_with(f, |c| {
        let p = Poly::new(c.iter().rev().cloned().collect());
        S::roots(&p)
    })
}

/// Factorization over a finite extension field given as an étale algebra.
pub fn factor_binary_form_ext<S: Scalar>(f: &BinaryForm<AlgElem<S>>) -> Result<Factorization<AlgElem<S>>> {
    let alg = f.coeff(0).alg().clone();
    let Some(q) = S::order() else {
        return Err(Error::UnsupportedField("factoring over an extension of the rationals".into()));
    };
    if alg.is_field() != Some(true) {
        return Err(Error::UnsupportedField("coefficient algebra is not a field".into()));
    }
    let size = q.checked_pow(alg.dim() as u32).filter(|&n| n <= ENUMERATION_CAP);
    let Some(size) = size else {
        return Err(Error::UnsupportedField("extension too large for root enumeration".into()));
    };
    factor_with(f, |c| {
        Ok((0..size)
            .map(|i| AlgElem::from_index(&alg, i))
            .filter(|r| deflate(c, r).1.vanishes())
            .collect())
    })
}
