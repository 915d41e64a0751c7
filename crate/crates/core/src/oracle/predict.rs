//! Predicted orbit counts per fiber over `F_q`, computed from the explicit
//! quotients that parametrize each fiber.

use std::collections::BTreeMap;

use crate::arith::algebra::{Alg, AlgElem, EtaleAlgebra};
use crate::arith::label::ErLabel;
use crate::arith::scalar::Scalar;
use crate::error::{Error, Result};
use crate::oracle::census::primitive_element;

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn count(&mut self, members: impl Iterator<Item = usize>) -> usize {
        let mut roots: Vec<usize> = members.map(|i| self.find(i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

/// Image of `norm` on a primitive element, which generates the norm group.
fn norm_generator<S: Scalar>(big: &Alg<S>, norm: impl Fn(&AlgElem<S>) -> AlgElem<S>) -> Result<AlgElem<S>> {
    Ok(norm(&primitive_element(big)?))
}

/// Orbits of `S_n` on `(k^× / N)^n / k^×`, where N is generated by `nu`
/// and `k^×` acts diagonally.
fn split_quotient<S: Scalar>(n: usize, nu: &S) -> Result<usize> {
    let units: Vec<S> = S::elements().ok_or_else(|| Error::UnsupportedField("needs a finite field".into()))?;
    let units: Vec<S> = units.into_iter().filter(|x| !x.is_zero()).collect();
    let m = units.len();
    let pos = |x: &S| units.iter().position(|u| u == x).expect("unit");
    let zeta = primitive_element(&EtaleAlgebra::<S>::base())?.coords()[0].clone();
    let mul_nu: Vec<usize> = units.iter().map(|u| pos(&(u.clone() * nu.clone()))).collect();
    let mul_z: Vec<usize> = units.iter().map(|u| pos(&(u.clone() * zeta.clone()))).collect();
    let total = m.pow(n as u32);
    let digits = |mut i: usize| -> Vec<usize> {
        (0..n)
            .map(|_| {
                let d = i % m;
                i /= m;
                d
            })
            .collect()
    };
    let index = |d: &[usize]| d.iter().rev().fold(0, |acc, x| acc * m + x);
    let mut dsu = Dsu::new(total);
    for i in 0..total {
        let d = digits(i);
        for c in 0..n {
            let mut e = d.clone();
            e[c] = mul_nu[e[c]];
            dsu.union(i, index(&e));
        }
        let e: Vec<usize> = d.iter().map(|&x| mul_z[x]).collect();
        dsu.union(i, index(&e));
        for c in 1..n {
            let mut e = d.clone();
            e.swap(0, c);
            dsu.union(i, index(&e));
        }
    }
    Ok(dsu.count(0..total))
}

/// Orbits of `Gal(F/k)` on `F^× / ⟨gens⟩`.
fn field_quotient<S: Scalar>(f: &Alg<S>, gens: &[AlgElem<S>]) -> Result<usize> {
    let q = S::order().ok_or_else(|| Error::UnsupportedField("needs a finite field".into()))?;
    let size = q.pow(f.dim() as u32) as usize;
    let mut dsu = Dsu::new(size);
    for i in 1..size {
        let x = AlgElem::from_index(f, i as u64);
        for g in gens {
            dsu.union(i, (x.clone() * g.clone()).to_index() as usize);
        }
        for &a in f.generators() {
            dsu.union(i, x.apply(a).to_index() as usize);
        }
    }
    Ok(dsu.count(1..size))
}

/// Predicted number of semistable orbits with each label over `F_q`.
pub fn predicted_counts<S: Scalar>(case: u8) -> Result<BTreeMap<ErLabel, usize>> {
    if !S::is_finite() {
        return Err(Error::UnsupportedField("orbit counts are predicted over finite fields".into()));
    }
    let zeta = primitive_element(&EtaleAlgebra::<S>::base())?.coords()[0].clone();
    let f2 = EtaleAlgebra::<S>::finite_field(2)?;
    let f3 = EtaleAlgebra::<S>::finite_field(3)?;
    let f6 = EtaleAlgebra::tensor(&f3, &f2);
    let mut out = BTreeMap::new();
    match case {
        1 => {
            out.insert(ErLabel::trivial(), 1);
            out.insert(ErLabel::quadratic(None), 1);
        }
        2 => {
            let nu = norm_generator(&f3, |x| AlgElem::from_base(&EtaleAlgebra::base(), x.norm()))?;
            out.insert(ErLabel::trivial(), split_quotient(2, &nu.coords()[0])?);
            let n6 = norm_generator(&f6, AlgElem::norm_to_right)?;
            out.insert(ErLabel::quadratic(None), field_quotient(&f2, &[AlgElem::from_base(&f2, zeta), n6])?);
        }
        3 => {
            let nu = norm_generator(&f2, |x| AlgElem::from_base(&EtaleAlgebra::base(), x.norm()))?;
            out.insert(ErLabel::trivial(), split_quotient(3, &nu.coords()[0])?);
            out.insert(ErLabel::quadratic(None), 1);
            let n6 = norm_generator(&f6, AlgElem::norm_to_left)?;
            out.insert(ErLabel::cyclic_cubic(), field_quotient(&f3, &[AlgElem::from_base(&f3, zeta), n6])?);
        }
        _ => return Err(Error::Invalid(format!("unknown case {case}"))),
    }
    Ok(out)
}
