use std::fmt;

use crate::arith::matrix::Matrix;
use crate::arith::scalar::Ring;
use crate::error::{Error, Result};

/// Homogeneous binary form `Σ c_i v1^(d-i) v2^i`, coefficients ordered
/// from `v1^d` down to `v2^d`.
#[derive(Clone, PartialEq)]
pub struct BinaryForm<E> {
    c: Vec<E>,
}

impl<E: Ring> BinaryForm<E> {
    pub fn new(c: Vec<E>) -> Self {
        assert!(!c.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { c }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[E] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &E {
        &self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.vanishes())
    }

    pub fn eval(&self, v1: &E, v2: &E) -> E {
        let d = self.degree();
        let mut acc = v1.zero_like();
        for (i, a) in self.c.iter().enumerate() {
            acc = acc + a.clone() * v1.pow_u64((d - i) as u64) * v2.pow_u64(i as u64);
        }
        acc
    }

    pub fn map<F: Ring>(&self, f: impl Fn(&E) -> F) -> BinaryForm<F> {
        BinaryForm { c: self.c.iter().map(f).collect() }
    }

    pub fn try_map<F: Ring>(&self, f: impl Fn(&E) -> Result<F>) -> Result<BinaryForm<F>> {
        Ok(BinaryForm { c: self.c.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn scale(&self, a: &E) -> Self {
        self.map(|x| a.clone() * x.clone())
    }

    /// The form `F(vA)` for a row vector `v = (v1, v2)`. Substituting B and then A
    /// gives the substitution by AB.
    pub fn subst(&self, a: &Matrix<E>) -> Self {
        assert!(a.rows() == 2 && a.cols() == 2, "substitution needs a 2×2 matrix");
        // v·A = (a11 v1 + a21 v2, a12 v1 + a22 v2)
        let l1 = BinaryForm::new(vec![a.get(0, 0).clone(), a.get(1, 0).clone()]);
        let l2 = BinaryForm::new(vec![a.get(0, 1).clone(), a.get(1, 1).clone()]);
        let d = self.degree();
        let zero = self.c[0].zero_like();
        let mut acc = BinaryForm::new(vec![zero; d + 1]);
        for (i, ci) in self.c.iter().enumerate() {
            let term = l1.pow(d - i).mul(&l2.pow(i)).scale(ci);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        BinaryForm { c: self.c.iter().zip(&other.c).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "subtracting forms of different degree");
        BinaryForm { c: self.c.iter().zip(&other.c).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let zero = self.c[0].zero_like();
        let mut c = vec![zero; self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { c }
    }

    pub fn pow(&self, n: usize) -> Self {
        let one = self.c[0].one_like();
        (0..n).fold(BinaryForm::new(vec![one]), |acc, _| acc.mul(self))
    }

    /// Universal discriminant of a quadratic or cubic form.
    pub fn disc(&self) -> Result<E> {
        let k = |n: i64| self.c[0].int_like(n);
        match self.degree() {
            2 => {
                let (a, b, c) = (self.c[0].clone(), self.c[1].clone(), self.c[2].clone());
                Ok(b.clone() * b - k(4) * a * c)
            }
            3 => {
                let (a0, a1, a2, a3) = (self.c[0].clone(), self.c[1].clone(), self.c[2].clone(), self.c[3].clone());
                Ok(k(18) * a0.clone() * a1.clone() * a2.clone() * a3.clone()
                    - k(4) * a1.pow_u64(3) * a3.clone()
                    + a1.pow_u64(2) * a2.pow_u64(2)
                    - k(4) * a0.clone() * a2.pow_u64(3)
                    - k(27) * a0.pow_u64(2) * a3.pow_u64(2))
            }
            d => Err(Error::UnsupportedDegree(d)),
        }
    }
}

impl<E: fmt::Debug> fmt::Debug for BinaryForm<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm{:?}", self.c)
    }
}

/// Discriminant of a quadratic or cubic binary form.
pub fn binary_form_disc<E: Ring>(f: &BinaryForm<E>) -> Result<E> {
    f.disc()
}
