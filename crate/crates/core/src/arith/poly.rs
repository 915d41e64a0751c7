use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::scalar::Scalar;

/// Dense univariate polynomial over a base field, coefficients ascending.
/// The zero polynomial has no coefficients; the leading coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<S: Scalar> {
    c: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut c: Vec<S>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| S::from_i64(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: S) -> Self {
        Poly::new(vec![a])
    }

    /// The monomial `a x^n`.
    pub fn monomial(a: S, n: usize) -> Self {
        let mut c = vec![S::zero(); n + 1];
        c[n] = a;
        Poly::new(c)
    }

    pub fn x() -> Self {
        Poly::monomial(S::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> S {
        self.c.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn lead(&self) -> S {
        self.c.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_one())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Poly::new(self.c.iter().map(|x| x.clone() / l.clone()).collect())
    }

    pub fn scale(&self, a: &S) -> Self {
        Poly::new(self.c.iter().map(|x| x.clone() * a.clone()).collect())
    }

    pub fn eval(&self, x: &S) -> S {
        self.c
            .iter()
            .rev()
            .fold(S::zero(), |acc, a| acc * x.clone() + a.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * S::from_i64(i as i64))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = S::one() / d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![S::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let a = r[i].clone() * inv.clone();
            if a.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                let k = i - dd + j;
                r[k] = r[k].clone() - a.clone() * dj.clone();
            }
            q[i - dd] = a;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Coefficients of the homogenization `Σ c_i v1^i v2^(d-i)`, ordered v1^d first.
    pub fn homogeneous_coeffs(&self, d: usize) -> Vec<S> {
        (0..=d).map(|i| self.coeff(d - i)).collect()
    }
}

impl<S: Scalar> Add for Poly<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Sub for Poly<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Neg for Poly<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly::new(self.c.into_iter().map(|x| -x).collect())
    }
}

impl<S: Scalar> Mul for Poly<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![S::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(c)
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{a:?}")?,
                1 => write!(f, "({a:?})t")?,
                _ => write!(f, "({a:?})t^{i}")?,
            }
        }
        Ok(())
    }
}
