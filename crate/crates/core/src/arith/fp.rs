use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::Value;

use crate::arith::poly::Poly;
use crate::arith::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

/// Element of the prime field F_P, stored reduced in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn from_signed(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut acc = 1u64 % P;
        let mut b = self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn zero_like(&self) -> Self {
        Fp(0)
    }
    fn one_like(&self) -> Self {
        Fp(1)
    }
    fn vanishes(&self) -> bool {
        self.0 == 0
    }
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn characteristic() -> u64 {
        P
    }

    fn order() -> Option<u64> {
        Some(P)
    }

    fn from_i64(n: i64) -> Self {
        Fp::from_signed(n)
    }

    fn to_index(&self) -> u64 {
        self.0
    }

    fn from_index(i: u64) -> Self {
        Fp::new(i)
    }

    fn is_square(&self) -> Result<bool> {
        if self.0 == 0 {
            return Err(Error::ZeroInput);
        }
        if P == 2 {
            return Ok(true);
        }
        Ok(self.pow((P - 1) / 2).0 == 1)
    }

    fn square_class(&self) -> Result<Option<BigInt>> {
        if self.0 == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(None)
    }

    fn roots(poly: &Poly<Self>) -> Result<Vec<Self>> {
        if poly.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok((0..P).map(Fp).filter(|r| poly.eval(r).is_zero()).collect())
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, _height: u32) -> Self {
        Fp(rng.gen_range(0..P))
    }

    fn to_json(&self) -> Value {
        Value::from(self.0)
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(Fp::from_signed)
                .ok_or_else(|| Error::Invalid(format!("not an integer: {n}"))),
            Value::String(s) => Self::parse(s),
            other => Err(Error::Invalid(format!("expected F_{P} scalar, got {other}"))),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        s.trim()
            .parse::<i64>()
            .map(Fp::from_signed)
            .map_err(|_| Error::Invalid(format!("not an F_{P} scalar: {s:?}")))
    }

    fn base_json() -> Value {
        serde_json::json!({"kind": "Fp", "p": P})
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn arithmetic_wraps() {
        assert_eq!(F7::new(5) + F7::new(4), F7::new(2));
        assert_eq!(F7::new(2) - F7::new(5), F7::new(4));
        assert_eq!(-F7::new(3), F7::new(4));
        assert_eq!(F7::new(3).inverse(), Some(F7::new(5)));
        assert_eq!(F7::zero().inverse(), None);
    }

    #[test]
    fn euler_criterion() {
        // 3^2 = 2 in F7
        assert!(F7::new(2).is_square().unwrap());
        assert!(!F7::new(3).is_square().unwrap());
        assert_eq!(F7::zero().is_square(), Err(Error::ZeroInput));
        assert!(Fp::<2>::new(1).is_square().unwrap());
    }
}
