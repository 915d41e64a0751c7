//! Scalar and ring abstractions.
//!
//! Everything in the crate is written against [`Ring`] (elements that carry
//! enough context to produce their own zero and one) and [`Scalar`] (exact
//! base fields: the rationals and prime fields).

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::Value;

use crate::arith::poly::Poly;
use crate::error::Result;

/// A commutative ring element. Algebra elements know their parent, so
/// constants are produced from an existing element.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    /// Multiplicative inverse, `None` for non-units.
    fn inverse(&self) -> Option<Self>;

    fn int_like(&self, n: i64) -> Self {
        let one = self.one_like();
        let mut acc = self.zero_like();
        let mut base = if n < 0 { -one } else { one };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc + base.clone();
            }
            base = base.clone() + base;
            k >>= 1;
        }
        acc
    }

    fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// An exact base field.
pub trait Scalar:
    Ring + Zero + One + Div<Output = Self> + Eq + Hash + Send + Sync + 'static
{
    /// 0 for the rationals, p for a prime field.
    fn characteristic() -> u64;

    /// Number of elements, `None` when infinite.
    fn order() -> Option<u64>;

    fn from_i64(n: i64) -> Self;

    /// All elements in index order (finite fields only).
    fn elements() -> Option<Vec<Self>> {
        Self::order().map(|q| (0..q).map(Self::from_index).collect())
    }

    /// Dense index in `0..order()`; only meaningful for finite fields.
    fn to_index(&self) -> u64;
    fn from_index(i: u64) -> Self;

    fn is_square(&self) -> Result<bool>;

    /// Squarefree-core invariant of the square class (rationals only).
    fn square_class(&self) -> Result<Option<BigInt>>;

    /// Distinct roots lying in the field.
    fn roots(poly: &Poly<Self>) -> Result<Vec<Self>>;

    fn sample<R: Rng + ?Sized>(rng: &mut R, height: u32) -> Self;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
    fn parse(s: &str) -> Result<Self>;

    /// The `base` object of a tower descriptor.
    fn base_json() -> Value;

    fn is_finite() -> bool {
        Self::order().is_some()
    }
}
