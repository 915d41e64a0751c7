//! The rationals, plus the integer number theory used on them: squarefree
//! cores, rational roots and Hilbert symbols.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::Value;

use crate::arith::poly::Poly;
use crate::arith::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

/// Default trial-division bound for integer factoring.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
}

impl Scalar for BigRational {
    fn characteristic() -> u64 {
        0
    }

    fn order() -> Option<u64> {
        None
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn to_index(&self) -> u64 {
        panic!("the rationals have no dense index")
    }

    fn from_index(i: u64) -> Self {
        BigRational::from_integer(i.into())
    }

    fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(!self.is_negative() && is_perfect_square(self.numer()) && is_perfect_square(self.denom()))
    }

    fn square_class(&self) -> Result<Option<BigInt>> {
        rational_core(self).map(Some)
    }

    fn roots(poly: &Poly<Self>) -> Result<Vec<Self>> {
        rational_roots(poly)
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R, height: u32) -> Self {
        let h = height.max(1) as i64;
        let n = rng.gen_range(-h..=h);
        let d = rng.gen_range(1..=h);
        BigRational::new(n.into(), d.into())
    }

    fn to_json(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Self::parse(s),
            Value::Number(n) => n
                .as_i64()
                .map(Self::from_i64)
                .ok_or_else(|| Error::Invalid(format!("not an integer: {n}"))),
            other => Err(Error::Invalid(format!("expected rational, got {other}"))),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
        }
    }

    fn base_json() -> Value {
        serde_json::json!({"kind": "Q"})
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Factorization of `|n|` by trial division up to `bound`. A cofactor below
/// `bound²` is prime; anything larger is reported as `BoundExceeded`.
pub fn factor_int(n: &BigInt, bound: u64) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (out, rest) = trial_divide(n, bound);
    let mut out = out;
    if !rest.is_one() {
        let b = BigInt::from(bound);
        if rest < &b * &b {
            out.push((rest, 1));
        } else {
            return Err(Error::BoundExceeded(n.to_string()));
        }
    }
    Ok(out)
}

/// Strips primes up to `bound` (or up to the square root of what remains).
/// Returns the prime powers found and the unfactored cofactor.
fn trial_divide(n: &BigInt, bound: u64) -> (Vec<(BigInt, u32)>, BigInt) {
    let mut out = Vec::new();
    let mut m = n.abs();
    if let Some(mut v) = m.to_u128() {
        let mut d: u128 = 2;
        while d <= bound as u128 && d * d <= v {
            if v % d == 0 {
                let mut e = 0;
                while v % d == 0 {
                    v /= d;
                    e += 1;
                }
                out.push((BigInt::from(d), e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if v > 1 && (d * d > v) {
            out.push((BigInt::from(v), 1));
            v = 1;
        }
        return (out, BigInt::from(v));
    }
    let mut d = BigInt::from(2u32);
    let b = BigInt::from(bound);
    while d <= b && &d * &d <= m {
        let (q, r) = m.div_rem(&d);
        if r.is_zero() {
            m = q;
            let mut e = 1;
            loop {
                let (q, r) = m.div_rem(&d);
                if !r.is_zero() {
                    break;
                }
                m = q;
                e += 1;
            }
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !m.is_one() && &d * &d > m {
        out.push((m, 1));
        m = BigInt::one();
    }
    (out, m)
}

/// Squarefree core of a nonzero integer, sign included.
pub fn squarefree_core(n: &BigInt) -> Result<BigInt> {
    squarefree_core_with_bound(n, DEFAULT_TRIAL_BOUND)
}

pub fn squarefree_core_with_bound(n: &BigInt, bound: u64) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (fs, rest) = trial_divide(n, bound);
    let mut core: BigInt = fs
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product();
    if !rest.is_one() {
        // no prime factor below the bound: rest is p, p*q or p^2 when below bound^3
        let b = BigInt::from(bound);
        if rest >= &b * &b * &b {
            return Err(Error::BoundExceeded(n.to_string()));
        }
        if !is_perfect_square(&rest) {
            core *= rest;
        }
    }
    if n.is_negative() {
        core = -core;
    }
    Ok(core)
}

/// Squarefree core of `numer * denom`, the square-class invariant of a rational.
pub fn rational_core(x: &BigRational) -> Result<BigInt> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    squarefree_core(&(x.numer() * x.denom()))
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut ds = vec![BigInt::one()];
    for (p, e) in factor_int(n, DEFAULT_TRIAL_BOUND)? {
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for d in &ds {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        ds = next;
    }
    Ok(ds)
}

/// Distinct rational roots, ascending.
pub fn rational_roots(poly: &Poly<BigRational>) -> Result<Vec<BigRational>> {
    if poly.is_zero() {
        return Err(Error::ZeroInput);
    }
    let lcm = poly
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let ints = &ints[shift..];
    let mut roots = Vec::new();
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    let reduced = Poly::new(ints.iter().cloned().map(BigRational::from_integer).collect());
    match ints.len() - 1 {
        0 => {}
        1 => roots.push(BigRational::new(-ints[0].clone(), ints[1].clone())),
        2 => {
            let (c, b, a) = (&ints[0], &ints[1], &ints[2]);
            let disc = b * b - BigInt::from(4) * a * c;
            if is_perfect_square(&disc) {
                let s = disc.sqrt();
                let two_a = BigInt::from(2) * a;
                roots.push(BigRational::new(-b + &s, two_a.clone()));
                if !s.is_zero() {
                    roots.push(BigRational::new(-b - &s, two_a));
                }
            }
        }
        _ => {
            let ps = divisors(&ints[0])?;
            let qs = divisors(ints.last().unwrap())?;
            for q in &qs {
                for p in &ps {
                    for cand in [BigRational::new(p.clone(), q.clone()), BigRational::new(-p.clone(), q.clone())] {
                        if reduced.eval(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut e = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return (e, m);
        }
        m = q;
        e += 1;
    }
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) / 2u32;
    if a.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// Local Hilbert symbol (a, b)_p of nonzero integers at a finite prime p.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: &BigInt) -> i32 {
    let (al, u) = valuation(a, p);
    let (be, v) = valuation(b, p);
    let two = BigInt::from(2);
    if *p == two {
        let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
        let eps = |x: u32| ((x - 1) / 2) % 2;
        let omega = |x: u32| ((x * x - 1) / 8) % 2;
        let (u8_, v8) = (m8(&u), m8(&v));
        let e = eps(u8_) * eps(v8) + al * omega(v8) + be * omega(u8_);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let half = ((p - 1u32) / 2u32).is_odd();
        let mut s = if (al * be) % 2 == 1 && half { -1 } else { 1 };
        if be % 2 == 1 {
            s *= legendre(&u, p);
        }
        if al % 2 == 1 {
            s *= legendre(&v, p);
        }
        s
    }
}

/// Real Hilbert symbol.
pub fn hilbert_symbol_infinite(a: &BigInt, b: &BigInt) -> i32 {
    if a.sign() == Sign::Minus && b.sign() == Sign::Minus {
        -1
    } else {
        1
    }
}

/// Whether `beta` is a norm from Q(√D), by the Hasse norm theorem:
/// all local symbols (β, D)_v must be 1.
pub fn is_norm_quadratic_rational(d: &BigInt, beta: &BigRational) -> Result<bool> {
    if beta.is_zero() {
        return Err(Error::ZeroBeta);
    }
    if is_perfect_square(d) {
        return Err(Error::DIsSquare);
    }
    let b = beta.numer() * beta.denom();
    if hilbert_symbol_infinite(&b, d) == -1 {
        return Ok(false);
    }
    let mut primes: Vec<BigInt> = vec![BigInt::from(2)];
    for n in [d, &b] {
        for (p, _) in factor_int(n, DEFAULT_TRIAL_BOUND)? {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    Ok(primes.iter().all(|p| hilbert_symbol(&b, d, p) == 1))
}
