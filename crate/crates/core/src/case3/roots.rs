//! Root data for a monic cubic `f(v) = v1³ + a1 v1²v2 + a2 v1v2² + a3 v2³`:
//! an algebra `L` containing the three roots and the permutation each
//! automorphism of `L` induces on them.

use num_integer::Integer;

use crate::arith::algebra::{Alg, AlgElem, EtaleAlgebra};
use crate::arith::factor::factor_binary_form;
use crate::arith::form::BinaryForm;
use crate::arith::poly::Poly;
use crate::arith::scalar::{Ring, Scalar};
use crate::case1::{monic_quadratic, quadratic_root_algebra};
use crate::error::{Error, Result};

/// `f(t, 1)` as a polynomial.
pub fn dehomogenize<S: Scalar>(f: &BinaryForm<S>) -> Poly<S> {
    Poly::new(f.coeffs().iter().rev().cloned().collect())
}

pub(crate) fn eval_at<S: Scalar>(p: &Poly<S>, x: &AlgElem<S>) -> AlgElem<S> {
    p.coeffs()
        .iter()
        .rev()
        .fold(AlgElem::zero(x.alg()), |acc, a| acc * x.clone() + AlgElem::from_base(x.alg(), a.clone()))
}

pub(crate) fn monic_cubic<S: Scalar>(f: &BinaryForm<S>) -> Result<[S; 3]> {
    if f.degree() != 3 || !f.coeff(0).is_one() {
        return Err(Error::Invalid("expected a monic cubic form".into()));
    }
    if f.disc()?.is_zero() {
        return Err(Error::DegeneratePolynomial);
    }
    Ok([f.coeff(1).clone(), f.coeff(2).clone(), f.coeff(3).clone()])
}

#[derive(Clone, Debug)]
pub struct CubicRootData<S: Scalar> {
    f: BinaryForm<S>,
    l: Alg<S>,
    roots: [AlgElem<S>; 3],
    perms: Vec<[usize; 3]>,
}

impl<S: Scalar> CubicRootData<S> {
    /// Validates `f(α_i) = 0`, the symmetric functions of the roots, that
    /// `D_α` is a unit, and that every automorphism permutes the roots.
    pub fn new(f: &BinaryForm<S>, l: &Alg<S>, roots: [AlgElem<S>; 3]) -> Result<Self> {
        let [a1, a2, a3] = monic_cubic(f)?;
        if roots.iter().any(|r| !r.alg().same(l)) {
            return Err(Error::TowerMismatch);
        }
        let p = dehomogenize(f);
        if let Some(i) = roots.iter().position(|r| !eval_at(&p, r).vanishes()) {
            return Err(Error::FiberDataMismatch(format!("α{} is not a root of f", i + 1)));
        }
        let [x, y, z] = roots.clone();
        let b = |s: S| AlgElem::from_base(l, s);
        let e1 = x.clone() + y.clone() + z.clone();
        let e2 = x.clone() * y.clone() + x.clone() * z.clone() + y.clone() * z.clone();
        let e3 = x.clone() * y.clone() * z.clone();
        if e1 != b(-a1) || e2 != b(a2) || e3 != b(-a3) {
            return Err(Error::FiberDataMismatch("roots do not match the coefficients of f".into()));
        }
        let d = (x.clone() - y.clone()) * (x.clone() - z.clone()) * (y - z);
        if !d.is_unit() {
            return Err(Error::FiberDataMismatch("roots are not distinct".into()));
        }
        let mut perms = Vec::with_capacity(l.group_order());
        for g in 0..l.group_order() {
            let mut pi = [0; 3];
            for (i, r) in roots.iter().enumerate() {
                let img = r.apply(g);
                pi[i] = roots
                    .iter()
                    .position(|s| *s == img)
                    .ok_or_else(|| Error::FiberDataMismatch(format!("automorphism {g} does not permute the roots")))?;
            }
            perms.push(pi);
        }
        Ok(CubicRootData { f: f.clone(), l: l.clone(), roots, perms })
    }

    /// Root data over a finite field: `L` is the splitting field, and the
    /// roots are listed Frobenius orbit by Frobenius orbit, largest first.
    pub fn finite(f: &BinaryForm<S>) -> Result<Self> {
        monic_cubic(f)?;
        if !S::is_finite() {
            return Err(Error::UnsupportedField("finite root data over an infinite field".into()));
        }
        let m = factor_binary_form(f)?.degrees().iter().fold(1usize, |acc, d| acc.lcm(d));
        let l = EtaleAlgebra::finite_field(m)?;
        let p = dehomogenize(f);
        let found: Vec<AlgElem<S>> = AlgElem::all(&l).into_iter().filter(|x| eval_at(&p, x).vanishes()).collect();
        let mut orbits: Vec<Vec<AlgElem<S>>> = Vec::new();
        for r in &found {
            if orbits.iter().any(|o| o.contains(r)) {
                continue;
            }
            let mut o = vec![r.clone()];
            if !l.generators().is_empty() {
                let mut s = r.sigma();
                while s != *r {
                    o.push(s.clone());
                    s = s.sigma();
                }
            }
            orbits.push(o);
        }
        orbits.sort_by_key(|o| std::cmp::Reverse(o.len()));
        let roots: Vec<AlgElem<S>> = orbits.into_iter().flatten().collect();
        let roots: [AlgElem<S>; 3] =
            roots.try_into().map_err(|_| Error::CheckFailed("cubic does not have three roots".into()))?;
        Self::new(f, &l, roots)
    }

    /// `f = v1·f2` with roots `(t, −a1 − t, 0)` in `L = k[t]/(f2(t, 1))`.
    pub fn quadratic(f2: &BinaryForm<S>) -> Result<Self> {
        let (a1, a2) = monic_quadratic(f2)?;
        if a2.is_zero() {
            return Err(Error::DegeneratePolynomial);
        }
        let l = quadratic_root_algebra(f2)?;
        let t = AlgElem::basis(&l, 1);
        let f = BinaryForm::new(vec![S::one(), a1.clone(), a2, S::zero()]);
        let r2 = -AlgElem::from_base(&l, a1) - t.clone();
        Self::new(&f, &l, [t, r2, AlgElem::zero(&l)])
    }

    /// Generic root data in characteristic ≠ 2:
    /// `L = k[t]/(f(t, 1)) ⊗ k[s]/(s² − disc f)`, `α1 = t`,
    /// `α2, α3 = (−a1 − t ± s/f'(t))/2`, with the automorphisms
    /// `s ↦ −s` and `t ↦ α2, s ↦ s`.
    pub fn generic(f: &BinaryForm<S>) -> Result<Self> {
        let [a1, _, _] = monic_cubic(f)?;
        if S::characteristic() == 2 {
            return Err(Error::CharTwoUnsupported);
        }
        let p = dehomogenize(f);
        let kt = EtaleAlgebra::make_extension(&p, &[])?;
        let disc = f.disc()?;
        let ks = EtaleAlgebra::make_extension(&Poly::new(vec![-disc, S::zero(), S::one()]), &[vec![S::zero(), -S::one()]])?;
        let l0 = EtaleAlgebra::tensor(&kt, &ks);
        let t = AlgElem::embed_left(&l0, &AlgElem::basis(&kt, 1));
        let s = AlgElem::embed_right(&l0, &AlgElem::basis(&ks, 1));
        let dp = eval_at(&p.derivative(), &t).inverse().ok_or(Error::DegeneratePolynomial)?;
        let half = S::from_i64(2).inverse().expect("characteristic is not 2");
        let base = -AlgElem::from_base(&l0, a1) - t.clone();
        let r2 = (base.clone() + s.clone() * dp.clone()).scale(&half);
        let r3 = (base - s.clone() * dp).scale(&half);
        let l = EtaleAlgebra::with_extra_automorphisms(&l0, &[(r2.clone(), s)])?;
        let lift = |x: AlgElem<S>| AlgElem::new(&l, x.into_coords());
        Self::new(f, &l, [lift(t), lift(r2), lift(r3)])
    }

    pub fn f(&self) -> &BinaryForm<S> {
        &self.f
    }

    pub fn splitting(&self) -> &Alg<S> {
        &self.l
    }

    pub fn roots(&self) -> &[AlgElem<S>; 3] {
        &self.roots
    }

    /// `perms()[g][i] = j` when automorphism g sends `α_i` to `α_j`.
    pub fn perms(&self) -> &[[usize; 3]] {
        &self.perms
    }

    /// Orbits of the automorphism group on the roots, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..3 {
            if out.iter().any(|o| o.contains(&i)) {
                continue;
            }
            let mut o: Vec<usize> = self.perms.iter().map(|p| p[i]).collect();
            o.sort_unstable();
            o.dedup();
            out.push(o);
        }
        out
    }

    /// Automorphisms fixing `α_i`.
    pub fn stabilizer(&self, i: usize) -> Vec<usize> {
        (0..self.perms.len()).filter(|&g| self.perms[g][i] == i).collect()
    }

    /// Some automorphism sending `α_i` to `α_j`.
    pub fn carrier(&self, i: usize, j: usize) -> Option<usize> {
        (0..self.perms.len()).find(|&g| self.perms[g][i] == j)
    }

    /// The automorphism ν with `α1 ↦ α2 ↦ α3 ↦ α1`, if present.
    pub fn nu(&self) -> Option<usize> {
        self.perms.iter().position(|p| *p == [1, 2, 0])
    }

    /// `D_α = (α1 − α2)(α1 − α3)(α2 − α3)`.
    pub fn d(&self) -> AlgElem<S> {
        let [x, y, z] = self.roots.clone();
        (x.clone() - y.clone()) * (x - z.clone()) * (y - z)
    }

    /// `A_i(α) = α1^i(α2 − α3) + α2^i(α3 − α1) + α3^i(α1 − α2)`.
    pub fn a(&self, i: u64) -> AlgElem<S> {
        let [x, y, z] = self.roots.clone();
        x.pow_u64(i) * (y.clone() - z.clone()) + y.pow_u64(i) * (z.clone() - x.clone()) + z.pow_u64(i) * (x - y)
    }
}
