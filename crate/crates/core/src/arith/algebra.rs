//! Finite étale algebras over a base field with an explicit automorphism group.
//!
//! An algebra is stored flat: a basis `b_0 = 1, b_1, ..`, sparse structure
//! constants, and each automorphism as the list of basis images. Towers such
//! as `k1 ⊗ k(α)` are tensor products that remember their two factors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use crate::arith::matrix::Matrix;
use crate::arith::poly::Poly;
use crate::arith::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

const GROUP_CAP: usize = 10_000;

#[derive(Clone, PartialEq, Debug)]
pub struct EtaleAlgebra<S: Scalar> {
    dim: usize,
    table: Vec<Vec<(usize, S)>>,
    auts: Vec<Vec<Vec<S>>>,
    gens: Vec<usize>,
    poly: Option<Poly<S>>,
    gen_images: Vec<Vec<S>>,
    is_field: Option<bool>,
    factors: Option<(Arc<EtaleAlgebra<S>>, Arc<EtaleAlgebra<S>>)>,
}

pub type Alg<S> = Arc<EtaleAlgebra<S>>;

fn unit_vec<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

impl<S: Scalar> EtaleAlgebra<S> {
    /// The base field as a one-dimensional algebra.
    pub fn base() -> Alg<S> {
        Arc::new(EtaleAlgebra {
            dim: 1,
            table: vec![vec![(0, S::one())]],
            auts: vec![vec![vec![S::one()]]],
            gens: vec![],
            poly: Some(Poly::x()),
            gen_images: vec![],
            is_field: Some(true),
            factors: None,
        })
    }

    /// `k[t]/(poly)` with the automorphisms generated by `t ↦ image_i`.
    pub fn make_extension(poly: &Poly<S>, images: &[Vec<S>]) -> Result<Alg<S>> {
        let alg = Self::quotient(poly)?;
        let mut maps = Vec::new();
        for (i, img) in images.iter().enumerate() {
            if img.len() > alg.dim {
                return Err(Error::Invalid(format!("automorphism image {i} has too many coefficients")));
            }
            let mut c = img.clone();
            c.resize(alg.dim, S::zero());
            let r = AlgElem::new(&alg, c);
            if !alg.eval_poly(poly, &r).vanishes() {
                return Err(Error::NotARoot(i));
            }
            let m: Vec<Vec<S>> = (0..alg.dim).map(|j| r.pow_u64(j as u64).c).collect();
            if !basis_map_invertible(&m) {
                return Err(Error::NotAnAutomorphism(i));
            }
            maps.push(m);
        }
        let mut alg = (*alg).clone();
        alg.gen_images = images.to_vec();
        alg.set_group(maps)?;
        alg.is_field = alg.detect_field();
        Ok(Arc::new(alg))
    }

    /// `F_p[t]/(poly)` with the automorphisms generated by Frobenius.
    pub fn frobenius_extension(poly: &Poly<S>) -> Result<Alg<S>> {
        let p = S::characteristic();
        if p == 0 {
            return Err(Error::UnsupportedField("Frobenius needs a finite base".into()));
        }
        let alg = Self::quotient(poly)?;
        let t = Poly::x().rem(poly);
        let t = AlgElem::new(&alg, (0..alg.dim).map(|i| t.coeff(i)).collect());
        let img = t.pow_u64(p).c;
        Self::make_extension(poly, &[img])
    }

    /// The field with `p^m` elements, defined by the first irreducible monic
    /// polynomial of degree m in lexicographic order.
    pub fn finite_field(m: usize) -> Result<Alg<S>> {
        let p = S::characteristic();
        if p == 0 {
            return Err(Error::UnsupportedField("finite_field over the rationals".into()));
        }
        if m == 1 {
            return Ok(Self::base());
        }
        let total = (p as u128).pow(m as u32);
        for idx in 0..total {
            let mut c = Vec::with_capacity(m + 1);
            let mut r = idx;
            for _ in 0..m {
                c.push(S::from_index((r % p as u128) as u64));
                r /= p as u128;
            }
            c.push(S::one());
            let f = Poly::new(c);
            if !f.is_squarefree() {
                continue;
            }
            let q = Self::quotient(&f)?;
            if q.frobenius_fixed_dim() == 1 {
                return Self::frobenius_extension(&f);
            }
        }
        Err(Error::UnsupportedField(format!("no irreducible polynomial of degree {m}")))
    }

    fn quotient(poly: &Poly<S>) -> Result<Alg<S>> {
        let d = match poly.degree() {
            Some(d) if d >= 1 && poly.is_monic() => d,
            _ => return Err(Error::Invalid("defining polynomial must be monic of positive degree".into())),
        };
        if !poly.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let mut powers: Vec<Vec<S>> = Vec::with_capacity(2 * d - 1);
        for e in 0..(2 * d - 1) {
            let r = Poly::monomial(S::one(), e).rem(poly);
            powers.push((0..d).map(|i| r.coeff(i)).collect());
        }
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                table.push(sparse(&powers[i + j]));
            }
        }
        Ok(Arc::new(EtaleAlgebra {
            dim: d,
            table,
            auts: vec![identity_map(d)],
            gens: vec![],
            poly: Some(poly.clone()),
            gen_images: vec![],
            is_field: None,
            factors: None,
        }))
    }

    /// Tensor product `A ⊗ B` over the common base, with the product group.
    /// Basis element `a_i ⊗ b_j` has index `i * dim(B) + j`.
    pub fn tensor(a: &Alg<S>, b: &Alg<S>) -> Alg<S> {
        let (m, n) = (a.dim, b.dim);
        let d = m * n;
        let mut table = Vec::with_capacity(d * d);
        for i in 0..m {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..n {
                        let mut acc: HashMap<usize, S> = HashMap::new();
                        for (p, x) in &a.table[i * m + k] {
                            for (q, y) in &b.table[j * n + l] {
                                let e = acc.entry(p * n + q).or_insert_with(S::zero);
                                *e = e.clone() + x.clone() * y.clone();
                            }
                        }
                        let mut v: Vec<(usize, S)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                        v.sort_by_key(|(i, _)| *i);
                        table.push(v);
                    }
                }
            }
        }
        let mut auts = Vec::with_capacity(a.auts.len() * b.auts.len());
        for g in &a.auts {
            for h in &b.auts {
                let mut m_ = Vec::with_capacity(d);
                for i in 0..m {
                    for j in 0..n {
                        let mut c = vec![S::zero(); d];
                        for (p, x) in g[i].iter().enumerate() {
                            if x.vanishes() {
                                continue;
                            }
                            for (q, y) in h[j].iter().enumerate() {
                                c[p * n + q] = x.clone() * y.clone();
                            }
                        }
                        m_.push(c);
                    }
                }
                auts.push(m_);
            }
        }
        let nb = b.auts.len();
        let gens = a.gens.iter().map(|g| g * nb).chain(b.gens.iter().copied()).collect();
        let mut t = EtaleAlgebra {
            dim: d,
            table,
            auts,
            gens,
            poly: None,
            gen_images: vec![],
            is_field: None,
            factors: Some((a.clone(), b.clone())),
        };
        t.is_field = t.detect_field();
        Arc::new(t)
    }

    /// Adds automorphisms to a tensor of two monogenic algebras, each given by
    /// the images of the two generators `t ⊗ 1` and `1 ⊗ s`.
    pub fn with_extra_automorphisms(alg: &Alg<S>, images: &[(AlgElem<S>, AlgElem<S>)]) -> Result<Alg<S>> {
        let (a, b) = alg
            .factors
            .clone()
            .ok_or_else(|| Error::Invalid("extra automorphisms need a tensor algebra".into()))?;
        let (fa, fb) = match (&a.poly, &b.poly) {
            (Some(x), Some(y)) => (x.clone(), y.clone()),
            _ => return Err(Error::Invalid("tensor factors must be monogenic".into())),
        };
        let mut maps: Vec<Vec<Vec<S>>> = alg.gens.iter().map(|&g| alg.auts[g].clone()).collect();
        for (idx, (ti, si)) in images.iter().enumerate() {
            if !alg.same(&ti.alg) || !alg.same(&si.alg) {
                return Err(Error::TowerMismatch);
            }
            if !alg.eval_poly(&fa, ti).vanishes() || !alg.eval_poly(&fb, si).vanishes() {
                return Err(Error::NotARoot(idx));
            }
            let mut m = Vec::with_capacity(alg.dim);
            for i in 0..a.dim {
                let ti_pow = ti.pow_u64(i as u64);
                for j in 0..b.dim {
                    m.push((ti_pow.clone() * si.pow_u64(j as u64)).c);
                }
            }
            if !basis_map_invertible(&m) {
                return Err(Error::NotAnAutomorphism(idx));
            }
            maps.push(m);
        }
        let mut out = (**alg).clone();
        out.set_group(maps)?;
        Ok(Arc::new(out))
    }

    /// Closes the generator maps to a group; identity first, then the
    /// generators, then products in breadth-first order.
    fn set_group(&mut self, gens: Vec<Vec<Vec<S>>>) -> Result<()> {
        let id = identity_map(self.dim);
        let mut elems: Vec<Vec<Vec<S>>> = vec![id.clone()];
        let mut index: HashMap<Vec<Vec<S>>, usize> = HashMap::new();
        index.insert(id, 0);
        let mut gen_idx = Vec::new();
        for g in &gens {
            let i = *index.entry(g.clone()).or_insert_with(|| {
                elems.push(g.clone());
                elems.len() - 1
            });
            gen_idx.push(i);
        }
        let mut frontier = 0;
        while frontier < elems.len() {
            let e = elems[frontier].clone();
            for g in &gens {
                let c = compose_maps(g, &e);
                if !index.contains_key(&c) {
                    if elems.len() >= GROUP_CAP {
                        return Err(Error::NotClosedUnderComposition);
                    }
                    index.insert(c.clone(), elems.len());
                    elems.push(c);
                }
            }
            frontier += 1;
        }
        for a in &elems {
            for b in &elems {
                if !index.contains_key(&compose_maps(a, b)) {
                    return Err(Error::NotClosedUnderComposition);
                }
            }
        }
        self.auts = elems;
        self.gens = gen_idx;
        Ok(())
    }

    fn detect_field(&self) -> Option<bool> {
        if self.dim == 1 {
            return Some(true);
        }
        if S::characteristic() != 0 {
            return Some(self.frobenius_fixed_dim() == 1);
        }
        if let Some((a, b)) = &self.factors {
            return match (a.is_field, b.is_field) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                _ if a.dim == 1 => b.is_field,
                _ if b.dim == 1 => a.is_field,
                (Some(true), Some(true)) if num_integer::gcd(a.dim, b.dim) == 1 => Some(true),
                (Some(true), Some(true)) if a.dim == 2 && b.dim == 2 => {
                    let ca = a.quadratic_disc_core()?;
                    let cb = b.quadratic_disc_core()?;
                    Some(ca != cb)
                }
                _ => None,
            };
        }
        let f = self.poly.as_ref()?;
        if f.degree()? <= 3 {
            let roots = S::roots(f).ok()?;
            Some(roots.is_empty())
        } else {
            None
        }
    }

    fn quadratic_disc_core(&self) -> Option<num_bigint::BigInt> {
        let f = self.poly.as_ref()?;
        if f.degree()? != 2 {
            return None;
        }
        let d = f.coeff(1) * f.coeff(1) - S::from_i64(4) * f.coeff(0);
        d.square_class().ok().flatten()
    }

    /// Dimension of the Frobenius-fixed subalgebra (finite bases only); this
    /// is the number of field factors.
    pub fn frobenius_fixed_dim(&self) -> usize {
        let p = S::characteristic();
        assert!(p != 0, "Frobenius needs a finite base");
        let me = Arc::new(self.clone());
        let cols: Vec<Vec<S>> = (0..self.dim)
            .map(|j| AlgElem::new(&me, unit_vec(self.dim, j)).pow_u64(p).c)
            .collect();
        let m = Matrix::from_fn(self.dim, self.dim, |i, j| {
            let v = cols[j][i].clone();
            if i == j {
                v - S::one()
            } else {
                v
            }
        });
        self.dim - m.rank()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn poly(&self) -> Option<&Poly<S>> {
        self.poly.as_ref()
    }

    pub fn generator_images(&self) -> &[Vec<S>] {
        &self.gen_images
    }

    pub fn is_field(&self) -> Option<bool> {
        self.is_field
    }

    pub fn factors(&self) -> Option<(&Alg<S>, &Alg<S>)> {
        self.factors.as_ref().map(|(a, b)| (a, b))
    }

    pub fn group_order(&self) -> usize {
        self.auts.len()
    }

    /// Indices (into the group) of the supplied generators.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Index of `g ⊗ h` in a tensor's group.
    pub fn tensor_aut(&self, g: usize, h: usize) -> usize {
        let (_, b) = self.factors.as_ref().expect("not a tensor algebra");
        g * b.auts.len() + h
    }

    /// Index of the composite `g ∘ h`.
    pub fn compose(&self, g: usize, h: usize) -> usize {
        let c = compose_maps(&self.auts[g], &self.auts[h]);
        self.auts.iter().position(|m| *m == c).expect("group is closed")
    }

    pub fn aut_inverse(&self, g: usize) -> usize {
        (0..self.auts.len()).find(|&h| self.compose(g, h) == 0).expect("group element has an inverse")
    }

    pub fn same(&self, other: &EtaleAlgebra<S>) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    fn eval_poly(self: &Arc<Self>, f: &Poly<S>, x: &AlgElem<S>) -> AlgElem<S> {
        f.coeffs()
            .iter()
            .rev()
            .fold(AlgElem::zero(self), |acc, a| acc * x.clone() + AlgElem::from_base(self, a.clone()))
    }

    fn mul_coords(&self, a: &[S], b: &[S]) -> Vec<S> {
        let n = self.dim;
        let mut out = vec![S::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.vanishes() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.vanishes() {
                    continue;
                }
                let xy = x.clone() * y.clone();
                for (k, c) in &self.table[i * n + j] {
                    out[*k] = out[*k].clone() + xy.clone() * c.clone();
                }
            }
        }
        out
    }
}

fn sparse<S: Scalar>(v: &[S]) -> Vec<(usize, S)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn identity_map<S: Scalar>(d: usize) -> Vec<Vec<S>> {
    (0..d).map(|j| unit_vec(d, j)).collect()
}

fn basis_map_invertible<S: Scalar>(m: &[Vec<S>]) -> bool {
    let d = m.len();
    Matrix::from_fn(d, d, |i, j| m[j][i].clone()).is_invertible()
}

fn apply_map<S: Scalar>(m: &[Vec<S>], c: &[S]) -> Vec<S> {
    let d = c.len();
    let mut out = vec![S::zero(); d];
    for (j, x) in c.iter().enumerate() {
        if x.vanishes() {
            continue;
        }
        for (i, y) in m[j].iter().enumerate() {
            if !y.vanishes() {
                out[i] = out[i].clone() + x.clone() * y.clone();
            }
        }
    }
    out
}

/// `g ∘ h` on basis images.
fn compose_maps<S: Scalar>(g: &[Vec<S>], h: &[Vec<S>]) -> Vec<Vec<S>> {
    h.iter().map(|col| apply_map(g, col)).collect()
}

/// Element of an étale algebra.
#[derive(Clone)]
pub struct AlgElem<S: Scalar> {
    alg: Alg<S>,
    c: Vec<S>,
}

impl<S: Scalar> AlgElem<S> {
    pub fn new(alg: &Alg<S>, mut c: Vec<S>) -> Self {
        assert!(c.len() <= alg.dim, "too many coordinates");
        c.resize(alg.dim, S::zero());
        AlgElem { alg: alg.clone(), c }
    }

    pub fn from_i64(alg: &Alg<S>, c: &[i64]) -> Self {
        Self::new(alg, c.iter().map(|&x| S::from_i64(x)).collect())
    }

    pub fn zero(alg: &Alg<S>) -> Self {
        AlgElem { alg: alg.clone(), c: vec![S::zero(); alg.dim] }
    }

    pub fn one(alg: &Alg<S>) -> Self {
        Self::from_base(alg, S::one())
    }

    pub fn from_base(alg: &Alg<S>, a: S) -> Self {
        let mut c = vec![S::zero(); alg.dim];
        c[0] = a;
        AlgElem { alg: alg.clone(), c }
    }

    pub fn basis(alg: &Alg<S>, i: usize) -> Self {
        AlgElem { alg: alg.clone(), c: unit_vec(alg.dim, i) }
    }

    pub fn alg(&self) -> &Alg<S> {
        &self.alg
    }

    pub fn coords(&self) -> &[S] {
        &self.c
    }

    pub fn into_coords(self) -> Vec<S> {
        self.c
    }

    pub fn scale(&self, a: &S) -> Self {
        AlgElem { alg: self.alg.clone(), c: self.c.iter().map(|x| x.clone() * a.clone()).collect() }
    }

    pub fn is_base(&self) -> bool {
        self.c[1..].iter().all(|x| x.is_zero())
    }

    /// Galois-descent coercion to the base field.
    pub fn to_base(&self) -> Result<S> {
        if self.is_base() {
            Ok(self.c[0].clone())
        } else {
            Err(Error::NotRational(format!("{self:?} is not in the base field")))
        }
    }

    pub fn apply(&self, g: usize) -> Self {
        AlgElem { alg: self.alg.clone(), c: apply_map(&self.alg.auts[g], &self.c) }
    }

    /// Image under the first supplied generator (σ for a quadratic or cyclic algebra).
    pub fn sigma(&self) -> Self {
        let g = *self.alg.gens.first().expect("algebra has no automorphism generator");
        self.apply(g)
    }

    pub fn is_fixed_by(&self, g: usize) -> bool {
        self.apply(g) == *self
    }

    pub fn mul_matrix(&self) -> Matrix<S> {
        let d = self.alg.dim;
        let cols: Vec<Vec<S>> = (0..d).map(|j| self.alg.mul_coords(&self.c, &unit_vec(d, j))).collect();
        Matrix::from_fn(d, d, |i, j| cols[j][i].clone())
    }

    /// Characteristic polynomial of multiplication by `self`, ascending.
    pub fn char_poly(&self) -> Poly<S> {
        Poly::new(self.mul_matrix().char_poly())
    }

    pub fn norm(&self) -> S {
        if self.alg.dim == 2 {
            let m = self.mul_matrix();
            return m.get(0, 0).clone() * m.get(1, 1).clone() - m.get(0, 1).clone() * m.get(1, 0).clone();
        }
        self.mul_matrix().det()
    }

    pub fn trace(&self) -> S {
        self.mul_matrix().trace()
    }

    /// `e2` of the characteristic polynomial `t^n - e1 t^(n-1) + e2 t^(n-2) - ..`.
    pub fn e2(&self) -> S {
        let cp = self.char_poly();
        let n = self.alg.dim;
        if n < 2 {
            return S::zero();
        }
        cp.coeff(n - 2)
    }

    pub fn frobenius(&self) -> Self {
        self.pow_u64(S::characteristic())
    }

    /// Squareness test in a finite field: Euler's criterion with `(q^d - 1)/2`.
    pub fn is_square(&self) -> Result<bool> {
        if self.vanishes() {
            return Err(Error::ZeroInput);
        }
        let p = S::characteristic();
        if p == 0 {
            return Err(Error::UnsupportedField("squares in extensions of the rationals".into()));
        }
        if self.alg.is_field != Some(true) {
            return Err(Error::UnsupportedField("squareness needs a field".into()));
        }
        if p == 2 {
            return Ok(true);
        }
        let q = p.checked_pow(self.alg.dim as u32).expect("field too large");
        Ok(self.pow_u64((q - 1) / 2) == AlgElem::one(&self.alg))
    }

    /// `a ⊗ 1` in `A ⊗ B`.
    pub fn embed_left(t: &Alg<S>, a: &AlgElem<S>) -> Self {
        let (fa, fb) = t.factors.as_ref().expect("not a tensor algebra");
        assert!(fa.same(&a.alg), "left factor mismatch");
        let mut c = vec![S::zero(); t.dim];
        for (i, x) in a.c.iter().enumerate() {
            c[i * fb.dim] = x.clone();
        }
        AlgElem { alg: t.clone(), c }
    }

    /// `1 ⊗ b` in `A ⊗ B`.
    pub fn embed_right(t: &Alg<S>, b: &AlgElem<S>) -> Self {
        let (_, fb) = t.factors.as_ref().expect("not a tensor algebra");
        assert!(fb.same(&b.alg), "right factor mismatch");
        let mut c = vec![S::zero(); t.dim];
        c[..fb.dim].clone_from_slice(&b.c);
        AlgElem { alg: t.clone(), c }
    }

    /// Descent from `A ⊗ B` to `A ⊗ 1`.
    pub fn left_part(&self) -> Result<AlgElem<S>> {
        let (fa, fb) = self.alg.factors.as_ref().expect("not a tensor algebra");
        let mut c = Vec::with_capacity(fa.dim);
        for i in 0..fa.dim {
            for j in 1..fb.dim {
                if !self.c[i * fb.dim + j].vanishes() {
                    return Err(Error::NotRational(format!("{self:?} does not lie in the left factor")));
                }
            }
            c.push(self.c[i * fb.dim].clone());
        }
        Ok(AlgElem { alg: fa.clone(), c })
    }

    /// Descent from `A ⊗ B` to `1 ⊗ B`.
    pub fn right_part(&self) -> Result<AlgElem<S>> {
        let (_, fb) = self.alg.factors.as_ref().expect("not a tensor algebra");
        if self.c[fb.dim..].iter().any(|x| !x.is_zero()) {
            return Err(Error::NotRational(format!("{self:?} does not lie in the right factor")));
        }
        Ok(AlgElem { alg: fb.clone(), c: self.c[..fb.dim].to_vec() })
    }

    /// Norm from `A ⊗ B` down to `B`.
    pub fn norm_to_right(&self) -> AlgElem<S> {
        let (fa, fb) = self.alg.factors.as_ref().expect("not a tensor algebra");
        let (m, n) = (fa.dim, fb.dim);
        let ys: Vec<AlgElem<S>> =
            (0..m).map(|i| AlgElem { alg: fb.clone(), c: self.c[i * n..(i + 1) * n].to_vec() }).collect();
        let mat = Matrix::from_fn(m, m, |l, k| {
            let mut acc = AlgElem::zero(fb);
            for (i, y) in ys.iter().enumerate() {
                for (p, c) in &fa.table[i * m + k] {
                    if *p == l {
                        acc = acc + y.scale(c);
                    }
                }
            }
            acc
        });
        mat.det()
    }

    /// Norm from `A ⊗ B` down to `A`.
    pub fn norm_to_left(&self) -> AlgElem<S> {
        let (fa, fb) = self.alg.factors.as_ref().expect("not a tensor algebra");
        let (m, n) = (fa.dim, fb.dim);
        let zs: Vec<AlgElem<S>> =
            (0..n).map(|j| AlgElem { alg: fa.clone(), c: (0..m).map(|i| self.c[i * n + j].clone()).collect() }).collect();
        let mat = Matrix::from_fn(n, n, |l, k| {
            let mut acc = AlgElem::zero(fa);
            for (j, z) in zs.iter().enumerate() {
                for (p, c) in &fb.table[j * n + k] {
                    if *p == l {
                        acc = acc + z.scale(c);
                    }
                }
            }
            acc
        });
        mat.det()
    }

    /// Dense index of a finite-field element (little-endian mixed radix).
    pub fn to_index(&self) -> u64 {
        let q = S::order().expect("finite base");
        self.c.iter().rev().fold(0, |acc, x| acc * q + x.to_index())
    }

    pub fn from_index(alg: &Alg<S>, mut i: u64) -> Self {
        let q = S::order().expect("finite base");
        let c = (0..alg.dim)
            .map(|_| {
                let x = S::from_index(i % q);
                i /= q;
                x
            })
            .collect();
        AlgElem { alg: alg.clone(), c }
    }

    /// Every element of a finite algebra in index order.
    pub fn all(alg: &Alg<S>) -> Vec<Self> {
        let q = S::order().expect("finite base");
        let n = q.pow(alg.dim as u32);
        (0..n).map(|i| Self::from_index(alg, i)).collect()
    }

    pub fn sample<R: Rng + ?Sized>(alg: &Alg<S>, rng: &mut R, height: u32) -> Self {
        AlgElem { alg: alg.clone(), c: (0..alg.dim).map(|_| S::sample(rng, height)).collect() }
    }

    /// A random unit.
    pub fn sample_unit<R: Rng + ?Sized>(alg: &Alg<S>, rng: &mut R, height: u32) -> Self {
        loop {
            let x = Self::sample(alg, rng, height);
            if x.is_unit() {
                return x;
            }
        }
    }

    fn check(&self, other: &Self) {
        assert!(self.alg.same(&other.alg), "elements of different algebras");
    }
}

impl<S: Scalar> PartialEq for AlgElem<S> {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.alg.same(&other.alg)
    }
}

impl<S: Scalar> Eq for AlgElem<S> {}

impl<S: Scalar> std::hash::Hash for AlgElem<S> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl<S: Scalar> fmt::Debug for AlgElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

impl<S: Scalar> Add for AlgElem<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        let c = self.c.into_iter().zip(rhs.c).map(|(a, b)| a + b).collect();
        AlgElem { alg: self.alg, c }
    }
}

impl<S: Scalar> Sub for AlgElem<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        let c = self.c.into_iter().zip(rhs.c).map(|(a, b)| a - b).collect();
        AlgElem { alg: self.alg, c }
    }
}

impl<S: Scalar> Neg for AlgElem<S> {
    type Output = Self;
    fn neg(self) -> Self {
        AlgElem { alg: self.alg, c: self.c.into_iter().map(|a| -a).collect() }
    }
}

impl<S: Scalar> Mul for AlgElem<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        let c = self.alg.mul_coords(&self.c, &rhs.c);
        AlgElem { alg: self.alg, c }
    }
}

impl<S: Scalar> Ring for AlgElem<S> {
    fn zero_like(&self) -> Self {
        AlgElem::zero(&self.alg)
    }
    fn one_like(&self) -> Self {
        AlgElem::one(&self.alg)
    }
    fn vanishes(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn inverse(&self) -> Option<Self> {
        if self.alg.dim == 1 {
            return self.c[0].inverse().map(|x| AlgElem::from_base(&self.alg, x));
        }
        let e0 = unit_vec(self.alg.dim, 0);
        let c = self.mul_matrix().solve(&e0)?;
        Some(AlgElem { alg: self.alg.clone(), c })
    }
    fn int_like(&self, n: i64) -> Self {
        AlgElem::from_base(&self.alg, S::from_i64(n))
    }
}
