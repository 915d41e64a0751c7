//! The twisted 8-dimensional space over a cubic algebra `k1/k` with
//! `G = GL_1(k) × GL_2(k1)`, in the rational coordinates
//! `(x111, x211, x122, x222) ∈ k × k1 × k1 × k`.
//!
//! Over a splitting field a point is `Σ x_ijk e_i ⊗ e_j ⊗ e_k` with
//! `x121 = x211^σ`, `x112 = x211^σ²`, `x212 = x122^σ`, `x221 = x122^σ²`, and
//! `g` acts as `(g, g^σ, g^σ²)`. The formulas here only use traces, norms and
//! characteristic polynomials in `k1`, so no splitting field is built.

use crate::arith::algebra::{Alg, AlgElem, EtaleAlgebra};
use crate::arith::form::BinaryForm;
use crate::arith::label::ErLabel;
use crate::arith::matrix::Matrix;
use crate::arith::scalar::{Ring, Scalar};
use crate::case1::{descend_left, monic_quadratic, quadratic_root_algebra};
use crate::error::{Error, Result};

pub(crate) fn check_cubic_tower<S: Scalar>(k1: &Alg<S>) -> Result<()> {
    if k1.dim() != 3 {
        return Err(Error::Invalid("k1 must be a cubic algebra".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct V2Elem<S: Scalar> {
    k1: Alg<S>,
    pub x111: S,
    pub x211: AlgElem<S>,
    pub x122: AlgElem<S>,
    pub x222: S,
}

impl<S: Scalar> V2Elem<S> {
    pub fn new(k1: &Alg<S>, x111: S, x211: AlgElem<S>, x122: AlgElem<S>, x222: S) -> Result<Self> {
        check_cubic_tower(k1)?;
        if !x211.alg().same(k1) || !x122.alg().same(k1) {
            return Err(Error::TowerMismatch);
        }
        Ok(V2Elem { k1: k1.clone(), x111, x211, x122, x222 })
    }

    pub fn from_base(k1: &Alg<S>, c: [S; 4]) -> Result<Self> {
        let [a, b, c_, d] = c;
        Self::new(k1, a, AlgElem::from_base(k1, b), AlgElem::from_base(k1, c_), d)
    }

    pub fn tower(&self) -> &Alg<S> {
        &self.k1
    }

    fn scale(&self, t: &S) -> Self {
        V2Elem {
            k1: self.k1.clone(),
            x111: self.x111.clone() * t.clone(),
            x211: self.x211.scale(t),
            x122: self.x122.scale(t),
            x222: self.x222.clone() * t.clone(),
        }
    }
}

/// `u^σ u^σ² = u² − e1 u + e2`, i.e. `N(u)/u` without division.
pub fn adjoint_norm<S: Scalar>(u: &AlgElem<S>) -> AlgElem<S> {
    let e1 = u.trace();
    let e2 = u.e2();
    u.clone() * u.clone() - u.scale(&e1) + AlgElem::from_base(u.alg(), e2)
}

/// `x^σ² u^σ + x^σ u^σ²` expressed in `k1`.
pub fn cross_term<S: Scalar>(x: &AlgElem<S>, u: &AlgElem<S>) -> AlgElem<S> {
    let (tx, tu) = (x.trace(), u.trace());
    let xu = x.clone() * u.clone();
    let k = u.alg();
    AlgElem::from_base(k, tx.clone() * tu.clone() - xu.trace()) - u.scale(&tx) - x.scale(&tu) + xu.scale(&S::from_i64(2))
}

/// `a(t1, t2) = diag(t1, t2)`.
pub fn act_torus<S: Scalar>(t1: &AlgElem<S>, t2: &AlgElem<S>, x: &V2Elem<S>) -> V2Elem<S> {
    V2Elem {
        k1: x.k1.clone(),
        x111: t1.norm() * x.x111.clone(),
        x211: t2.clone() * adjoint_norm(t1) * x.x211.clone(),
        x122: t1.clone() * adjoint_norm(t2) * x.x122.clone(),
        x222: t2.norm() * x.x222.clone(),
    }
}

/// `n(u) = [[1, 0], [u, 1]]`.
pub fn act_unipotent<S: Scalar>(u: &AlgElem<S>, x: &V2Elem<S>) -> V2Elem<S> {
    let k = &x.k1;
    let adj = adjoint_norm(u);
    let x111 = AlgElem::from_base(k, x.x111.clone());
    V2Elem {
        k1: k.clone(),
        x111: x.x111.clone(),
        x211: x.x211.clone() + x111.clone() * u.clone(),
        x122: x.x122.clone() + x111 * adj.clone() + cross_term(&x.x211, u),
        x222: x.x222.clone()
            + x.x111.clone() * u.norm()
            + (x.x211.clone() * adj).trace()
            + (x.x122.clone() * u.clone()).trace(),
    }
}

/// `τ = [[0, 1], [1, 0]]`: exchanges 1 and 2 in the indices.
pub fn act_tau<S: Scalar>(x: &V2Elem<S>) -> V2Elem<S> {
    V2Elem {
        k1: x.k1.clone(),
        x111: x.x222.clone(),
        x211: x.x122.clone(),
        x122: x.x211.clone(),
        x222: x.x111.clone(),
    }
}

/// A word in the generators of `GL_2(k1)`, applied right to left.
#[derive(Clone, Debug, PartialEq)]
pub enum Gen<S: Scalar> {
    Torus(AlgElem<S>, AlgElem<S>),
    Unipotent(AlgElem<S>),
    Tau,
}

impl<S: Scalar> Gen<S> {
    pub fn act(&self, x: &V2Elem<S>) -> V2Elem<S> {
        match self {
            Gen::Torus(a, b) => act_torus(a, b, x),
            Gen::Unipotent(u) => act_unipotent(u, x),
            Gen::Tau => act_tau(x),
        }
    }

    pub fn matrix(&self, k1: &Alg<S>) -> Matrix<AlgElem<S>> {
        let (o, z) = (AlgElem::one(k1), AlgElem::zero(k1));
        match self {
            Gen::Torus(a, b) => Matrix::diag(vec![a.clone(), b.clone()]),
            Gen::Unipotent(u) => Matrix::from_rows(vec![vec![o.clone(), z], vec![u.clone(), o]]),
            Gen::Tau => Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o, z]]),
        }
    }
}

/// Candidates for `u` with `a u + b` a unit, in a fixed order.
fn unit_search<S: Scalar>(k1: &Alg<S>) -> Vec<AlgElem<S>> {
    if S::is_finite() {
        return AlgElem::all(k1);
    }
    let mut out = Vec::new();
    for n in 0..4i64 {
        for c0 in -n..=n {
            for c1 in -n..=n {
                for c2 in -n..=n {
                    if c0.abs().max(c1.abs()).max(c2.abs()) == n {
                        out.push(AlgElem::from_i64(k1, &[c0, c1, c2]));
                    }
                }
            }
        }
    }
    out
}

/// Deterministic decomposition of `g` into generators, rightmost applied first.
pub fn decompose<S: Scalar>(g: &Matrix<AlgElem<S>>) -> Result<Vec<Gen<S>>> {
    let k1 = g.get(0, 0).alg().clone();
    let det = g.det();
    let det_inv = det.inverse().ok_or(Error::SingularGroupElement)?;
    let (a, b, c, d) = (g.get(0, 0).clone(), g.get(0, 1).clone(), g.get(1, 0).clone(), g.get(1, 1).clone());
    let one = AlgElem::one(&k1);
    if b.vanishes() {
        let dinv = d.inverse().ok_or(Error::SingularGroupElement)?;
        return Ok(vec![Gen::Torus(a, d), Gen::Unipotent(c * dinv)]);
    }
    if let Some(binv) = b.inverse() {
        return Ok(vec![
            Gen::Torus(one.clone(), -(det.clone() * binv.clone())),
            Gen::Unipotent(-(d * det_inv)),
            Gen::Tau,
            Gen::Torus(one, b),
            Gen::Unipotent(a * binv),
        ]);
    }
    // b is a zero divisor: g = (g·U(s))·U(−s) with U(s) = τ n(s) τ upper unipotent
    for s in unit_search(&k1) {
        if (a.clone() * s.clone() + b.clone()).is_unit() {
            let us = Matrix::from_rows(vec![vec![one.clone(), s.clone()], vec![AlgElem::zero(&k1), one.clone()]]);
            let mut word = decompose(&(g * &us))?;
            word.extend([Gen::Tau, Gen::Unipotent(-s), Gen::Tau]);
            return Ok(word);
        }
    }
    Err(Error::CheckFailed("no unit found for the Bruhat decomposition".into()))
}

/// Alternative decomposition `g = n(c/a)·a(a, det/a)·U(b/a)` for a unit `a`.
pub fn decompose_lu<S: Scalar>(g: &Matrix<AlgElem<S>>) -> Option<Vec<Gen<S>>> {
    let (a, b, c) = (g.get(0, 0).clone(), g.get(0, 1).clone(), g.get(1, 0).clone());
    let ainv = a.inverse()?;
    let det = g.det();
    Some(vec![
        Gen::Unipotent(c * ainv.clone()),
        Gen::Torus(a, det * ainv.clone()),
        Gen::Tau,
        Gen::Unipotent(b * ainv),
        Gen::Tau,
    ])
}

pub fn word_matrix<S: Scalar>(k1: &Alg<S>, word: &[Gen<S>]) -> Matrix<AlgElem<S>> {
    word.iter().fold(Matrix::identity(2, &AlgElem::one(k1)), |acc, w| &acc * &w.matrix(k1))
}

pub fn act_word<S: Scalar>(word: &[Gen<S>], x: &V2Elem<S>) -> V2Elem<S> {
    word.iter().rev().fold(x.clone(), |acc, w| w.act(&acc))
}

/// `(t, g) ∈ GL_1(k) × GL_2(k1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrpElt2<S: Scalar> {
    k1: Alg<S>,
    pub t: S,
    pub g: Matrix<AlgElem<S>>,
}

impl<S: Scalar> GrpElt2<S> {
    pub fn new(k1: &Alg<S>, t: S, g: Matrix<AlgElem<S>>) -> Result<Self> {
        check_cubic_tower(k1)?;
        if g.rows() != 2 || g.cols() != 2 {
            return Err(Error::Shape("g must be 2×2".into()));
        }
        if g.entries().iter().any(|x| !x.alg().same(k1)) {
            return Err(Error::TowerMismatch);
        }
        if t.is_zero() || !g.det().is_unit() {
            return Err(Error::SingularGroupElement);
        }
        Ok(GrpElt2 { k1: k1.clone(), t, g })
    }

    pub fn identity(k1: &Alg<S>) -> Self {
        GrpElt2 { k1: k1.clone(), t: S::one(), g: Matrix::identity(2, &AlgElem::one(k1)) }
    }

    pub fn tau(k1: &Alg<S>) -> Self {
        GrpElt2 { k1: k1.clone(), t: S::one(), g: Gen::Tau.matrix(k1) }
    }

    pub fn from_gen(k1: &Alg<S>, g: &Gen<S>) -> Self {
        GrpElt2 { k1: k1.clone(), t: S::one(), g: g.matrix(k1) }
    }

    pub fn tower(&self) -> &Alg<S> {
        &self.k1
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !self.k1.same(&other.k1) {
            return Err(Error::TowerMismatch);
        }
        Ok(GrpElt2 { k1: self.k1.clone(), t: self.t.clone() * other.t.clone(), g: &self.g * &other.g })
    }

    pub fn inverse(&self) -> Self {
        GrpElt2 {
            k1: self.k1.clone(),
            t: S::one() / self.t.clone(),
            g: self.g.inverse().expect("group elements are invertible"),
        }
    }

    /// `χ(g) = N_{k1/k}(det g)`.
    pub fn chi(&self) -> S {
        self.g.det().norm()
    }

    /// The factor `t⁴ χ(g)²` in `Δ((t, g)x) = t⁴ χ(g)² Δ(x)`.
    pub fn delta_factor(&self) -> S {
        let c = self.chi();
        self.t.pow_u64(4) * c.clone() * c
    }
}

pub fn act2<S: Scalar>(e: &GrpElt2<S>, x: &V2Elem<S>) -> Result<V2Elem<S>> {
    if !e.k1.same(&x.k1) {
        return Err(Error::TowerMismatch);
    }
    let word = decompose(&e.g)?;
    Ok(act_word(&word, x).scale(&e.t))
}

/// The same action through the LU route; `None` when `g11` is not a unit.
pub fn act2_lu<S: Scalar>(e: &GrpElt2<S>, x: &V2Elem<S>) -> Option<V2Elem<S>> {
    let word = decompose_lu(&e.g)?;
    Some(act_word(&word, x).scale(&e.t))
}

/// `Δ(x)`, the rational form of the hyperdeterminant.
pub fn delta2_value<S: Scalar>(x: &V2Elem<S>) -> S {
    let (a, d) = (x.x111.clone(), x.x222.clone());
    let z = x.x122.clone() * x.x211.clone();
    let k = S::from_i64;
    a.clone() * a.clone() * d.clone() * d.clone() + (z.clone() * z.clone()).trace()
        - k(2) * a.clone() * d.clone() * z.trace()
        - k(2) * z.e2()
        + k(4) * a * x.x122.norm()
        + k(4) * d * x.x211.norm()
}

pub fn delta2<S: Scalar>(x: &V2Elem<S>) -> (S, bool) {
    let d = delta2_value(x);
    let ss = !d.is_zero();
    (d, ss)
}

/// `k(x) = k(Δ(x)^½)`.
pub fn classify2<S: Scalar>(x: &V2Elem<S>) -> Result<ErLabel> {
    if S::characteristic() == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    let d = delta2_value(x);
    if d.is_zero() {
        return Err(Error::NotSemistable);
    }
    if d.is_square()? {
        Ok(ErLabel::trivial())
    } else {
        Ok(ErLabel::quadratic(d.square_class()?))
    }
}

/// `w = e111 + e222`.
pub fn make_w2<S: Scalar>(k1: &Alg<S>) -> Result<V2Elem<S>> {
    V2Elem::from_base(k1, [S::one(), S::zero(), S::zero(), S::one()])
}

/// `w_α = (2, a1, a1² − 2a2, a1³ − 3a1a2)`.
pub fn make_w_alpha2<S: Scalar>(k1: &Alg<S>, f: &BinaryForm<S>) -> Result<V2Elem<S>> {
    let (a1, a2) = monic_quadratic(f)?;
    let k = S::from_i64;
    V2Elem::from_base(
        k1,
        [
            k(2),
            a1.clone(),
            a1.clone() * a1.clone() - k(2) * a2.clone(),
            a1.pow_u64(3) - k(3) * a1 * a2,
        ],
    )
}

#[derive(Clone, Debug)]
pub enum Fiber2<S: Scalar> {
    Trivial(S, S),
    /// `β` is an element of `k(α) = k[t]/(f(t, 1))`.
    Quadratic(BinaryForm<S>, AlgElem<S>),
}

/// Orbit representative: `β1 e111 + β2 e222`, or
/// `β (1, −α1)^⊗3 + β^ν (1, −α2)^⊗3` in rational coordinates.
pub fn rep2<S: Scalar>(k1: &Alg<S>, fiber: &Fiber2<S>) -> Result<V2Elem<S>> {
    match fiber {
        Fiber2::Trivial(b1, b2) => {
            if b1.is_zero() || b2.is_zero() {
                return Err(Error::NonUnit);
            }
            V2Elem::from_base(k1, [b1.clone(), S::zero(), S::zero(), b2.clone()])
        }
        Fiber2::Quadratic(f, beta) => {
            let ka = quadratic_root_algebra(f)?;
            if beta.alg().dim() != 2 || beta.alg().poly() != ka.poly() {
                return Err(Error::FiberDataMismatch("β must lie in k[t]/(f(t, 1))".into()));
            }
            let beta = AlgElem::new(&ka, beta.coords().to_vec());
            if !beta.is_unit() {
                return Err(Error::NonUnit);
            }
            let a = AlgElem::basis(&ka, 1);
            let tr = |e: u64| (a.pow_u64(e) * beta.clone()).trace();
            V2Elem::from_base(k1, [tr(0), -tr(1), tr(2), -tr(3)])
        }
    }
}

/// Torus element `(N(t21)⁻¹, a(t21, t21·s))` fixing `w`, for `N(s) = 1`.
pub fn stab2_w<S: Scalar>(k1: &Alg<S>, t21: &AlgElem<S>, s: &AlgElem<S>) -> Result<GrpElt2<S>> {
    if !s.norm().is_one() {
        return Err(Error::NormConditionUnsatisfiable("s must have norm 1".into()));
    }
    let t1 = t21
        .norm()
        .inverse()
        .ok_or_else(|| Error::NormConditionUnsatisfiable("t21 is not a unit".into()))?;
    let e = GrpElt2::new(k1, t1, Matrix::diag(vec![t21.clone(), t21.clone() * s.clone()]))?;
    let w = make_w2(k1)?;
    if act2(&e, &w)? != w {
        return Err(Error::CheckFailed("torus element does not fix w".into()));
    }
    Ok(e)
}

/// Composite `L = k1 ⊗ k(α)` for stabilizers of `w_α`.
#[derive(Clone, Debug)]
pub struct AlphaData2<S: Scalar> {
    pub k1: Alg<S>,
    pub kalpha: Alg<S>,
    pub composite: Alg<S>,
    pub alpha1: AlgElem<S>,
    pub alpha2: AlgElem<S>,
    pub f: BinaryForm<S>,
}

impl<S: Scalar> AlphaData2<S> {
    pub fn new(k1: &Alg<S>, f: &BinaryForm<S>) -> Result<Self> {
        check_cubic_tower(k1)?;
        let kalpha = quadratic_root_algebra(f)?;
        let composite = EtaleAlgebra::tensor(k1, &kalpha);
        let t = AlgElem::basis(&kalpha, 1);
        let alpha1 = AlgElem::embed_right(&composite, &t);
        let alpha2 = AlgElem::embed_right(&composite, &t.sigma());
        Ok(AlphaData2 { k1: k1.clone(), kalpha, composite, alpha1, alpha2, f: f.clone() })
    }

    pub fn nu(&self) -> usize {
        self.composite.tensor_aut(0, self.kalpha.generators()[0])
    }

    pub fn p(&self) -> Matrix<AlgElem<S>> {
        let one = AlgElem::one(&self.composite);
        Matrix::from_rows(vec![vec![one.clone(), one], vec![-self.alpha1.clone(), -self.alpha2.clone()]])
    }

    /// An element of `L` whose norm to `k(α)` is 1: `u^3 / N(u)`.
    pub fn norm_one(&self, u: &AlgElem<S>) -> Option<AlgElem<S>> {
        let n = AlgElem::embed_right(&self.composite, &u.norm_to_right());
        Some(u.pow_u64(3) * n.inverse()?)
    }
}

/// `g_α (t1, a(t21, t21^ν)) g_α⁻¹`, where `N_{L/k(α)}(t21)` must lie in k and
/// `t1` is its inverse.
pub fn stab2_w_alpha<S: Scalar>(data: &AlphaData2<S>, t21: &AlgElem<S>) -> Result<GrpElt2<S>> {
    if !t21.alg().same(&data.composite) {
        return Err(Error::TowerMismatch);
    }
    let n = t21.norm_to_right();
    let n = n
        .to_base()
        .map_err(|_| Error::NormConditionUnsatisfiable("N(t21) must lie in k".into()))?;
    let t1 = n
        .inverse()
        .ok_or_else(|| Error::NormConditionUnsatisfiable("t21 is not a unit".into()))?;
    let p = data.p();
    let pinv = p.inverse().ok_or(Error::DegeneratePolynomial)?;
    let h = &(&p * &Matrix::diag(vec![t21.clone(), t21.apply(data.nu())])) * &pinv;
    let e = GrpElt2::new(&data.k1, t1, descend_left(&h)?)?;
    let wa = make_w_alpha2(&data.k1, &data.f)?;
    if act2(&e, &wa)? != wa {
        return Err(Error::CheckFailed("conjugated torus element does not fix w_α".into()));
    }
    Ok(e)
}
