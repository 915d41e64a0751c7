//! Pairs of binary Hermitian forms over a quadratic algebra `k1/k` with
//! `G = GL_2(k1) × GL_2(k)`.

use crate::arith::algebra::{Alg, AlgElem, EtaleAlgebra};
use crate::arith::form::BinaryForm;
use crate::arith::label::ErLabel;
use crate::arith::matrix::Matrix;
use crate::arith::poly::Poly;
use crate::arith::scalar::{Ring, Scalar};
use crate::error::{Error, Result};
use crate::herm::{act_pencil, HermGroupElt, HermPair};

pub type HermPair2<S> = HermPair<S, 2>;
pub type GrpElt1<S> = HermGroupElt<S, 2>;

pub fn act1<S: Scalar>(g: &GrpElt1<S>, x: &HermPair2<S>) -> Result<HermPair2<S>> {
    g.act(x)
}

pub fn f1<S: Scalar>(x: &HermPair2<S>) -> Result<BinaryForm<S>> {
    x.form()
}

/// Δ(x) and whether x is semistable.
pub fn delta1<S: Scalar>(x: &HermPair2<S>) -> Result<(S, bool)> {
    let d = x.delta()?;
    let ss = !d.is_zero();
    Ok((d, ss))
}

pub fn classify1<S: Scalar>(x: &HermPair2<S>) -> Result<ErLabel> {
    x.classify()
}

/// `w = v1·diag(1, 0) + v2·diag(0, 1)`.
pub fn make_w1<S: Scalar>(k1: &Alg<S>) -> Result<HermPair2<S>> {
    let (o, z) = (S::one(), S::zero());
    HermPair::from_base(
        k1,
        &Matrix::diag(vec![o.clone(), z.clone()]),
        &Matrix::diag(vec![z, o]),
    )
}

/// `τ = (antidiag(1, 1), antidiag(1, 1))`.
pub fn make_tau1<S: Scalar>(k1: &Alg<S>) -> Result<GrpElt1<S>> {
    let a = Matrix::from_rows(vec![vec![S::zero(), S::one()], vec![S::one(), S::zero()]]);
    GrpElt1::new(k1, a.map(|x| AlgElem::from_base(k1, x.clone())), a)
}

/// `(a1, a2)` of a monic quadratic form `v1² + a1 v1v2 + a2 v2²`.
pub(crate) fn monic_quadratic<S: Scalar>(f: &BinaryForm<S>) -> Result<(S, S)> {
    if f.degree() != 2 || !f.coeff(0).is_one() {
        return Err(Error::Invalid("expected a monic quadratic form".into()));
    }
    if f.disc()?.is_zero() {
        return Err(Error::DegeneratePolynomial);
    }
    Ok((f.coeff(1).clone(), f.coeff(2).clone()))
}

/// `w_α = v1 [[2, a1], [a1, a1²−2a2]] + v2 [[a1, a1²−2a2], [a1²−2a2, a1³−3a1a2]]`.
pub fn make_w_alpha1<S: Scalar>(k1: &Alg<S>, f: &BinaryForm<S>) -> Result<HermPair2<S>> {
    let (a1, a2) = monic_quadratic(f)?;
    let k = S::from_i64;
    let s2 = a1.clone() * a1.clone() - k(2) * a2.clone();
    let s3 = a1.pow_u64(3) - k(3) * a1.clone() * a2;
    let x1 = Matrix::from_rows(vec![vec![k(2), a1.clone()], vec![a1.clone(), s2.clone()]]);
    let x2 = Matrix::from_rows(vec![vec![a1.clone(), s2.clone()], vec![s2, s3]]);
    HermPair::from_base(k1, &x1, &x2)
}

/// The algebra `k(α) = k[t]/(f(t, 1))` with `ν: t ↦ −a1 − t`.
pub fn quadratic_root_algebra<S: Scalar>(f: &BinaryForm<S>) -> Result<Alg<S>> {
    let (a1, a2) = monic_quadratic(f)?;
    EtaleAlgebra::make_extension(&Poly::new(vec![a2, a1.clone(), S::one()]), &[vec![-a1, -S::one()]])
}

/// Composite data `L = k1 ⊗ k(α)` for conjugating stabilizers of `w` to `w_α`.
#[derive(Clone, Debug)]
pub struct AlphaData1<S: Scalar> {
    pub k1: Alg<S>,
    pub kalpha: Alg<S>,
    pub composite: Alg<S>,
    pub alpha1: AlgElem<S>,
    pub alpha2: AlgElem<S>,
    pub f: BinaryForm<S>,
}

impl<S: Scalar> AlphaData1<S> {
    pub fn new(k1: &Alg<S>, f: &BinaryForm<S>) -> Result<Self> {
        crate::herm::check_quadratic_tower(k1)?;
        let kalpha = quadratic_root_algebra(f)?;
        let composite = EtaleAlgebra::tensor(k1, &kalpha);
        let t = AlgElem::basis(&kalpha, 1);
        let alpha1 = AlgElem::embed_right(&composite, &t);
        let alpha2 = AlgElem::embed_right(&composite, &t.sigma());
        Ok(AlphaData1 { k1: k1.clone(), kalpha, composite, alpha1, alpha2, f: f.clone() })
    }

    /// `ν` on the composite: the conjugation of the `k(α)` factor.
    pub fn nu(&self) -> usize {
        self.composite.tensor_aut(0, 1)
    }

    /// `P = [[1, 1], [−α1, −α2]]`, so that `w_α = (P, P)·w`.
    pub fn p(&self) -> Matrix<AlgElem<S>> {
        let one = AlgElem::one(&self.composite);
        Matrix::from_rows(vec![
            vec![one.clone(), one],
            vec![-self.alpha1.clone(), -self.alpha2.clone()],
        ])
    }
}

/// Torus element `(diag(t11, t12), diag(N(t11)⁻¹, N(t12)⁻¹))` stabilizing `w`.
pub fn stab1_w<S: Scalar>(k1: &Alg<S>, t11: &AlgElem<S>, t12: &AlgElem<S>) -> Result<GrpElt1<S>> {
    let inv = |t: &AlgElem<S>| {
        t.norm()
            .inverse()
            .ok_or_else(|| Error::NormConditionUnsatisfiable("torus parameter is not a unit".into()))
    };
    let g = GrpElt1::new(
        k1,
        Matrix::diag(vec![t11.clone(), t12.clone()]),
        Matrix::diag(vec![inv(t11)?, inv(t12)?]),
    )?;
    let w = make_w1(k1)?;
    if g.act(&w)? != w {
        return Err(Error::CheckFailed("torus element does not fix w".into()));
    }
    Ok(g)
}

/// `g_α t g_α⁻¹` for `t = (diag(t11, t11^ν), diag(n, n^ν))`, `n = N(t11)⁻¹`
/// with the norm taken relative to `k(α)`, descended to `GL_2(k1) × GL_2(k)`.
pub fn stab1_w_alpha<S: Scalar>(data: &AlphaData1<S>, t11: &AlgElem<S>) -> Result<GrpElt1<S>> {
    if !t11.alg().same(&data.composite) {
        return Err(Error::TowerMismatch);
    }
    let n = t11
        .norm_to_right()
        .inverse()
        .ok_or_else(|| Error::NormConditionUnsatisfiable("t11 is not a unit".into()))?;
    let n = AlgElem::embed_right(&data.composite, &n);
    let nu = data.nu();
    let p = data.p();
    let pinv = p.inverse().ok_or(Error::DegeneratePolynomial)?;
    let h1 = &(&p * &Matrix::diag(vec![t11.clone(), t11.apply(nu)])) * &pinv;
    let h2 = &(&p * &Matrix::diag(vec![n.clone(), n.apply(nu)])) * &pinv;
    let g1 = descend_left(&h1)?;
    let g2 = descend_base(&h2)?;
    let g = GrpElt1::new(&data.k1, g1, g2)?;
    let wa = make_w_alpha1(&data.k1, &data.f)?;
    if g.act(&wa)? != wa {
        return Err(Error::CheckFailed("conjugated torus element does not fix w_α".into()));
    }
    Ok(g)
}

pub(crate) fn descend_left<S: Scalar>(m: &Matrix<AlgElem<S>>) -> Result<Matrix<AlgElem<S>>> {
    let rows = m.to_rows();
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.left_part()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows))
}

pub(crate) fn descend_base<S: Scalar>(m: &Matrix<AlgElem<S>>) -> Result<Matrix<S>> {
    let rows = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.to_base()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows))
}

/// `(P, P)·w` computed in the composite; equals `make_w_alpha1` after descent.
pub fn g_alpha_w1<S: Scalar>(data: &AlphaData1<S>) -> Result<HermPair2<S>> {
    let l = &data.composite;
    let (o, z) = (AlgElem::one(l), AlgElem::zero(l));
    let x1 = Matrix::diag(vec![o.clone(), z.clone()]);
    let x2 = Matrix::diag(vec![z, o]);
    let p = data.p();
    let (y1, y2) = act_pencil(&p, &p, &x1, &x2);
    HermPair::new(&data.k1, descend_left(&y1)?, descend_left(&y2)?)
}
