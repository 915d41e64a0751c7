//! Pairs of ternary Hermitian forms over a quadratic algebra `k1/k` with
//! `G = GL_3(k1) × GL_2(k)`.
//!
//! Constructions involving the roots of a cubic work in `C = k1 ⊗ L`, where
//! `L` carries the roots. σ acts on the `k1` factor and the automorphisms of
//! `L` on the other; results are descended to `k1` by checking that every
//! coordinate outside `k1 ⊗ 1` vanishes.

mod roots;

pub use roots::{dehomogenize, CubicRootData};

use rand::Rng;

use crate::arith::algebra::{Alg, AlgElem, EtaleAlgebra};
use crate::arith::form::BinaryForm;
use crate::arith::label::{splitting_label, ErLabel, GaloisType};
use crate::arith::matrix::Matrix;
use crate::arith::scalar::{Ring, Scalar};
use crate::case1::descend_left;
use crate::error::{Error, Result};
use crate::herm::{act_pencil, check_quadratic_tower, HermGroupElt, HermPair};

use roots::monic_cubic;

pub type HermPair3<S> = HermPair<S, 3>;
pub type GrpElt3<S> = HermGroupElt<S, 3>;

pub fn act3<S: Scalar>(g: &GrpElt3<S>, x: &HermPair3<S>) -> Result<HermPair3<S>> {
    g.act(x)
}

pub fn f3<S: Scalar>(x: &HermPair3<S>) -> Result<BinaryForm<S>> {
    x.form()
}

/// Δ(x) and whether x is semistable.
pub fn delta3<S: Scalar>(x: &HermPair3<S>) -> Result<(S, bool)> {
    let d = x.delta()?;
    let ss = !d.is_zero();
    Ok((d, ss))
}

pub fn classify3<S: Scalar>(x: &HermPair3<S>) -> Result<ErLabel> {
    x.classify()
}

fn diag3<S: Scalar>(a: i64, b: i64, c: i64) -> Matrix<S> {
    Matrix::diag(vec![S::from_i64(a), S::from_i64(b), S::from_i64(c)])
}

/// `w = v1·diag(1, −1, 0) + v2·diag(0, −1, 1)`.
pub fn make_w3<S: Scalar>(k1: &Alg<S>) -> Result<HermPair3<S>> {
    HermPair::from_base(k1, &diag3(1, -1, 0), &diag3(0, -1, 1))
}

fn perm_matrix<S: Scalar>(p: [usize; 3]) -> Matrix<S> {
    Matrix::from_fn(3, 3, |i, j| if p[j] == i { S::one() } else { S::zero() })
}

/// `τ1 = ((12), [[−1, 0], [−1, 1]])` and `τ2 = ((13), antidiag(1, 1))`.
pub fn make_taus<S: Scalar>(k1: &Alg<S>) -> Result<(GrpElt3<S>, GrpElt3<S>)> {
    let k = S::from_i64;
    let emb = |m: Matrix<S>| m.map(|x| AlgElem::from_base(k1, x.clone()));
    let t1 = GrpElt3::new(
        k1,
        emb(perm_matrix([1, 0, 2])),
        Matrix::from_rows(vec![vec![k(-1), k(0)], vec![k(-1), k(1)]]),
    )?;
    let t2 = GrpElt3::new(
        k1,
        emb(perm_matrix([2, 1, 0])),
        Matrix::from_rows(vec![vec![k(0), k(1)], vec![k(1), k(0)]]),
    )?;
    Ok((t1, t2))
}

/// `Zero(w)` listed by the diagonal entry of `w` that vanishes there:
/// `(0, 1)`, `(1, −1)`, `(1, 0)`.
pub fn zero_points_w<S: Scalar>() -> [(S, S); 3] {
    [(S::zero(), S::one()), (S::one(), -S::one()), (S::one(), S::zero())]
}

/// The permutation `p ↦ p·g2⁻¹` of `Zero(w)` induced by an element fixing `w`.
pub fn zero_permutation<S: Scalar>(g: &GrpElt3<S>) -> Result<[usize; 3]> {
    let h = g.g2().inverse().ok_or(Error::SingularGroupElement)?;
    let pts = zero_points_w::<S>();
    let mut out = [0; 3];
    for (i, (a, b)) in pts.iter().enumerate() {
        let x = a.clone() * h.get(0, 0).clone() + b.clone() * h.get(1, 0).clone();
        let y = a.clone() * h.get(0, 1).clone() + b.clone() * h.get(1, 1).clone();
        out[i] = pts
            .iter()
            .position(|(c, d)| (x.clone() * d.clone() - y.clone() * c.clone()).is_zero())
            .ok_or_else(|| Error::Invalid("element does not preserve Zero(w)".into()))?;
    }
    Ok(out)
}

/// The representative attached to a monic cubic:
/// `v1 [[0, 0, −1], [0, −1, a1], [−1, a1, −a1² + a2]]
///  + v2 [[0, 1, −a1], [1, −a1, a1² − a2], [−a1, a1² − a2, −a1³ + 2a1a2 − a3]]`.
pub fn make_w_alpha3<S: Scalar>(k1: &Alg<S>, f: &BinaryForm<S>) -> Result<HermPair3<S>> {
    let [a1, a2, a3] = monic_cubic(f)?;
    let (z, o) = (S::zero(), S::one());
    let s2 = a1.clone() * a1.clone() - a2.clone();
    let s3 = -a1.pow_u64(3) + S::from_i64(2) * a1.clone() * a2 - a3;
    let x1 = Matrix::from_rows(vec![
        vec![z.clone(), z.clone(), -o.clone()],
        vec![z.clone(), -o.clone(), a1.clone()],
        vec![-o.clone(), a1.clone(), -s2.clone()],
    ]);
    let x2 = Matrix::from_rows(vec![
        vec![z, o.clone(), -a1.clone()],
        vec![o, -a1.clone(), s2.clone()],
        vec![-a1, s2.clone(), s3],
    ]);
    HermPair::from_base(k1, &x1, &x2)
}

/// Root data together with `C = k1 ⊗ L` and `g_α = (P_α, Q_α)` over it.
#[derive(Clone, Debug)]
pub struct AlphaData3<S: Scalar> {
    pub k1: Alg<S>,
    pub roots: CubicRootData<S>,
    pub composite: Alg<S>,
    pub p: Matrix<AlgElem<S>>,
    pub q: Matrix<AlgElem<S>>,
    pub d: AlgElem<S>,
}

impl<S: Scalar> AlphaData3<S> {
    /// Builds `P_α`, `Q_α`, `D_α` and checks `det P_α = −D_α`,
    /// `det Q_α = 1/D_α`, the `A_i` identities and `g_α·w = w_α`.
    pub fn new(k1: &Alg<S>, roots: CubicRootData<S>) -> Result<Self> {
        check_quadratic_tower(k1)?;
        let l = roots.splitting().clone();
        let c = EtaleAlgebra::tensor(k1, &l);
        let [a1, a2, a3] = monic_cubic(roots.f())?;
        let d_l = roots.d();
        let b = |s: S| AlgElem::from_base(&l, s);
        let checks = [
            (2, d_l.clone()),
            (3, -d_l.clone() * b(a1.clone())),
            (4, d_l.clone() * b(a1.clone() * a1.clone() - a2.clone())),
            (5, d_l.clone() * b(-a1.pow_u64(3) + S::from_i64(2) * a1 * a2 - a3)),
        ];
        for (i, want) in checks {
            if roots.a(i) != want {
                return Err(Error::CheckFailed(format!("A_{i} identity fails")));
            }
        }
        let up = |x: &AlgElem<S>| AlgElem::embed_right(&c, x);
        let al: Vec<AlgElem<S>> = roots.roots().iter().map(up).collect();
        let one = AlgElem::one(&c);
        let p = Matrix::from_fn(3, 3, |i, j| if i == 0 { one.clone() } else { al[j].pow_u64(i as u64) });
        let d = up(&d_l);
        let dinv = d.inverse().ok_or(Error::DegeneratePolynomial)?;
        let (x, y, z) = (al[0].clone(), al[1].clone(), al[2].clone());
        let q = Matrix::from_rows(vec![
            vec![-(y.clone() - z.clone()), y.clone() - x.clone()],
            vec![x.clone() * (y.clone() - z.clone()), -z * (y - x)],
        ])
        .scale(&dinv);
        if p.det() != -d.clone() || q.det() != dinv {
            return Err(Error::CheckFailed("determinants of P_α, Q_α".into()));
        }
        let data = AlphaData3 { k1: k1.clone(), roots, composite: c, p, q, d };
        if data.g_alpha_w()? != make_w_alpha3(k1, data.roots.f())? {
            return Err(Error::CheckFailed("g_α·w differs from w_α".into()));
        }
        Ok(data)
    }

    /// Index in `C` of the automorphism `id ⊗ g`.
    pub fn lift(&self, g: usize) -> usize {
        self.composite.tensor_aut(0, g)
    }

    /// `g_α` applied to `v1 diag(b1, −b2, 0) + v2 diag(0, −b2, b3)` over `C`,
    /// descended to `k1`.
    pub fn apply_to_diag(&self, b: [AlgElem<S>; 3]) -> Result<HermPair3<S>> {
        let z = AlgElem::zero(&self.composite);
        let [b1, b2, b3] = b;
        let x1 = Matrix::diag(vec![b1, -b2.clone(), z.clone()]);
        let x2 = Matrix::diag(vec![z, -b2, b3]);
        let (y1, y2) = act_pencil(&self.p, &self.q, &x1, &x2);
        HermPair::new(&self.k1, descend_left(&y1)?, descend_left(&y2)?)
    }

    /// `g_α·w` computed in `C`.
    pub fn g_alpha_w(&self) -> Result<HermPair3<S>> {
        let o = AlgElem::one(&self.composite);
        self.apply_to_diag([o.clone(), o.clone(), o])
    }

    /// The shape of the root data: two orbits `{α1, α2}, {α3}` or one orbit.
    pub fn galois_shape(&self) -> Result<RootShape> {
        let o = self.roots.orbits();
        match o.as_slice() {
            [a, b] if *a == [0, 1] && *b == [2] => Ok(RootShape::Quadratic),
            [a] if a.len() == 3 => Ok(RootShape::Cubic),
            _ => Err(Error::UnsupportedGaloisCase),
        }
    }

    /// Spreads one parameter per root orbit over all three roots:
    /// `t_j = g(t_i)` for the orbit representative `i` and any `g` with
    /// `g(α_i) = α_j`. Each parameter must be fixed by the stabilizer of its root.
    pub fn spread(&self, params: &[AlgElem<S>]) -> Result<[AlgElem<S>; 3]> {
        let orbits = self.roots.orbits();
        if params.len() != orbits.len() {
            return Err(Error::FiberDataMismatch(format!("expected {} parameters, one per root orbit", orbits.len())));
        }
        let mut out: [Option<AlgElem<S>>; 3] = [None, None, None];
        for (o, t) in orbits.iter().zip(params) {
            if !t.alg().same(&self.composite) {
                return Err(Error::TowerMismatch);
            }
            let i = o[0];
            if self.roots.stabilizer(i).iter().any(|&g| !t.is_fixed_by(self.lift(g))) {
                return Err(Error::FiberDataMismatch(format!("parameter for α{} is not fixed by its stabilizer", i + 1)));
            }
            for &j in o {
                let g = self.roots.carrier(i, j).expect("j lies in the orbit of i");
                out[j] = Some(t.apply(self.lift(g)));
            }
        }
        Ok(out.map(|x| x.expect("orbits cover the roots")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootShape {
    Quadratic,
    Cubic,
}

#[derive(Clone, Debug)]
pub enum Fiber3<S: Scalar> {
    Trivial(S, S, S),
    /// Root data from [`CubicRootData::quadratic`] for a field other than k1;
    /// `β` is a unit of `L = k(α)`.
    Quadratic(CubicRootData<S>, AlgElem<S>),
    KOne,
    /// `β` is a unit of `L` fixed by the automorphisms fixing `α1`.
    CyclicCubic(CubicRootData<S>, AlgElem<S>),
    S3(CubicRootData<S>, AlgElem<S>),
}

/// The cubic `v1·f0` attached to k1 = `k[t]/(f0(t))`.
pub fn kone_cubic<S: Scalar>(k1: &Alg<S>) -> Result<BinaryForm<S>> {
    check_quadratic_tower(k1)?;
    let f0 = k1.poly().ok_or_else(|| Error::Invalid("k1 must be monogenic".into()))?;
    Ok(BinaryForm::new(vec![S::one(), f0.coeff(1), f0.coeff(0), S::zero()]))
}

/// Orbit representatives.
pub fn rep3<S: Scalar>(k1: &Alg<S>, fiber: &Fiber3<S>) -> Result<HermPair3<S>> {
    match fiber {
        Fiber3::Trivial(b1, b2, b3) => {
            if b1.is_zero() || b2.is_zero() || b3.is_zero() {
                return Err(Error::NonUnit);
            }
            let z = S::zero();
            HermPair::from_base(
                k1,
                &Matrix::diag(vec![b1.clone(), -b2.clone(), z.clone()]),
                &Matrix::diag(vec![z, -b2.clone(), b3.clone()]),
            )
        }
        Fiber3::KOne => {
            let f0 = k1.poly().ok_or_else(|| Error::Invalid("k1 must be monogenic".into()))?;
            let f2 = BinaryForm::new(vec![S::one(), f0.coeff(1), f0.coeff(0)]);
            let data = AlphaData3::new(k1, CubicRootData::quadratic(&f2)?)?;
            data.g_alpha_w()
        }
        Fiber3::Quadratic(roots, beta) => {
            let data = AlphaData3::new(k1, roots.clone())?;
            if data.galois_shape()? != RootShape::Quadratic || !roots.roots()[2].vanishes() {
                return Err(Error::FiberDataMismatch("quadratic fiber needs roots (α1, α2, 0)".into()));
            }
            if data.composite.is_field() != Some(true) {
                return Err(Error::FiberDataMismatch("k(α) must be a field different from k1".into()));
            }
            let b = lift_beta(&data, beta)?;
            let one = AlgElem::one(&data.composite);
            let [b1, b2, _] = data.spread(&[b, one.clone()])?;
            data.apply_to_diag([b1, b2, one])
        }
        Fiber3::CyclicCubic(roots, beta) | Fiber3::S3(roots, beta) => {
            let want = if matches!(fiber, Fiber3::CyclicCubic(..)) { GaloisType::CyclicCubic } else { GaloisType::S3 };
            let label = splitting_label(roots.f())?;
            if label.galois != want {
                return Err(Error::FiberDataMismatch(format!("f has splitting field of type {}", label.name())));
            }
            let data = AlphaData3::new(k1, roots.clone())?;
            if data.galois_shape()? != RootShape::Cubic {
                return Err(Error::FiberDataMismatch("root data is not transitive".into()));
            }
            let b = lift_beta(&data, beta)?;
            data.apply_to_diag(data.spread(&[b])?)
        }
    }
}

fn lift_beta<S: Scalar>(data: &AlphaData3<S>, beta: &AlgElem<S>) -> Result<AlgElem<S>> {
    if !beta.alg().same(data.roots.splitting()) {
        return Err(Error::TowerMismatch);
    }
    if !beta.is_unit() {
        return Err(Error::NonUnit);
    }
    Ok(AlgElem::embed_right(&data.composite, beta))
}

/// `(diag(t11, t12, t13), t2 I)` fixing `w`, where `N(t1j)` is the same for
/// all j and `t2` is its inverse.
pub fn stab3_w<S: Scalar>(k1: &Alg<S>, t: [&AlgElem<S>; 3]) -> Result<GrpElt3<S>> {
    let n = t[0].norm();
    if t.iter().any(|x| x.norm() != n) {
        return Err(Error::NormConditionUnsatisfiable("t11, t12, t13 must have equal norms".into()));
    }
    let t2 = n
        .inverse()
        .ok_or_else(|| Error::NormConditionUnsatisfiable("torus parameters must be units".into()))?;
    let g = GrpElt3::new(k1, Matrix::diag(t.iter().map(|x| (*x).clone()).collect()), Matrix::scalar(2, &t2))?;
    let w = make_w3(k1)?;
    if g.act(&w)? != w {
        return Err(Error::CheckFailed("torus element does not fix w".into()));
    }
    Ok(g)
}

/// `g_α t g_α⁻¹` with `t = (diag(t11, t12, t13), t2 I)`. One parameter in `C`
/// is given per root orbit (see [`AlphaData3::spread`]); every `t1j·t1j^σ`
/// must equal the same element of k, and `t2` is its inverse.
pub fn stab3_w_alpha<S: Scalar>(data: &AlphaData3<S>, params: &[AlgElem<S>]) -> Result<GrpElt3<S>> {
    data.galois_shape()?;
    let t = data.spread(params)?;
    let norms: Vec<AlgElem<S>> = t.iter().map(|x| x.clone() * x.sigma()).collect();
    let n = norms[0]
        .to_base()
        .map_err(|_| Error::NormConditionUnsatisfiable("t·t^σ must lie in k".into()))?;
    if norms.iter().any(|m| *m != norms[0]) {
        return Err(Error::NormConditionUnsatisfiable("t·t^σ must agree for all roots".into()));
    }
    let t2 = n
        .inverse()
        .ok_or_else(|| Error::NormConditionUnsatisfiable("torus parameters must be units".into()))?;
    let pinv = data.p.inverse().ok_or(Error::DegeneratePolynomial)?;
    let h = &(&data.p * &Matrix::diag(t.to_vec())) * &pinv;
    let g = GrpElt3::new(&data.k1, descend_left(&h)?, Matrix::scalar(2, &t2))?;
    let wa = make_w_alpha3(&data.k1, data.roots.f())?;
    if g.act(&wa)? != wa {
        return Err(Error::CheckFailed("conjugated torus element does not fix w_α".into()));
    }
    Ok(g)
}

/// Random parameters for [`stab3_w_alpha`]: `c·d·u/u^σ` per root orbit with
/// `c ∈ k`, `d ∈ k1` shared and `u` averaged over the stabilizer of the root.
pub fn sample_stab3_params<S: Scalar, R: Rng + ?Sized>(data: &AlphaData3<S>, rng: &mut R, height: u32) -> Vec<AlgElem<S>> {
    let c = &data.composite;
    let common = AlgElem::embed_left(c, &AlgElem::sample_unit(&data.k1, rng, height))
        .scale(&loop {
            let x = S::sample(rng, height);
            if !x.is_zero() {
                break x;
            }
        });
    data.roots
        .orbits()
        .iter()
        .map(|o| loop {
            let u = AlgElem::sample_unit(c, rng, height);
            let u = data.roots.stabilizer(o[0]).iter().fold(AlgElem::one(c), |acc, &g| acc * u.apply(data.lift(g)));
            if let Some(inv) = u.sigma().inverse() {
                break common.clone() * u * inv;
            }
        })
        .collect()
}
