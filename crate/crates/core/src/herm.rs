//! Pairs of n×n Hermitian matrices over a quadratic algebra `k1/k` under
//! `GL_n(k1) × GL_2(k)`, acting by `g·M(v) = g1 M(v g2) ᵗg1^σ`.

use crate::arith::algebra::{Alg, AlgElem};
use crate::arith::form::BinaryForm;
use crate::arith::label::{splitting_label, ErLabel};
use crate::arith::matrix::Matrix;
use crate::arith::scalar::{Ring, Scalar};
use crate::error::{Error, Result};

/// Conjugate transpose `ᵗA^σ`.
pub fn conj_transpose<S: Scalar>(a: &Matrix<AlgElem<S>>) -> Matrix<AlgElem<S>> {
    Matrix::from_fn(a.cols(), a.rows(), |i, j| a.get(j, i).sigma())
}

pub fn embed_matrix<S: Scalar>(k1: &Alg<S>, a: &Matrix<S>) -> Matrix<AlgElem<S>> {
    a.map(|x| AlgElem::from_base(k1, x.clone()))
}

pub(crate) fn check_quadratic_tower<S: Scalar>(k1: &Alg<S>) -> Result<()> {
    if k1.dim() != 2 || k1.group_order() != 2 || k1.generators().is_empty() {
        return Err(Error::Invalid("k1 must be a quadratic algebra with its conjugation".into()));
    }
    Ok(())
}

fn check_entries<S: Scalar>(k1: &Alg<S>, a: &Matrix<AlgElem<S>>, n: usize) -> Result<()> {
    if a.rows() != n || a.cols() != n {
        return Err(Error::Shape(format!("expected {n}×{n}, got {}×{}", a.rows(), a.cols())));
    }
    if a.entries().iter().any(|x| !x.alg().same(k1)) {
        return Err(Error::TowerMismatch);
    }
    Ok(())
}

/// A point `(x1, x2)` of the space of pairs of n×n Hermitian forms.
#[derive(Clone, Debug, PartialEq)]
pub struct HermPair<S: Scalar, const N: usize> {
    k1: Alg<S>,
    x1: Matrix<AlgElem<S>>,
    x2: Matrix<AlgElem<S>>,
}

impl<S: Scalar, const N: usize> HermPair<S, N> {
    pub fn new(k1: &Alg<S>, x1: Matrix<AlgElem<S>>, x2: Matrix<AlgElem<S>>) -> Result<Self> {
        check_quadratic_tower(k1)?;
        check_entries(k1, &x1, N)?;
        check_entries(k1, &x2, N)?;
        if conj_transpose(&x1) != x1 || conj_transpose(&x2) != x2 {
            return Err(Error::NotHermitian);
        }
        Ok(HermPair { k1: k1.clone(), x1, x2 })
    }

    /// Pair from matrices over the base field, which are Hermitian when symmetric.
    pub fn from_base(k1: &Alg<S>, x1: &Matrix<S>, x2: &Matrix<S>) -> Result<Self> {
        Self::new(k1, embed_matrix(k1, x1), embed_matrix(k1, x2))
    }

    pub fn tower(&self) -> &Alg<S> {
        &self.k1
    }

    pub fn x1(&self) -> &Matrix<AlgElem<S>> {
        &self.x1
    }

    pub fn x2(&self) -> &Matrix<AlgElem<S>> {
        &self.x2
    }

    /// `F_x(v) = det(v1 x1 + v2 x2)`, with coefficients descended to k.
    pub fn form(&self) -> Result<BinaryForm<S>> {
        pencil_det(&self.x1, &self.x2).try_map(|c| {
            c.to_base().map_err(|_| Error::NotRational("pencil determinant is not σ-fixed".into()))
        })
    }

    pub fn delta(&self) -> Result<S> {
        self.form()?.disc()
    }

    pub fn is_semistable(&self) -> Result<bool> {
        Ok(!self.delta()?.is_zero())
    }

    pub fn classify(&self) -> Result<ErLabel> {
        let f = self.form()?;
        if f.disc()?.is_zero() {
            return Err(Error::NotSemistable);
        }
        splitting_label(&f)
    }
}

/// Coefficients of `det(v1 X + v2 Y)` by multilinear expansion in the columns.
pub fn pencil_det<E: Ring>(x: &Matrix<E>, y: &Matrix<E>) -> BinaryForm<E> {
    let n = x.rows();
    let zero = x.get(0, 0).zero_like();
    let mut c = vec![zero; n + 1];
    for mask in 0u32..(1 << n) {
        let m = Matrix::from_fn(n, n, |i, j| if mask >> j & 1 == 1 { y.get(i, j).clone() } else { x.get(i, j).clone() });
        let k = mask.count_ones() as usize;
        c[k] = c[k].clone() + m.det();
    }
    BinaryForm::new(c)
}

/// A group element `(g1, g2) ∈ GL_n(k1) × GL_2(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermGroupElt<S: Scalar, const N: usize> {
    k1: Alg<S>,
    g1: Matrix<AlgElem<S>>,
    g2: Matrix<S>,
}

impl<S: Scalar, const N: usize> HermGroupElt<S, N> {
    pub fn new(k1: &Alg<S>, g1: Matrix<AlgElem<S>>, g2: Matrix<S>) -> Result<Self> {
        check_quadratic_tower(k1)?;
        check_entries(k1, &g1, N)?;
        if g2.rows() != 2 || g2.cols() != 2 {
            return Err(Error::Shape("g2 must be 2×2".into()));
        }
        if !g1.det().is_unit() || g2.det().is_zero() {
            return Err(Error::SingularGroupElement);
        }
        Ok(HermGroupElt { k1: k1.clone(), g1, g2 })
    }

    pub fn identity(k1: &Alg<S>) -> Self {
        HermGroupElt {
            k1: k1.clone(),
            g1: Matrix::identity(N, &AlgElem::one(k1)),
            g2: Matrix::identity(2, &S::one()),
        }
    }

    pub fn tower(&self) -> &Alg<S> {
        &self.k1
    }

    pub fn g1(&self) -> &Matrix<AlgElem<S>> {
        &self.g1
    }

    pub fn g2(&self) -> &Matrix<S> {
        &self.g2
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !self.k1.same(&other.k1) {
            return Err(Error::TowerMismatch);
        }
        Ok(HermGroupElt { k1: self.k1.clone(), g1: &self.g1 * &other.g1, g2: &self.g2 * &other.g2 })
    }

    pub fn inverse(&self) -> Self {
        HermGroupElt {
            k1: self.k1.clone(),
            g1: self.g1.inverse().expect("group elements are invertible"),
            g2: self.g2.inverse().expect("group elements are invertible"),
        }
    }

    /// `N_{k1/k}(det g1)`, the factor in `F_{gx}(v) = N(det g1) F_x(v g2)`.
    pub fn norm_det1(&self) -> S {
        self.g1.det().norm()
    }

    pub fn act(&self, x: &HermPair<S, N>) -> Result<HermPair<S, N>> {
        if !self.k1.same(&x.k1) {
            return Err(Error::TowerMismatch);
        }
        let (y1, y2) = act_pencil(&self.g1, &self.g2.map(|a| AlgElem::from_base(&self.k1, a.clone())), &x.x1, &x.x2);
        if conj_transpose(&y1) != y1 || conj_transpose(&y2) != y2 {
            return Err(Error::CheckFailed("action output is not Hermitian".into()));
        }
        Ok(HermPair { k1: self.k1.clone(), x1: y1, x2: y2 })
    }
}

/// `g1 M(v g2) ᵗg1^σ` on the two pencil coefficients. Entries of g2 may lie in
/// any algebra the pencil lives in.
pub fn act_pencil<S: Scalar>(
    g1: &Matrix<AlgElem<S>>,
    g2: &Matrix<AlgElem<S>>,
    x1: &Matrix<AlgElem<S>>,
    x2: &Matrix<AlgElem<S>>,
) -> (Matrix<AlgElem<S>>, Matrix<AlgElem<S>>) {
    let h = conj_transpose(g1);
    let comb = |a: &AlgElem<S>, b: &AlgElem<S>| x1.scale(a) + x2.scale(b);
    let m1 = comb(g2.get(0, 0), g2.get(0, 1));
    let m2 = comb(g2.get(1, 0), g2.get(1, 1));
    (&(g1 * &m1) * &h, &(g1 * &m2) * &h)
}
