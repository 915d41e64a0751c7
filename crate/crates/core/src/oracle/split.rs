//! Case 2 in split coordinates: a point is the full tensor `(x_ijk)` over
//! `k1 = F_{q³}`, and `g` acts as `g ⊗ g^σ ⊗ g^σ²` with σ the Frobenius.

use rand::Rng;

use crate::arith::algebra::{Alg, AlgElem};
use crate::arith::form::BinaryForm;
use crate::arith::matrix::Matrix;
use crate::arith::scalar::{Ring, Scalar};
use crate::case2::{act2, delta2_value, GrpElt2, V2Elem};
use crate::error::{Error, Result};
use crate::herm::pencil_det;

/// Entries indexed by `4i + 2j + k`, index 0 standing for 1 and 1 for 2.
pub type Split<S> = [AlgElem<S>; 8];

fn sigma_pow<S: Scalar>(x: &AlgElem<S>, n: usize) -> AlgElem<S> {
    (0..n).fold(x.clone(), |acc, _| acc.sigma())
}

pub fn to_split<S: Scalar>(x: &V2Elem<S>) -> Split<S> {
    let k = x.tower();
    let a = AlgElem::from_base(k, x.x111.clone());
    let d = AlgElem::from_base(k, x.x222.clone());
    let (b, c) = (&x.x211, &x.x122);
    [
        a,
        sigma_pow(b, 2),
        sigma_pow(b, 1),
        c.clone(),
        b.clone(),
        sigma_pow(c, 1),
        sigma_pow(c, 2),
        d,
    ]
}

/// Reads back rational coordinates, checking the conjugation pattern.
pub fn from_split<S: Scalar>(k1: &Alg<S>, y: &Split<S>) -> Result<V2Elem<S>> {
    let x = V2Elem::new(k1, y[0].to_base()?, y[4].clone(), y[3].clone(), y[7].to_base()?)?;
    if to_split(&x) != *y {
        return Err(Error::NotRational("split tensor is not Frobenius-compatible".into()));
    }
    Ok(x)
}

pub fn act_split<S: Scalar>(t: &S, g: &Matrix<AlgElem<S>>, x: &Split<S>) -> Split<S> {
    let gs = [g.clone(), g.map(|e| e.sigma()), g.map(|e| e.sigma().sigma())];
    let k = x[0].alg();
    let tt = AlgElem::from_base(k, t.clone());
    std::array::from_fn(|out| {
        let (i2, j2, k2) = (out >> 2 & 1, out >> 1 & 1, out & 1);
        let mut acc = AlgElem::zero(k);
        for (inp, xv) in x.iter().enumerate() {
            if xv.vanishes() {
                continue;
            }
            let (i, j, kk) = (inp >> 2 & 1, inp >> 1 & 1, inp & 1);
            acc = acc
                + gs[0].get(i2, i).clone() * gs[1].get(j2, j).clone() * gs[2].get(k2, kk).clone() * xv.clone();
        }
        acc * tt.clone()
    })
}

/// `det(v1 X_1 + v2 X_2)` for the slices `X_i = (x_ijk)_{jk}`.
pub fn split_pencil<S: Scalar>(x: &Split<S>) -> BinaryForm<AlgElem<S>> {
    let slice = |i: usize| Matrix::from_fn(2, 2, |j, k| x[4 * i + 2 * j + k].clone());
    pencil_det(&slice(0), &slice(1))
}

pub fn split_delta<S: Scalar>(x: &Split<S>) -> AlgElem<S> {
    split_pencil(x).disc().expect("quadratic pencil")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitCheckReport {
    pub samples: usize,
    pub action_mismatches: usize,
    pub delta_mismatches: usize,
    pub first_failure: Option<String>,
}

impl SplitCheckReport {
    pub fn passed(&self) -> bool {
        self.action_mismatches == 0 && self.delta_mismatches == 0
    }
}

/// Compares `act2` and `delta2` with the split-coordinate computation on
/// random `(t, g, x)`. `k1` must be a cubic field with Frobenius as σ.
pub fn split_action_check<S: Scalar, R: Rng + ?Sized>(k1: &Alg<S>, samples: usize, rng: &mut R) -> Result<SplitCheckReport> {
    if !S::is_finite() || k1.dim() != 3 || k1.is_field() != Some(true) {
        return Err(Error::UnsupportedField("split check needs a finite cubic field".into()));
    }
    let t0 = AlgElem::basis(k1, 1);
    if t0.sigma() != t0.frobenius() {
        return Err(Error::Invalid("σ must be the Frobenius".into()));
    }
    let mut rep = SplitCheckReport::default();
    for n in 0..samples {
        let x = V2Elem::new(
            k1,
            S::sample(rng, 0),
            AlgElem::sample(k1, rng, 0),
            AlgElem::sample(k1, rng, 0),
            S::sample(rng, 0),
        )?;
        let e = if n == 0 {
            GrpElt2::identity(k1)
        } else {
            loop {
                let g = Matrix::from_fn(2, 2, |_, _| AlgElem::sample(k1, rng, 0));
                let t = S::sample(rng, 0);
                if let Ok(e) = GrpElt2::new(k1, t, g) {
                    break e;
                }
            }
        };
        rep.samples += 1;
        let lhs = act2(&e, &x)?;
        let rhs = act_split(&e.t, &e.g, &to_split(&x));
        if to_split(&lhs) != rhs {
            rep.action_mismatches += 1;
            rep.first_failure.get_or_insert_with(|| format!("action: g = {:?}, x = {:?}", e.g, x));
        }
        let d = AlgElem::from_base(k1, delta2_value(&x));
        if d != split_delta(&to_split(&x)) {
            rep.delta_mismatches += 1;
            rep.first_failure.get_or_insert_with(|| format!("delta: x = {x:?}"));
        }
    }
    Ok(rep)
}
