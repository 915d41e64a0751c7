use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Value};

use crate::arith::factor::factor_binary_form;
use crate::arith::form::BinaryForm;
use crate::arith::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GaloisType {
    Trivial,
    Quadratic,
    CyclicCubic,
    S3,
}

impl GaloisType {
    pub fn name(self) -> &'static str {
        match self {
            GaloisType::Trivial => "trivial",
            GaloisType::Quadratic => "quadratic",
            GaloisType::CyclicCubic => "cyclic-cubic",
            GaloisType::S3 => "s3",
        }
    }
}

/// Isomorphism-class descriptor of a splitting field.
///
/// Over Q, quadratic and S3 labels carry the squarefree core of the
/// discriminant. The normalized defining cubic is kept as a witness and does
/// not take part in equality.
#[derive(Clone, Debug)]
pub struct ErLabel {
    pub degree: u32,
    pub galois: GaloisType,
    pub core: Option<BigInt>,
    pub witness: Option<Vec<String>>,
}

impl PartialEq for ErLabel {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.galois == other.galois && self.core == other.core
    }
}

impl Eq for ErLabel {}

impl std::hash::Hash for ErLabel {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.degree, self.galois, &self.core).hash(state);
    }
}

impl PartialOrd for ErLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ErLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree, self.galois, &self.core).cmp(&(other.degree, other.galois, &other.core))
    }
}

impl ErLabel {
    pub fn trivial() -> Self {
        ErLabel { degree: 1, galois: GaloisType::Trivial, core: None, witness: None }
    }

    pub fn quadratic(core: Option<BigInt>) -> Self {
        ErLabel { degree: 2, galois: GaloisType::Quadratic, core, witness: None }
    }

    pub fn cyclic_cubic() -> Self {
        ErLabel { degree: 3, galois: GaloisType::CyclicCubic, core: None, witness: None }
    }

    pub fn s3(core: Option<BigInt>) -> Self {
        ErLabel { degree: 6, galois: GaloisType::S3, core, witness: None }
    }

    /// Label of the field with `q^m` elements over F_q.
    pub fn finite(m: u32) -> Self {
        match m {
            1 => Self::trivial(),
            2 => Self::quadratic(None),
            3 => Self::cyclic_cubic(),
            _ => ErLabel { degree: m, galois: GaloisType::CyclicCubic, core: None, witness: None },
        }
    }

    pub fn name(&self) -> &'static str {
        self.galois.name()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"type": self.name(), "degree": self.degree});
        if let Some(c) = &self.core {
            v["core"] = json!(c.to_string());
        }
        if let Some(w) = &self.witness {
            v["poly"] = json!(w);
        }
        v
    }
}

impl fmt::Display for ErLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.core {
            Some(c) => write!(f, "{}({})", self.name(), c),
            None => write!(f, "{}", self.name()),
        }
    }
}

/// Label of the splitting field of a separable quadratic or cubic form.
pub fn splitting_label<S: Scalar>(form: &BinaryForm<S>) -> Result<ErLabel> {
    let d = form.disc()?;
    if d.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let fac = factor_binary_form(form)?;
    let degs = fac.degrees();
    if S::is_finite() {
        let m = degs.iter().fold(1usize, |acc, &x| acc.lcm(&x));
        return Ok(ErLabel::finite(m as u32));
    }
    let core = d.square_class()?;
    let max = degs.iter().copied().max().unwrap_or(1);
    Ok(match max {
        1 => ErLabel::trivial(),
        2 => ErLabel::quadratic(core),
        _ => {
            let (_, cubic) = fac.factors.iter().find(|(f, _)| f.degree() == 3).map(|(f, m)| (m, f)).unwrap();
            let witness = Some(cubic.coeffs().iter().map(|c| match c.to_json() {
                Value::String(s) => s,
                v => v.to_string(),
            }).collect());
            if d.is_square()? {
                ErLabel { witness, ..ErLabel::cyclic_cubic() }
            } else {
                ErLabel { witness, ..ErLabel::s3(core) }
            }
        }
    })
}
