//! JSON forms of towers, elements of the three spaces, and group elements.
//!
//! Algebra elements are coordinate arrays over the base. Rationals are
//! `"n/d"` strings and prime-field values are integers in `[0, p)`.

use serde_json::{json, Value};

use crate::arith::algebra::{Alg, AlgElem, EtaleAlgebra};
use crate::arith::form::BinaryForm;
use crate::arith::matrix::Matrix;
use crate::arith::poly::Poly;
use crate::arith::scalar::Scalar;
use crate::case2::{GrpElt2, V2Elem};
use crate::case3::CubicRootData;
use crate::error::{Error, Result};
use crate::herm::{HermGroupElt, HermPair};

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

/// The base descriptor of a tower: `("Q", 0)` or `("Fp", p)`.
pub fn base_kind(tower: &Value) -> Result<(String, u64)> {
    let b = tower.get("base").ok_or_else(|| bad("tower needs a base"))?;
    let kind = b.get("kind").and_then(Value::as_str).ok_or_else(|| bad("base needs a kind"))?;
    match kind {
        "Q" => Ok(("Q".into(), 0)),
        "Fp" => {
            let p = b.get("p").and_then(Value::as_u64).ok_or_else(|| bad("Fp base needs p"))?;
            Ok(("Fp".into(), p))
        }
        other => Err(bad(format!("unknown base kind {other}"))),
    }
}

pub fn scalars_to_json<S: Scalar>(c: &[S]) -> Value {
    Value::Array(c.iter().map(Scalar::to_json).collect())
}

pub fn scalars_from_json<S: Scalar>(v: &Value) -> Result<Vec<S>> {
    v.as_array().ok_or_else(|| bad("expected an array of scalars"))?.iter().map(S::from_json).collect()
}

pub fn tower_to_json<S: Scalar>(alg: &Alg<S>) -> Value {
    match (alg.poly(), alg.factors()) {
        (Some(p), _) => json!({
            "base": S::base_json(),
            "poly": scalars_to_json(p.coeffs()),
            "auts": alg.generator_images().iter().map(|c| scalars_to_json(c)).collect::<Vec<_>>(),
        }),
        (None, Some((a, b))) => json!({
            "base": S::base_json(),
            "tensor": [tower_to_json(a), tower_to_json(b)],
            "group_order": alg.group_order(),
        }),
        _ => json!({"base": S::base_json()}),
    }
}

pub fn tower_from_json<S: Scalar>(v: &Value) -> Result<Alg<S>> {
    let (kind, p) = base_kind(v)?;
    let want = if S::characteristic() == 0 { ("Q", 0) } else { ("Fp", S::characteristic()) };
    if kind != want.0 || p != want.1 {
        return Err(Error::BaseMismatch);
    }
    let poly = Poly::new(scalars_from_json(v.get("poly").ok_or_else(|| bad("tower needs poly"))?)?);
    let auts = match v.get("auts") {
        Some(a) => a
            .as_array()
            .ok_or_else(|| bad("auts must be an array"))?
            .iter()
            .map(scalars_from_json)
            .collect::<Result<Vec<_>>>()?,
        None => vec![],
    };
    EtaleAlgebra::make_extension(&poly, &auts)
}

pub fn elem_to_json<S: Scalar>(x: &AlgElem<S>) -> Value {
    scalars_to_json(x.coords())
}

pub fn elem_from_json<S: Scalar>(alg: &Alg<S>, v: &Value) -> Result<AlgElem<S>> {
    let c: Vec<S> = scalars_from_json(v)?;
    if c.len() > alg.dim() {
        return Err(bad(format!("element has {} coordinates, algebra has dimension {}", c.len(), alg.dim())));
    }
    Ok(AlgElem::new(alg, c))
}

fn mat_to_json<S: Scalar>(m: &Matrix<AlgElem<S>>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(elem_to_json).collect())).collect())
}

fn mat_from_json<S: Scalar>(alg: &Alg<S>, v: &Value) -> Result<Matrix<AlgElem<S>>> {
    let rows = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("matrix row must be an array"))?
                .iter()
                .map(|e| elem_from_json(alg, e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    check_rect(&rows)?;
    Ok(Matrix::from_rows(rows))
}

fn check_rect<T>(rows: &[Vec<T>]) -> Result<()> {
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Shape("matrix rows must be nonempty and of equal length".into()));
    }
    Ok(())
}

fn base_mat_to_json<S: Scalar>(m: &Matrix<S>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| scalars_to_json(r)).collect())
}

fn base_mat_from_json<S: Scalar>(v: &Value) -> Result<Matrix<S>> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad("matrix must be an array of rows"))?
        .iter()
        .map(scalars_from_json)
        .collect::<Result<Vec<_>>>()?;
    check_rect(&rows)?;
    Ok(Matrix::from_rows(rows))
}

pub fn case_of(v: &Value) -> Result<u64> {
    match v.get("case").and_then(Value::as_u64) {
        Some(c @ 1..=3) => Ok(c),
        _ => Err(bad("\"case\" must be 1, 2 or 3")),
    }
}

fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value> {
    v.get(k).ok_or_else(|| bad(format!("missing field \"{k}\"")))
}

pub fn herm_to_json<S: Scalar, const N: usize>(x: &HermPair<S, N>) -> Value {
    json!({
        "case": if N == 2 { 1 } else { 3 },
        "tower": tower_to_json(x.tower()),
        "x1": mat_to_json(x.x1()),
        "x2": mat_to_json(x.x2()),
    })
}

pub fn herm_from_json<S: Scalar, const N: usize>(v: &Value) -> Result<HermPair<S, N>> {
    let k1 = tower_from_json(field(v, "tower")?)?;
    HermPair::new(&k1, mat_from_json(&k1, field(v, "x1")?)?, mat_from_json(&k1, field(v, "x2")?)?)
}

pub fn v2_to_json<S: Scalar>(x: &V2Elem<S>) -> Value {
    json!({
        "case": 2,
        "tower": tower_to_json(x.tower()),
        "x111": x.x111.to_json(),
        "x211": elem_to_json(&x.x211),
        "x122": elem_to_json(&x.x122),
        "x222": x.x222.to_json(),
    })
}

pub fn v2_from_json<S: Scalar>(v: &Value) -> Result<V2Elem<S>> {
    let k1 = tower_from_json(field(v, "tower")?)?;
    V2Elem::new(
        &k1,
        S::from_json(field(v, "x111")?)?,
        elem_from_json(&k1, field(v, "x211")?)?,
        elem_from_json(&k1, field(v, "x122")?)?,
        S::from_json(field(v, "x222")?)?,
    )
}

pub fn herm_group_to_json<S: Scalar, const N: usize>(g: &HermGroupElt<S, N>) -> Value {
    json!({
        "case": if N == 2 { 1 } else { 3 },
        "tower": tower_to_json(g.tower()),
        "g1": mat_to_json(g.g1()),
        "g2": base_mat_to_json(g.g2()),
    })
}

pub fn herm_group_from_json<S: Scalar, const N: usize>(v: &Value) -> Result<HermGroupElt<S, N>> {
    let k1 = tower_from_json(field(v, "tower")?)?;
    HermGroupElt::new(&k1, mat_from_json(&k1, field(v, "g1")?)?, base_mat_from_json(field(v, "g2")?)?)
}

pub fn grp2_to_json<S: Scalar>(e: &GrpElt2<S>) -> Value {
    json!({
        "case": 2,
        "tower": tower_to_json(e.tower()),
        "t": e.t.to_json(),
        "g": mat_to_json(&e.g),
    })
}

pub fn grp2_from_json<S: Scalar>(v: &Value) -> Result<GrpElt2<S>> {
    let k1 = tower_from_json(field(v, "tower")?)?;
    GrpElt2::new(&k1, S::from_json(field(v, "t")?)?, mat_from_json(&k1, field(v, "g")?)?)
}

pub fn form_to_json<S: Scalar>(f: &BinaryForm<S>) -> Value {
    scalars_to_json(f.coeffs())
}

pub fn roots_to_json<S: Scalar>(r: &CubicRootData<S>) -> Value {
    let perms: serde_json::Map<String, Value> =
        r.perms().iter().enumerate().map(|(g, p)| (g.to_string(), json!(p))).collect();
    json!({
        "f": form_to_json(r.f()),
        "splitting": tower_to_json(r.splitting()),
        "roots": r.roots().iter().map(elem_to_json).collect::<Vec<_>>(),
        "perm_action": perms,
    })
}
