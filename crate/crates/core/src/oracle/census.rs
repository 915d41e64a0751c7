//! Exhaustive orbit census over a prime field `F_p`.
//!
//! Each space is `F_p^n` in fixed coordinates, and every generator of `G_k`
//! acts linearly. The generator matrices are read off from the real action
//! on basis vectors (and spot-checked against it), then the whole space is
//! partitioned with a union-find over dense mixed-radix indices. Images are
//! computed in parallel chunks and merged sequentially, so the partition
//! does not depend on the number of workers.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::algebra::{Alg, AlgElem, EtaleAlgebra};
use crate::arith::factor::factor_binary_form_ext;
use crate::arith::label::ErLabel;
use crate::arith::matrix::Matrix;
use crate::arith::scalar::{Ring, Scalar};
use crate::case1::{classify1, GrpElt1, HermPair2};
use crate::case2::{act2, classify2, delta2, GrpElt2, V2Elem};
use crate::case3::{classify3, GrpElt3, HermPair3};
use crate::error::{Error, Result};
use crate::herm::{HermGroupElt, HermPair};
use crate::json::{herm_to_json, v2_to_json};
use crate::oracle::predict::predicted_counts;
use crate::oracle::split::{split_pencil, to_split};

pub const DEFAULT_BUDGET: u64 = 2 << 30;
const CHUNK: usize = 1 << 16;
const SAMPLES_PER_ORBIT: usize = 100;

/// A finite space `F_p^n` with a linear group action given by generators.
pub trait CensusSpace<S: Scalar>: Sync {
    type Elem: Clone;
    fn dim(&self) -> usize;
    fn encode(&self, x: &Self::Elem) -> Vec<S>;
    fn decode(&self, c: &[S]) -> Result<Self::Elem>;
    fn generator_names(&self) -> Vec<String>;
    fn act_generator(&self, i: usize, x: &Self::Elem) -> Result<Self::Elem>;
    fn is_semistable(&self, x: &Self::Elem) -> Result<bool>;
    fn label(&self, x: &Self::Elem) -> Result<ErLabel>;
    fn to_json(&self, x: &Self::Elem) -> Value;
}

/// A generator of the multiplicative group of a finite field.
pub fn primitive_element<S: Scalar>(alg: &Alg<S>) -> Result<AlgElem<S>> {
    let q = S::order().ok_or_else(|| Error::UnsupportedField("needs a finite field".into()))?;
    let n = q.pow(alg.dim() as u32) - 1;
    let primes: Vec<u64> = {
        let (mut m, mut ps, mut d) = (n, vec![], 2);
        while d * d <= m {
            if m % d == 0 {
                ps.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            ps.push(m);
        }
        ps
    };
    let one = AlgElem::one(alg);
    (1..=n)
        .map(|i| AlgElem::from_index(alg, i))
        .find(|x| x.is_unit() && primes.iter().all(|r| x.pow_u64(n / r) != one))
        .ok_or_else(|| Error::UnsupportedField("algebra is not a field".into()))
}

/// `GL_2` generators over `alg`: `a(ζ, 1)`, `a(1, ζ)`, `n(b)` for each basis
/// element b, and `τ`.
fn gl2_generators<S: Scalar>(alg: &Alg<S>) -> Result<Vec<(String, Matrix<AlgElem<S>>)>> {
    let z = primitive_element(alg)?;
    let (o, n) = (AlgElem::one(alg), AlgElem::zero(alg));
    let mut out = vec![
        ("a(ζ,1)".to_string(), Matrix::diag(vec![z.clone(), o.clone()])),
        ("a(1,ζ)".to_string(), Matrix::diag(vec![o.clone(), z])),
    ];
    for i in 0..alg.dim() {
        let b = AlgElem::basis(alg, i);
        out.push((format!("n(b{i})"), Matrix::from_rows(vec![vec![o.clone(), n.clone()], vec![b, o.clone()]])));
    }
    out.push(("τ".to_string(), Matrix::from_rows(vec![vec![n.clone(), o.clone()], vec![o, n]])));
    Ok(out)
}

/// `GL_3` generators: `diag(ζ, 1, 1)`, the permutations (12) and (123), and
/// `1 + b·E_12` for each basis element b.
fn gl3_generators<S: Scalar>(alg: &Alg<S>) -> Result<Vec<(String, Matrix<AlgElem<S>>)>> {
    let z = primitive_element(alg)?;
    let (o, n) = (AlgElem::one(alg), AlgElem::zero(alg));
    let perm = |p: [usize; 3]| Matrix::from_fn(3, 3, |i, j| if p[j] == i { o.clone() } else { n.clone() });
    let mut out = vec![
        ("diag(ζ,1,1)".to_string(), Matrix::diag(vec![z, o.clone(), o.clone()])),
        ("(12)".to_string(), perm([1, 0, 2])),
        ("(123)".to_string(), perm([1, 2, 0])),
    ];
    for i in 0..alg.dim() {
        let mut m = Matrix::identity(3, &o);
        m.set(0, 1, AlgElem::basis(alg, i));
        out.push((format!("e12(b{i})"), m));
    }
    Ok(out)
}

fn base_gl2<S: Scalar>() -> Result<Vec<(String, Matrix<S>)>> {
    let k = EtaleAlgebra::<S>::base();
    Ok(gl2_generators(&k)?
        .into_iter()
        .map(|(n, m)| (n, m.map(|x| x.coords()[0].clone())))
        .collect())
}

fn herm_encode<S: Scalar, const N: usize>(x: &HermPair<S, N>) -> Vec<S> {
    let mut out = Vec::with_capacity(2 * N * N);
    for m in [x.x1(), x.x2()] {
        for i in 0..N {
            out.push(m.get(i, i).coords()[0].clone());
        }
        for i in 0..N {
            for j in i + 1..N {
                out.extend(m.get(i, j).coords().iter().cloned());
            }
        }
    }
    out
}

fn herm_decode<S: Scalar, const N: usize>(k1: &Alg<S>, c: &[S]) -> Result<HermPair<S, N>> {
    let half = N * N;
    let build = |c: &[S]| {
        let mut m = Matrix::identity(N, &AlgElem::zero(k1));
        for i in 0..N {
            m.set(i, i, AlgElem::from_base(k1, c[i].clone()));
        }
        let mut pos = N;
        for i in 0..N {
            for j in i + 1..N {
                let e = AlgElem::new(k1, c[pos..pos + 2].to_vec());
                m.set(j, i, e.sigma());
                m.set(i, j, e);
                pos += 2;
            }
        }
        m
    };
    HermPair::new(k1, build(&c[..half]), build(&c[half..]))
}

/// Generators `(g1, 1)` and `(1, g2)` of `GL_N(k1) × GL_2(k)`.
fn herm_generators<S: Scalar, const N: usize>(k1: &Alg<S>) -> Result<Vec<(String, HermGroupElt<S, N>)>> {
    let g1s = if N == 2 { gl2_generators(k1)? } else { gl3_generators(k1)? };
    let id1 = Matrix::identity(N, &AlgElem::one(k1));
    let id2 = Matrix::identity(2, &S::one());
    let mut out = Vec::new();
    for (n, g) in g1s {
        out.push((format!("({n}, 1)"), HermGroupElt::new(k1, g, id2.clone())?));
    }
    for (n, g) in base_gl2::<S>()? {
        out.push((format!("(1, {n})"), HermGroupElt::new(k1, id1.clone(), g)?));
    }
    Ok(out)
}

pub struct Case1Space<S: Scalar> {
    pub k1: Alg<S>,
    gens: Vec<(String, GrpElt1<S>)>,
}

impl<S: Scalar> Case1Space<S> {
    pub fn new() -> Result<Self> {
        let k1 = EtaleAlgebra::finite_field(2)?;
        let gens = herm_generators(&k1)?;
        Ok(Case1Space { k1, gens })
    }
}

impl<S: Scalar> CensusSpace<S> for Case1Space<S> {
    type Elem = HermPair2<S>;
    fn dim(&self) -> usize {
        8
    }
    fn encode(&self, x: &Self::Elem) -> Vec<S> {
        herm_encode(x)
    }
    fn decode(&self, c: &[S]) -> Result<Self::Elem> {
        herm_decode(&self.k1, c)
    }
    fn generator_names(&self) -> Vec<String> {
        self.gens.iter().map(|(n, _)| n.clone()).collect()
    }
    fn act_generator(&self, i: usize, x: &Self::Elem) -> Result<Self::Elem> {
        self.gens[i].1.act(x)
    }
    fn is_semistable(&self, x: &Self::Elem) -> Result<bool> {
        x.is_semistable()
    }
    fn label(&self, x: &Self::Elem) -> Result<ErLabel> {
        classify1(x)
    }
    fn to_json(&self, x: &Self::Elem) -> Value {
        herm_to_json(x)
    }
}

pub struct Case3Space<S: Scalar> {
    pub k1: Alg<S>,
    gens: Vec<(String, GrpElt3<S>)>,
}

impl<S: Scalar> Case3Space<S> {
    pub fn new() -> Result<Self> {
        let k1 = EtaleAlgebra::finite_field(2)?;
        let gens = herm_generators(&k1)?;
        Ok(Case3Space { k1, gens })
    }
}

impl<S: Scalar> CensusSpace<S> for Case3Space<S> {
    type Elem = HermPair3<S>;
    fn dim(&self) -> usize {
        18
    }
    fn encode(&self, x: &Self::Elem) -> Vec<S> {
        herm_encode(x)
    }
    fn decode(&self, c: &[S]) -> Result<Self::Elem> {
        herm_decode(&self.k1, c)
    }
    fn generator_names(&self) -> Vec<String> {
        self.gens.iter().map(|(n, _)| n.clone()).collect()
    }
    fn act_generator(&self, i: usize, x: &Self::Elem) -> Result<Self::Elem> {
        self.gens[i].1.act(x)
    }
    fn is_semistable(&self, x: &Self::Elem) -> Result<bool> {
        x.is_semistable()
    }
    fn label(&self, x: &Self::Elem) -> Result<ErLabel> {
        classify3(x)
    }
    fn to_json(&self, x: &Self::Elem) -> Value {
        herm_to_json(x)
    }
}

pub struct Case2Space<S: Scalar> {
    pub k1: Alg<S>,
    gens: Vec<(String, GrpElt2<S>)>,
}

impl<S: Scalar> Case2Space<S> {
    pub fn new() -> Result<Self> {
        let k1 = EtaleAlgebra::finite_field(3)?;
        let zeta = primitive_element(&EtaleAlgebra::<S>::base())?.coords()[0].clone();
        let id = Matrix::identity(2, &AlgElem::one(&k1));
        let mut gens = vec![("(ζ, 1)".to_string(), GrpElt2::new(&k1, zeta, id)?)];
        for (n, g) in gl2_generators(&k1)? {
            gens.push((format!("(1, {n})"), GrpElt2::new(&k1, S::one(), g)?));
        }
        Ok(Case2Space { k1, gens })
    }
}

/// Label of a case-2 point over a finite field. In odd characteristic this
/// is the square class of Δ; in characteristic 2 it is read off from the
/// factorization of the split pencil over `k1`, whose degree over k is odd.
pub fn case2_label<S: Scalar>(x: &V2Elem<S>) -> Result<ErLabel> {
    if S::characteristic() != 2 {
        return classify2(x);
    }
    if !delta2(x).1 {
        return Err(Error::NotSemistable);
    }
    let fac = factor_binary_form_ext(&split_pencil(&to_split(x)))?;
    let m = fac.degrees().into_iter().max().unwrap_or(1);
    Ok(ErLabel::finite(m as u32))
}

impl<S: Scalar> CensusSpace<S> for Case2Space<S> {
    type Elem = V2Elem<S>;
    fn dim(&self) -> usize {
        8
    }
    fn encode(&self, x: &Self::Elem) -> Vec<S> {
        let mut out = vec![x.x111.clone()];
        out.extend(x.x211.coords().iter().cloned());
        out.extend(x.x122.coords().iter().cloned());
        out.push(x.x222.clone());
        out
    }
    fn decode(&self, c: &[S]) -> Result<Self::Elem> {
        V2Elem::new(
            &self.k1,
            c[0].clone(),
            AlgElem::new(&self.k1, c[1..4].to_vec()),
            AlgElem::new(&self.k1, c[4..7].to_vec()),
            c[7].clone(),
        )
    }
    fn generator_names(&self) -> Vec<String> {
        self.gens.iter().map(|(n, _)| n.clone()).collect()
    }
    fn act_generator(&self, i: usize, x: &Self::Elem) -> Result<Self::Elem> {
        act2(&self.gens[i].1, x)
    }
    fn is_semistable(&self, x: &Self::Elem) -> Result<bool> {
        Ok(delta2(x).1)
    }
    fn label(&self, x: &Self::Elem) -> Result<ErLabel> {
        case2_label(x)
    }
    fn to_json(&self, x: &Self::Elem) -> Value {
        v2_to_json(x)
    }
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub seed: u64,
    pub budget_bytes: u64,
    pub allow_large: bool,
    /// Shuffle the generator order with this seed.
    pub shuffle: Option<u64>,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { seed: 0, budget_bytes: DEFAULT_BUDGET, allow_large: false, shuffle: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitInfo {
    pub size: u64,
    pub label: ErLabel,
    /// Least index in the orbit.
    pub rep_index: u64,
    pub rep: Value,
    pub sampled: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusReport {
    pub case: u8,
    pub q: u64,
    pub points: u64,
    pub semistable: u64,
    pub orbits: Vec<OrbitInfo>,
    pub fibers: BTreeMap<ErLabel, usize>,
    pub predicted: BTreeMap<ErLabel, usize>,
    pub generators: Vec<String>,
}

impl CensusReport {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn matches_prediction(&self) -> bool {
        self.fibers == self.predicted
    }

    pub fn to_json(&self) -> Value {
        let table = |m: &BTreeMap<ErLabel, usize>| {
            Value::Array(m.iter().map(|(l, c)| json!({"label": l.to_json(), "orbits": c})).collect())
        };
        json!({
            "case": self.case,
            "q": self.q,
            "points": self.points,
            "semistable": self.semistable,
            "orbit_count": self.orbit_count(),
            "orbits": self.orbits.iter().map(|o| json!({
                "size": o.size,
                "label": o.label.to_json(),
                "representative": o.rep,
                "representative_index": o.rep_index,
                "labels_checked": o.sampled,
            })).collect::<Vec<_>>(),
            "fibers": table(&self.fibers),
            "predicted": table(&self.predicted),
            "matches": self.matches_prediction(),
            "generators": self.generators,
        })
    }
}

/// The orbit partition of the whole space: `root[i]` is the least index in
/// the orbit of point i.
pub struct Partition {
    pub p: u64,
    pub dim: usize,
    pub root: Vec<u32>,
}

impl Partition {
    pub fn index_of<S: Scalar>(&self, c: &[S]) -> u64 {
        c.iter().rev().fold(0, |acc, x| acc * self.p + x.to_index())
    }

    pub fn coords<S: Scalar>(&self, mut i: u64) -> Vec<S> {
        (0..self.dim)
            .map(|_| {
                let x = S::from_index(i % self.p);
                i /= self.p;
                x
            })
            .collect()
    }

    pub fn orbit_of<S: Scalar>(&self, c: &[S]) -> u64 {
        self.root[self.index_of(c) as usize] as u64
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi as usize] = lo;
    }
}

/// Generator matrices over `F_p` (column j is the image of basis vector j),
/// checked against the action on a few random points.
fn generator_matrices<S: Scalar, Sp: CensusSpace<S>>(sp: &Sp, order: &[usize], rng: &mut ChaCha8Rng) -> Result<Vec<Vec<u32>>> {
    let n = sp.dim();
    let p = S::characteristic();
    let mut mats = Vec::new();
    for &g in order {
        let mut m = vec![0u32; n * n];
        for j in 0..n {
            let mut e = vec![S::zero(); n];
            e[j] = S::one();
            let img = sp.encode(&sp.act_generator(g, &sp.decode(&e)?)?);
            for i in 0..n {
                m[i * n + j] = img[i].to_index() as u32;
            }
        }
        for _ in 0..4 {
            let c: Vec<S> = (0..n).map(|_| S::sample(rng, 0)).collect();
            let direct = sp.encode(&sp.act_generator(g, &sp.decode(&c)?)?);
            let via: Vec<S> = (0..n)
                .map(|i| {
                    let s: u64 = (0..n).map(|j| m[i * n + j] as u64 * c[j].to_index()).sum();
                    S::from_index(s % p)
                })
                .collect();
            if direct != via {
                return Err(Error::CheckFailed(format!("generator {g} does not act linearly")));
            }
        }
        mats.push(m);
    }
    Ok(mats)
}

/// Partitions `F_p^n` into orbits of the group generated by the space's generators.
pub fn partition<S: Scalar, Sp: CensusSpace<S>>(sp: &Sp, cfg: &CensusConfig) -> Result<Partition> {
    let p = S::characteristic();
    if p == 0 || S::order() != Some(p) {
        return Err(Error::UnsupportedField("the census runs over prime fields".into()));
    }
    let n = sp.dim();
    let total = (p as u128).pow(n as u32);
    let need = total.saturating_mul(4) + (CHUNK as u128) * 64;
    if total > u32::MAX as u128 || need > cfg.budget_bytes as u128 {
        return Err(Error::BudgetExceeded(format!("{total} points need about {need} bytes")));
    }
    let total = total as usize;
    let mut order: Vec<usize> = (0..sp.generator_names().len()).collect();
    if let Some(s) = cfg.shuffle {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mats = generator_matrices(sp, &order, &mut rng)?;
    let ng = mats.len();
    let pow: Vec<u64> = (0..n).map(|i| p.pow(i as u32)).collect();
    let mut parent: Vec<u32> = (0..total as u32).collect();
    let mut images = vec![0u32; CHUNK * ng];
    for start in (0..total).step_by(CHUNK) {
        let len = CHUNK.min(total - start);
        images[..len * ng].par_chunks_mut(ng).enumerate().for_each(|(k, out)| {
            let mut idx = (start + k) as u64;
            let mut x = [0u64; 32];
            for xi in x.iter_mut().take(n) {
                *xi = idx % p;
                idx /= p;
            }
            for (g, m) in mats.iter().enumerate() {
                let mut img = 0u64;
                for i in 0..n {
                    let row = &m[i * n..(i + 1) * n];
                    let s: u64 = row.iter().zip(&x[..n]).map(|(a, b)| *a as u64 * b).sum();
                    img += (s % p) * pow[i];
                }
                out[g] = img as u32;
            }
        });
        for k in 0..len {
            for g in 0..ng {
                union(&mut parent, (start + k) as u32, images[k * ng + g]);
            }
        }
    }
    for i in 0..total {
        let r = find(&mut parent, i as u32);
        parent[i] = r;
    }
    Ok(Partition { p, dim: n, root: parent })
}

/// Runs the census: orbit partition, labels of semistable orbits (checked on
/// up to 100 sampled members each), fiber table and the predicted table.
pub fn enumerate_orbits<S: Scalar, Sp: CensusSpace<S>>(case: u8, sp: &Sp, cfg: &CensusConfig) -> Result<(CensusReport, Partition)> {
    let part = partition(sp, cfg)?;
    let mut sizes: BTreeMap<u32, u64> = BTreeMap::new();
    for &r in &part.root {
        *sizes.entry(r).or_insert(0) += 1;
    }
    let mut stable: HashMap<u32, ErLabel> = HashMap::new();
    for &r in sizes.keys() {
        let x = sp.decode(&part.coords::<S>(r as u64))?;
        if sp.is_semistable(&x)? {
            stable.insert(r, sp.label(&x)?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen: HashMap<u32, usize> = HashMap::new();
    let mut samples: HashMap<u32, Vec<u64>> = HashMap::new();
    for (i, &r) in part.root.iter().enumerate() {
        if !stable.contains_key(&r) {
            continue;
        }
        let c = seen.entry(r).or_insert(0);
        *c += 1;
        let s = samples.entry(r).or_default();
        if s.len() < SAMPLES_PER_ORBIT {
            s.push(i as u64);
        } else {
            let j = rng.gen_range(0..*c);
            if j < SAMPLES_PER_ORBIT {
                s[j] = i as u64;
            }
        }
    }
    let mut orbits = Vec::new();
    let mut fibers: BTreeMap<ErLabel, usize> = BTreeMap::new();
    let mut semistable = 0;
    for (&r, &size) in &sizes {
        let Some(label) = stable.get(&r) else { continue };
        let members = &samples[&r];
        for &m in members {
            let l = sp.label(&sp.decode(&part.coords::<S>(m))?)?;
            if l != *label {
                return Err(Error::CheckFailed(format!("orbit of index {r} mixes labels {label} and {l}")));
            }
        }
        semistable += size;
        *fibers.entry(label.clone()).or_insert(0) += 1;
        orbits.push(OrbitInfo {
            size,
            label: label.clone(),
            rep_index: r as u64,
            rep: sp.to_json(&sp.decode(&part.coords::<S>(r as u64))?),
            sampled: members.len(),
        });
    }
    let q = part.p;
    let report = CensusReport {
        case,
        q,
        points: part.root.len() as u64,
        semistable,
        orbits,
        fibers,
        predicted: predicted_counts::<S>(case)?,
        generators: sp.generator_names(),
    };
    Ok((report, part))
}

/// Census of one of the three spaces over `F_p`. Case 3 beyond `p = 2`
/// needs `allow_large`.
pub fn census<S: Scalar>(case: u8, cfg: &CensusConfig) -> Result<CensusReport> {
    let q = S::characteristic();
    match case {
        1 => Ok(enumerate_orbits(1, &Case1Space::<S>::new()?, cfg)?.0),
        2 => Ok(enumerate_orbits(2, &Case2Space::<S>::new()?, cfg)?.0),
        3 => {
            if q > 2 && !cfg.allow_large {
                return Err(Error::BudgetExceeded(format!("case 3 over F_{q} has {q}^18 points; pass allow_large")));
            }
            Ok(enumerate_orbits(3, &Case3Space::<S>::new()?, cfg)?.0)
        }
        _ => Err(Error::Invalid(format!("unknown case {case}"))),
    }
}
