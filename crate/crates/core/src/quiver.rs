//! Quivers with relations, paths, dimension vectors and weights.
//!
//! # Conventions
//!
//! Paths are stored in *traversal order*: the first arrow listed is applied
//! first, so `[x1, x2]` with `x1: 1 -> 2` and `x2: 2 -> 5` is a path from 1
//! to 5 and a representation evaluates it as `V(x2) V(x1)`.
//!
//! The weight of the coordinate function of a path (for the all-ones
//! dimension vector) is `e_tail - e_head`. This is the sign coming from the
//! action `(g f)(x) = f(g^{-1} x)`: with `g = diag(t)` an arrow coordinate
//! `x_a` becomes `t_ha^{-1} x_a t_ta`, i.e. it scales by `t_ta t_ha^{-1}`.
//! The opposite sign convention also appears in the literature; every check
//! in this crate compares weights to each other, never to absolute signs.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` references unknown vertex `{vertex}`")]
    DanglingArrow { arrow: String, vertex: String },
    #[error("relation {relation}: unknown arrow `{arrow}`")]
    UnknownArrow { relation: usize, arrow: String },
    #[error("relation {relation}, term {term}: arrow `{arrow}` does not start where the previous arrow ends")]
    BrokenPath {
        relation: usize,
        term: usize,
        arrow: String,
    },
    #[error(
        "relation {relation}: term {term} runs {tail} -> {head} but term 0 runs {tail0} -> {head0}"
    )]
    NonUniformRelation {
        relation: usize,
        term: usize,
        tail: String,
        head: String,
        tail0: String,
        head0: String,
    },
    #[error("relation {relation}, term {term}: relation paths must have length at least 2")]
    ShortRelationPath { relation: usize, term: usize },
    #[error("relation {relation} has no terms")]
    EmptyRelation { relation: usize },
    #[error("relation {relation}, term {term}: {reason}")]
    BadCoefficient {
        relation: usize,
        term: usize,
        reason: String,
    },
    #[error("vector has {got} entries but the quiver has {expected} vertices")]
    IndexMismatch { expected: usize, got: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("path is not composable at arrow `{0}`")]
    InvalidPath(String),
    #[error("malformed quiver JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver. Vertices and arrows are addressed by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Build a quiver from vertex ids and `(arrow id, tail id, head id)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self, QuiverError> {
        let file = QuiverFile {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(id, t, h)| ArrowFile {
                    id: id.as_ref().to_string(),
                    tail: t.as_ref().to_string(),
                    head: h.as_ref().to_string(),
                })
                .collect(),
            relations: Vec::new(),
        };
        Ok(validate_quiver(&file)?.quiver)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// True when there are no oriented cycles (loops included).
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.head] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.tail == v) {
                indeg[a.head] -= 1;
                if indeg[a.head] == 0 {
                    ready.push(a.head);
                }
            }
        }
        seen == n
    }

    /// `sum_x a(x) b(x) - sum_arrows a(ta) b(ha)` on integer vectors.
    pub fn euler_pairing(&self, a: &[i64], b: &[i64]) -> Result<i64, QuiverError> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|ar| a[ar.tail] * b[ar.head]).sum();
        Ok(diag - off)
    }

    pub(crate) fn check_len(&self, got: usize) -> Result<(), QuiverError> {
        if got == self.vertices.len() {
            Ok(())
        } else {
            Err(QuiverError::IndexMismatch {
                expected: self.vertices.len(),
                got,
            })
        }
    }

    /// The same quiver with vertices reordered: new vertex `i` is old vertex `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Quiver {
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        Quiver {
            vertices: perm.iter().map(|&o| self.vertices[o].clone()).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    id: a.id.clone(),
                    tail: inverse[a.tail],
                    head: inverse[a.head],
                })
                .collect(),
        }
    }
}

/// Euler form `<a, b>` of two dimension vectors.
pub fn euler_form(
    q: &Quiver,
    a: &DimensionVector,
    b: &DimensionVector,
) -> Result<i64, QuiverError> {
    q.euler_pairing(&a.to_i64(), &b.to_i64())
}

/// A path in traversal order. Trivial paths carry their anchor vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Self {
        Path {
            start: vertex,
            end: vertex,
            arrows: Vec::new(),
        }
    }

    /// Path through the given arrow indices, first arrow applied first.
    pub fn new(q: &Quiver, arrows: &[usize]) -> Result<Self, QuiverError> {
        let Some(&first) = arrows.first() else {
            return Err(QuiverError::InvalidPath("<empty>".into()));
        };
        let start = q.arrows[first].tail;
        let mut end = start;
        for &a in arrows {
            let arrow = &q.arrows[a];
            if arrow.tail != end {
                return Err(QuiverError::InvalidPath(arrow.id.clone()));
            }
            end = arrow.head;
        }
        Ok(Path {
            start,
            end,
            arrows: arrows.to_vec(),
        })
    }

    pub fn from_ids(q: &Quiver, ids: &[&str]) -> Result<Self, QuiverError> {
        let idx = ids
            .iter()
            .map(|id| {
                q.arrow_index(id)
                    .ok_or_else(|| QuiverError::InvalidPath(id.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(q, &idx)
    }

    pub fn tail(&self) -> usize {
        self.start
    }

    pub fn head(&self) -> usize {
        self.end
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The composite `after * self`: first `self`, then `after`.
    pub fn then(&self, after: &Path) -> Option<Path> {
        if self.end != after.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&after.arrows);
        Some(Path {
            start: self.start,
            end: after.end,
            arrows,
        })
    }
}

/// Weight of the coordinate function of `p` for the all-ones dimension
/// vector: `e_tail - e_head`.
pub fn generator_weight(q: &Quiver, p: &Path) -> Weight {
    let mut w = vec![0i64; q.num_vertices()];
    for &a in p.arrows() {
        let arrow = &q.arrows[a];
        w[arrow.tail] += 1;
        w[arrow.head] -= 1;
    }
    Weight(w)
}

/// A nonempty combination of parallel paths with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformElement {
    terms: Vec<(BigRational, Path)>,
}

impl UniformElement {
    pub fn new(terms: Vec<(BigRational, Path)>) -> Result<Self, QuiverError> {
        let Some((_, first)) = terms.first() else {
            return Err(QuiverError::EmptyRelation { relation: 0 });
        };
        let (t0, h0) = (first.tail(), first.head());
        for (i, (c, p)) in terms.iter().enumerate() {
            if c.is_zero() {
                return Err(QuiverError::BadCoefficient {
                    relation: 0,
                    term: i,
                    reason: "zero coefficient".into(),
                });
            }
            if p.tail() != t0 || p.head() != h0 {
                return Err(QuiverError::NonUniformRelation {
                    relation: 0,
                    term: i,
                    tail: p.tail().to_string(),
                    head: p.head().to_string(),
                    tail0: t0.to_string(),
                    head0: h0.to_string(),
                });
            }
        }
        Ok(UniformElement { terms })
    }

    pub fn terms(&self) -> &[(BigRational, Path)] {
        &self.terms
    }

    pub fn tail(&self) -> usize {
        self.terms[0].1.tail()
    }

    pub fn head(&self) -> usize {
        self.terms[0].1.head()
    }
}

/// Generators of the relation ideal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationSet {
    pub elements: Vec<UniformElement>,
}

impl RelationSet {
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }
}

/// A quiver together with its relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundQuiver {
    pub quiver: Quiver,
    pub relations: RelationSet,
}

/// Nonnegative integer per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimensionVector(pub Vec<u32>);

impl DimensionVector {
    pub fn zero(n: usize) -> Self {
        DimensionVector(vec![0; n])
    }

    pub fn unit(n: usize, vertex: usize) -> Self {
        let mut v = vec![0; n];
        v[vertex] = 1;
        DimensionVector(v)
    }

    pub fn ones(n: usize) -> Self {
        DimensionVector(vec![1; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }

    /// `sum_x beta(x)^2`, the dimension of `GL_beta`.
    pub fn gl_dim(&self) -> usize {
        self.0.iter().map(|&x| (x as usize) * (x as usize)).sum()
    }

    pub fn sum<'a>(n: usize, parts: impl IntoIterator<Item = &'a DimensionVector>) -> Self {
        let mut acc = vec![0u32; n];
        for p in parts {
            for (a, x) in acc.iter_mut().zip(&p.0) {
                *a += x;
            }
        }
        DimensionVector(acc)
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

impl FromStr for DimensionVector {
    type Err = String;

    /// Comma-separated nonnegative integers, e.g. `1,1,2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_csv(s).map(DimensionVector)
    }
}

/// Integer per vertex: the exponents of a character `prod det(g_x)^sigma(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// Weight with `+1` at `tail` and `-1` at `head`.
    pub fn arrow(n: usize, tail: usize, head: usize) -> Weight {
        let mut w = vec![0; n];
        w[tail] += 1;
        w[head] -= 1;
        Weight(w)
    }

    /// Character value `prod_x t_x^sigma(x)` at a diagonal torus element.
    pub fn character(&self, torus: &[BigRational]) -> BigRational {
        self.0
            .iter()
            .zip(torus)
            .fold(BigRational::one(), |acc, (&e, t)| {
                let p = num_traits::pow(t.clone(), e.unsigned_abs() as usize);
                if e >= 0 {
                    acc * p
                } else {
                    acc / p
                }
            })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

impl FromStr for Weight {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_csv(s).map(Weight)
    }
}

fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    it: impl Iterator<Item = T>,
) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in it.enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

fn parse_csv<T: FromStr>(s: &str) -> Result<Vec<T>, String> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| format!("`{}` is not a valid entry", x.trim()))
        })
        .collect()
}

// ---- JSON file format ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
    #[serde(default)]
    pub relations: Vec<RelationFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowFile {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub terms: Vec<TermFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFile {
    pub coeff: String,
    pub path: Vec<String>,
}

/// Check every invariant of a quiver file and build the bound quiver.
pub fn validate_quiver(file: &QuiverFile) -> Result<BoundQuiver, QuiverError> {
    let mut vindex = HashMap::new();
    for (i, v) in file.vertices.iter().enumerate() {
        if vindex.insert(v.as_str(), i).is_some() {
            return Err(QuiverError::DuplicateVertex(v.clone()));
        }
    }
    let mut arrows = Vec::with_capacity(file.arrows.len());
    let mut aindex = HashMap::new();
    for a in &file.arrows {
        if aindex.insert(a.id.as_str(), arrows.len()).is_some() {
            return Err(QuiverError::DuplicateArrow(a.id.clone()));
        }
        let lookup = |v: &str| {
            vindex
                .get(v)
                .copied()
                .ok_or_else(|| QuiverError::DanglingArrow {
                    arrow: a.id.clone(),
                    vertex: v.to_string(),
                })
        };
        arrows.push(Arrow {
            id: a.id.clone(),
            tail: lookup(&a.tail)?,
            head: lookup(&a.head)?,
        });
    }
    let quiver = Quiver {
        vertices: file.vertices.clone(),
        arrows,
    };

    let mut elements = Vec::with_capacity(file.relations.len());
    for (ri, rel) in file.relations.iter().enumerate() {
        if rel.terms.is_empty() {
            return Err(QuiverError::EmptyRelation { relation: ri });
        }
        let mut terms = Vec::with_capacity(rel.terms.len());
        for (ti, term) in rel.terms.iter().enumerate() {
            let coeff =
                parse_rational(&term.coeff).map_err(|reason| QuiverError::BadCoefficient {
                    relation: ri,
                    term: ti,
                    reason,
                })?;
            if coeff.is_zero() {
                return Err(QuiverError::BadCoefficient {
                    relation: ri,
                    term: ti,
                    reason: "zero coefficient".into(),
                });
            }
            if term.path.len() < 2 {
                return Err(QuiverError::ShortRelationPath {
                    relation: ri,
                    term: ti,
                });
            }
            let mut idx = Vec::with_capacity(term.path.len());
            for id in &term.path {
                let a = *aindex
                    .get(id.as_str())
                    .ok_or_else(|| QuiverError::UnknownArrow {
                        relation: ri,
                        arrow: id.clone(),
                    })?;
                if let Some(&prev) = idx.last() {
                    let prev: usize = prev;
                    if quiver.arrows[prev].head != quiver.arrows[a].tail {
                        return Err(QuiverError::BrokenPath {
                            relation: ri,
                            term: ti,
                            arrow: id.clone(),
                        });
                    }
                }
                idx.push(a);
            }
            let path = Path::new(&quiver, &idx).expect("composability checked above");
            terms.push((coeff, path));
        }
        let (t0, h0) = (terms[0].1.tail(), terms[0].1.head());
        for (ti, (_, p)) in terms.iter().enumerate() {
            if p.tail() != t0 || p.head() != h0 {
                let name = |v: usize| quiver.vertices[v].clone();
                return Err(QuiverError::NonUniformRelation {
                    relation: ri,
                    term: ti,
                    tail: name(p.tail()),
                    head: name(p.head()),
                    tail0: name(t0),
                    head0: name(h0),
                });
            }
        }
        elements.push(UniformElement { terms });
    }
    Ok(BoundQuiver {
        quiver,
        relations: RelationSet { elements },
    })
}

impl BoundQuiver {
    pub fn from_json(s: &str) -> Result<Self, QuiverError> {
        let file: QuiverFile =
            serde_json::from_str(s).map_err(|e| QuiverError::Json(e.to_string()))?;
        validate_quiver(&file)
    }

    pub fn to_file(&self) -> QuiverFile {
        let q = &self.quiver;
        QuiverFile {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowFile {
                    id: a.id.clone(),
                    tail: q.vertices[a.tail].clone(),
                    head: q.vertices[a.head].clone(),
                })
                .collect(),
            relations: self
                .relations
                .elements
                .iter()
                .map(|u| RelationFile {
                    terms: u
                        .terms
                        .iter()
                        .map(|(c, p)| TermFile {
                            coeff: c.to_string(),
                            path: p.arrows().iter().map(|&a| q.arrows[a].id.clone()).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("quiver files always serialize")
    }

    /// Map vertex id -> entry; missing vertices default to zero.
    pub fn weight_from_map(&self, map: &BTreeMap<String, i64>) -> Result<Weight, QuiverError> {
        weight_from_map(&self.quiver, map)
    }
}

pub fn weight_from_map(q: &Quiver, map: &BTreeMap<String, i64>) -> Result<Weight, QuiverError> {
    let mut w = vec![0; q.num_vertices()];
    for (k, &v) in map {
        let i = q
            .vertex_index(k)
            .ok_or_else(|| QuiverError::UnknownVertex(k.clone()))?;
        w[i] = v;
    }
    Ok(Weight(w))
}

/// Parse an exact rational written as `"3"`, `"-1"` or `"3/2"`.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: num_bigint::BigInt = n
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in `{s}`"))?;
        let d: num_bigint::BigInt = d
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in `{s}`"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: num_bigint::BigInt = t
            .parse()
            .map_err(|_| format!("`{s}` is not a rational number"))?;
        Ok(BigRational::from_integer(n))
    }
}
