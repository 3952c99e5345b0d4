//! Generator systems: named semi-invariant generators with weights, optional
//! realizations as polynomials in representation coordinates, and
//! weight-homogeneous relations among the generators.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, Polynomial, Var};
use super::SiError;
use crate::quiver::{validate_quiver, DimensionVector, Quiver, QuiverFile, Weight};
use crate::rep::RepPoint;

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub name: String,
    pub weight: Weight,
    pub realization: Option<Polynomial>,
}

/// The representation space that realizations are written in.
#[derive(Debug, Clone, PartialEq)]
pub struct Ambient {
    pub quiver: Quiver,
    pub dim: DimensionVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSystem {
    vertices: Vec<String>,
    generators: Vec<Generator>,
    relations: Vec<Polynomial>,
    ambient: Option<Ambient>,
}

/// Exponent vector over the generators of a system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightedMonomial {
    pub exponents: Vec<u32>,
}

impl WeightedMonomial {
    pub fn one(r: usize) -> Self {
        WeightedMonomial {
            exponents: vec![0; r],
        }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Indices of generators with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exponents.len())
            .filter(|&i| self.exponents[i] > 0)
            .collect()
    }

    pub fn coprime(&self, other: &WeightedMonomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn divides(&self, other: &WeightedMonomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &WeightedMonomial) -> WeightedMonomial {
        WeightedMonomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// `x1*x2` style rendering of a monomial against a system's generator names.
pub struct MonomialDisplay<'a> {
    pub system: &'a GeneratorSystem,
    pub monomial: &'a WeightedMonomial,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomial.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, &e) in self.system.generators.iter().zip(&self.monomial.exponents) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", g.name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

// ---- JSON file format ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    pub generators: Vec<GeneratorFile>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<AmbientFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub name: String,
    pub weight: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmbientFile {
    pub quiver: QuiverFile,
    pub dim: Vec<u32>,
}

fn natural_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    Var(a.to_string()).cmp(&Var(b.to_string()))
}

impl GeneratorSystem {
    /// Build and validate. Relations must be polynomials in generator names,
    /// homogeneous for the weight grading; realizations must use ambient
    /// coordinates and carry the declared torus weight.
    pub fn new(
        vertices: Vec<String>,
        generators: Vec<Generator>,
        relations: Vec<Polynomial>,
        ambient: Option<Ambient>,
    ) -> Result<Self, SiError> {
        let n = vertices.len();
        let mut seen = std::collections::BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.name.clone()) {
                return Err(SiError::DuplicateGenerator(g.name.clone()));
            }
            if g.weight.len() != n {
                return Err(SiError::WeightLength {
                    expected: n,
                    got: g.weight.len(),
                });
            }
        }
        if let Some(a) = &ambient {
            if a.quiver.vertices() != vertices.as_slice() {
                return Err(SiError::AmbientMismatch("vertex lists differ".into()));
            }
            a.quiver
                .check_len(a.dim.len())
                .map_err(|e| SiError::AmbientMismatch(e.to_string()))?;
        }
        let sys = GeneratorSystem {
            vertices,
            generators,
            relations,
            ambient,
        };
        for (i, r) in sys.relations.iter().enumerate() {
            sys.relation_weight(r)
                .ok_or(SiError::InhomogeneousRelation {
                    index: i,
                    relation: r.to_string(),
                })??;
        }
        for g in &sys.generators {
            if let Some(p) = &g.realization {
                sys.check_realization(g, p)?;
            }
        }
        Ok(sys)
    }

    pub fn from_file(file: &SystemFile) -> Result<Self, SiError> {
        let ambient = match &file.ambient {
            Some(a) => {
                let bq = validate_quiver(&a.quiver)
                    .map_err(|e| SiError::AmbientMismatch(e.to_string()))?;
                Some(Ambient {
                    quiver: bq.quiver,
                    dim: DimensionVector(a.dim.clone()),
                })
            }
            None => None,
        };
        let vertices = match (&file.vertices, &ambient) {
            (Some(v), _) => v.clone(),
            (None, Some(a)) => a.quiver.vertices().to_vec(),
            (None, None) => {
                let mut v: Vec<String> = file
                    .generators
                    .iter()
                    .flat_map(|g| g.weight.keys().cloned())
                    .collect();
                v.sort_by(|a, b| natural_cmp(a, b));
                v.dedup();
                v
            }
        };
        let generators = file
            .generators
            .iter()
            .map(|g| {
                let mut w = vec![0; vertices.len()];
                for (k, &x) in &g.weight {
                    let i = vertices
                        .iter()
                        .position(|v| v == k)
                        .ok_or_else(|| SiError::UnknownVertex(k.clone()))?;
                    w[i] = x;
                }
                let realization = g
                    .realization
                    .as_deref()
                    .map(Polynomial::parse)
                    .transpose()?;
                Ok(Generator {
                    name: g.name.clone(),
                    weight: Weight(w),
                    realization,
                })
            })
            .collect::<Result<Vec<_>, SiError>>()?;
        let relations = file
            .relations
            .iter()
            .map(|r| Polynomial::parse(r))
            .collect::<Result<Vec<_>, _>>()?;
        GeneratorSystem::new(vertices, generators, relations, ambient)
    }

    pub fn from_json(s: &str) -> Result<Self, SiError> {
        let file: SystemFile = serde_json::from_str(s).map_err(|e| SiError::Json(e.to_string()))?;
        GeneratorSystem::from_file(&file)
    }

    pub fn to_file(&self) -> SystemFile {
        let ambient = self.ambient.as_ref().map(|a| AmbientFile {
            quiver: crate::quiver::BoundQuiver {
                quiver: a.quiver.clone(),
                relations: Default::default(),
            }
            .to_file(),
            dim: a.dim.0.clone(),
        });
        SystemFile {
            vertices: Some(self.vertices.clone()),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorFile {
                    name: g.name.clone(),
                    weight: self
                        .vertices
                        .iter()
                        .zip(&g.weight.0)
                        .filter(|(_, &x)| x != 0)
                        .map(|(v, &x)| (v.clone(), x))
                        .collect(),
                    realization: g.realization.as_ref().map(|p| p.to_string()),
                })
                .collect(),
            relations: self.relations.iter().map(|r| r.to_string()).collect(),
            ambient,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("systems always serialize")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn ambient(&self) -> Option<&Ambient> {
        self.ambient.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn display<'a>(&'a self, m: &'a WeightedMonomial) -> MonomialDisplay<'a> {
        MonomialDisplay {
            system: self,
            monomial: m,
        }
    }

    /// Parse a product of generator names such as `x1*x2`.
    pub fn monomial(&self, s: &str) -> Result<WeightedMonomial, SiError> {
        let p = Polynomial::parse(s)?;
        let mut terms = p.terms();
        match (terms.next(), terms.next()) {
            (Some((m, c)), None) if c == &BigRational::from_integer(1.into()) => {
                self.to_weighted(m)
            }
            _ => Err(SiError::NotAMonomial(s.to_string())),
        }
    }

    pub fn weight_of(&self, m: &WeightedMonomial) -> Weight {
        let mut w = vec![0i64; self.vertices.len()];
        for (g, &e) in self.generators.iter().zip(&m.exponents) {
            for (acc, &x) in w.iter_mut().zip(&g.weight.0) {
                *acc += x * e as i64;
            }
        }
        Weight(w)
    }

    /// Exponent vector of a polynomial monomial written in generator names.
    pub fn to_weighted(&self, m: &Monomial) -> Result<WeightedMonomial, SiError> {
        let mut exps = vec![0u32; self.generators.len()];
        for (v, &e) in m {
            let i = self
                .generator_index(&v.0)
                .ok_or_else(|| SiError::UnknownGenerator(v.0.clone()))?;
            exps[i] = e;
        }
        Ok(WeightedMonomial { exponents: exps })
    }

    pub fn to_polynomial(&self, m: &WeightedMonomial) -> Polynomial {
        let mono: Monomial = self
            .generators
            .iter()
            .zip(&m.exponents)
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| (Var(g.name.clone()), e))
            .collect();
        Polynomial::from_terms([(mono, BigRational::from_integer(1.into()))])
    }

    /// Common weight of the monomials of `p`; `None` when they disagree.
    pub fn relation_weight(&self, p: &Polynomial) -> Option<Result<Weight, SiError>> {
        let mut weight: Option<Weight> = None;
        for (m, _) in p.terms() {
            let wm = match self.to_weighted(m) {
                Ok(wm) => self.weight_of(&wm),
                Err(e) => return Some(Err(e)),
            };
            match &weight {
                None => weight = Some(wm),
                Some(w) if *w != wm => return None,
                Some(_) => {}
            }
        }
        Some(Ok(
            weight.unwrap_or_else(|| Weight::zero(self.vertices.len()))
        ))
    }

    /// Torus weight check: every monomial of a realization must scale like
    /// `prod_x det(g_x)^sigma(x)` under diagonal base change. An entry
    /// `a[i,j]` of `V(a)` scales by `t_{ta,j} / t_{ha,i}`.
    fn check_realization(&self, g: &Generator, p: &Polynomial) -> Result<(), SiError> {
        let Some(amb) = &self.ambient else {
            // without an ambient space, realizations are checked only on use
            return Ok(());
        };
        let q = &amb.quiver;
        for (m, _) in p.terms() {
            let mut torus: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            for (v, &e) in m {
                let (arrow, i, j) = parse_coordinate(q, &amb.dim, &v.0).ok_or_else(|| {
                    SiError::UnknownCoordinate {
                        generator: g.name.clone(),
                        coordinate: v.0.clone(),
                    }
                })?;
                let a = &q.arrows()[arrow];
                *torus.entry((a.tail, j)).or_insert(0) += e as i64;
                *torus.entry((a.head, i)).or_insert(0) -= e as i64;
            }
            for x in 0..q.num_vertices() {
                for k in 0..amb.dim.0[x] as usize {
                    if torus.get(&(x, k)).copied().unwrap_or(0) != g.weight.0[x] {
                        return Err(SiError::RealizationWeight {
                            generator: g.name.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Values of every generator realization at a representation point.
    pub fn evaluate_generators(&self, v: &RepPoint) -> Result<Vec<BigRational>, SiError> {
        let q = v.quiver();
        let mut point = BTreeMap::new();
        for (ai, a) in q.arrows().iter().enumerate() {
            let m = v.mat(ai);
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    point.insert(
                        Var(format!("{}[{},{}]", a.id, i + 1, j + 1)),
                        m.get(i, j).clone(),
                    );
                    if m.shape() == (1, 1) {
                        point.insert(Var(a.id.clone()), m.get(0, 0).clone());
                    }
                }
            }
        }
        self.generators
            .iter()
            .map(|g| {
                let p = g
                    .realization
                    .as_ref()
                    .ok_or_else(|| SiError::NoRealization(g.name.clone()))?;
                p.eval(&point).ok_or_else(|| SiError::UnknownCoordinate {
                    generator: g.name.clone(),
                    coordinate: p
                        .variables()
                        .iter()
                        .find(|x| !point.contains_key(x))
                        .map_or(String::new(), |x| x.0.clone()),
                })
            })
            .collect()
    }

    /// Value of a monomial given generator values.
    pub fn evaluate_monomial(values: &[BigRational], m: &WeightedMonomial) -> BigRational {
        values
            .iter()
            .zip(&m.exponents)
            .fold(BigRational::from_integer(1.into()), |acc, (x, &e)| {
                acc * num_traits::pow(x.clone(), e as usize)
            })
    }
}

/// Resolve a coordinate name `a` (for a 1x1 block) or `a[i,j]` (1-based).
fn parse_coordinate(
    q: &Quiver,
    dim: &DimensionVector,
    name: &str,
) -> Option<(usize, usize, usize)> {
    let (id, i, j) = match name.split_once('[') {
        None => (name, 1, 1),
        Some((id, rest)) => {
            let (i, j) = rest.strip_suffix(']')?.split_once(',')?;
            (
                id,
                i.trim().parse::<usize>().ok()?,
                j.trim().parse::<usize>().ok()?,
            )
        }
    };
    let a = q.arrow_index(id)?;
    let arrow = &q.arrows()[a];
    let (rows, cols) = (dim.0[arrow.head] as usize, dim.0[arrow.tail] as usize);
    if !name.contains('[') && (rows, cols) != (1, 1) {
        return None;
    }
    (i >= 1 && j >= 1 && i <= rows && j <= cols).then_some((a, i - 1, j - 1))
}
