//! Worked example families: a two-loop string algebra with its band
//! modules (Ex1), the hypersurface `x1x2 + x3x4 + x5x6 = 0` and its
//! `D~4` companion (Ex2, Ex2TildeD4), and the family `Q_n` with relations
//! `x1y1 + k x2y2 + x_{k+2}y_{k+2}` (Ex3).

mod verify;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::linalg::Matrix;
use crate::quiver::{
    generator_weight, validate_quiver, ArrowFile, BoundQuiver, DimensionVector, Path, QuiverFile,
    RelationFile, TermFile,
};
use crate::rep::{sample_rng, RepPoint};
use crate::si::{Generator, GeneratorSystem, Polynomial};

pub use verify::{
    king_screening_single_vertex, verify_example, Claim, ExampleReport, KingScreening, VERIFY_BOX,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("bad fixture parameters: {0}")]
    BadParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixtureId {
    Ex1,
    Ex2,
    Ex2TildeD4,
    Ex3 { n: usize },
}

impl FixtureId {
    /// Parse a name (`ex1`, `ex2`, `ex2-d4`, `ex3`) with the family size
    /// used by `ex3`.
    pub fn parse(name: &str, n: Option<usize>) -> Result<Self, FixtureError> {
        let id = match name.to_ascii_lowercase().as_str() {
            "ex1" => FixtureId::Ex1,
            "ex2" => FixtureId::Ex2,
            "ex2-d4" | "ex2tilded4" | "d4" => FixtureId::Ex2TildeD4,
            "ex3" => FixtureId::Ex3 {
                n: n.ok_or_else(|| FixtureError::BadParams("ex3 needs n (n >= 2)".into()))?,
            },
            other => {
                return Err(FixtureError::BadParams(format!(
                    "unknown fixture `{other}` (expected ex1, ex2, ex2-d4 or ex3)"
                )))
            }
        };
        if n.is_some() && !matches!(id, FixtureId::Ex3 { .. }) {
            return Err(FixtureError::BadParams(format!("{id} takes no n")));
        }
        Ok(id)
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::Ex1 => write!(f, "ex1"),
            FixtureId::Ex2 => write!(f, "ex2"),
            FixtureId::Ex2TildeD4 => write!(f, "ex2-d4"),
            FixtureId::Ex3 { n } => write!(f, "ex3(n={n})"),
        }
    }
}

impl FromStr for FixtureId {
    type Err = FixtureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some((name, n)) => {
                let n = n
                    .parse()
                    .map_err(|_| FixtureError::BadParams(format!("`{n}` is not a family size")))?;
                FixtureId::parse(name, Some(n))
            }
            None => FixtureId::parse(s, None),
        }
    }
}

/// A built fixture. `system` is present for Ex2 and Ex3.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: FixtureId,
    pub bound: BoundQuiver,
    pub dim: DimensionVector,
    pub system: Option<GeneratorSystem>,
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

type RelSpec = Vec<(i64, Vec<String>)>;

fn bound_quiver(
    vertices: &[String],
    arrows: &[(String, String, String)],
    relations: &[RelSpec],
) -> BoundQuiver {
    let file = QuiverFile {
        vertices: vertices.to_vec(),
        arrows: arrows
            .iter()
            .map(|(id, tail, head)| ArrowFile {
                id: id.clone(),
                tail: tail.clone(),
                head: head.clone(),
            })
            .collect(),
        relations: relations
            .iter()
            .map(|terms| RelationFile {
                terms: terms
                    .iter()
                    .map(|(c, path)| TermFile {
                        coeff: c.to_string(),
                        path: path.clone(),
                    })
                    .collect(),
            })
            .collect(),
    };
    validate_quiver(&file).expect("fixture quivers are well formed")
}

/// Arrow coordinates as generators, weighted by `e_tail - e_head`.
fn arrow_system(
    bound: &BoundQuiver,
    dim: &DimensionVector,
    relations: Vec<Polynomial>,
) -> GeneratorSystem {
    let q = &bound.quiver;
    let generators = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| Generator {
            name: a.id.clone(),
            weight: generator_weight(q, &Path::new(q, &[i]).expect("single arrow")),
            realization: Some(Polynomial::var(&a.id)),
        })
        .collect();
    let ambient = crate::si::Ambient {
        quiver: q.clone(),
        dim: dim.clone(),
    };
    GeneratorSystem::new(q.vertices().to_vec(), generators, relations, Some(ambient))
        .expect("fixture systems are valid")
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn arrow(id: &str, tail: &str, head: &str) -> (String, String, String) {
    (id.into(), tail.into(), head.into())
}

pub fn build_fixture(id: FixtureId) -> Result<Fixture, FixtureError> {
    match id {
        FixtureId::Ex1 => {
            let bound = bound_quiver(
                &strings(&["0"]),
                &[arrow("x", "0", "0"), arrow("y", "0", "0")],
                &[
                    vec![(1, strings(&["x", "x"]))],
                    vec![(1, strings(&["y", "y"]))],
                    vec![(1, strings(&["x", "y"]))],
                    vec![(1, strings(&["y", "x"]))],
                ],
            );
            Ok(Fixture {
                id,
                bound,
                dim: DimensionVector(vec![2]),
                system: None,
            })
        }
        FixtureId::Ex2 => {
            let bound = bound_quiver(
                &strings(&["1", "2", "3", "4", "5"]),
                &[
                    arrow("x1", "1", "2"),
                    arrow("x2", "2", "5"),
                    arrow("x3", "1", "3"),
                    arrow("x4", "3", "5"),
                    arrow("x5", "1", "4"),
                    arrow("x6", "4", "5"),
                ],
                &[vec![
                    (1, strings(&["x1", "x2"])),
                    (1, strings(&["x3", "x4"])),
                    (1, strings(&["x5", "x6"])),
                ]],
            );
            let dim = DimensionVector::ones(5);
            let rel = Polynomial::parse("x1*x2 + x3*x4 + x5*x6").expect("literal");
            let system = arrow_system(&bound, &dim, vec![rel]);
            Ok(Fixture {
                id,
                bound,
                dim,
                system: Some(system),
            })
        }
        FixtureId::Ex2TildeD4 => {
            let bound = bound_quiver(
                &strings(&["1", "2", "3", "4", "5"]),
                &[
                    arrow("a1", "1", "5"),
                    arrow("a2", "2", "5"),
                    arrow("a3", "5", "3"),
                    arrow("a4", "5", "4"),
                ],
                &[],
            );
            Ok(Fixture {
                id,
                bound,
                dim: DimensionVector(vec![1, 1, 1, 1, 2]),
                system: None,
            })
        }
        FixtureId::Ex3 { n } => {
            if n < 2 {
                return Err(FixtureError::BadParams(format!(
                    "ex3 needs n >= 2, got {n}"
                )));
            }
            let m = n + 2;
            let sink = (n + 3).to_string();
            let vertices: Vec<String> = (0..=n + 3).map(|v| v.to_string()).collect();
            let mut arrows = Vec::new();
            for k in 1..=m {
                arrows.push(arrow(&format!("x{k}"), "0", &k.to_string()));
                arrows.push(arrow(&format!("y{k}"), &k.to_string(), &sink));
            }
            let path = |k: usize| vec![format!("x{k}"), format!("y{k}")];
            let specs: Vec<RelSpec> = (1..=n)
                .map(|k| vec![(1, path(1)), (k as i64, path(2)), (1, path(k + 2))])
                .collect();
            let bound = bound_quiver(&vertices, &arrows, &specs);
            let dim = DimensionVector::ones(n + 4);
            let relations = (1..=n)
                .map(|k| {
                    Polynomial::parse(&format!("x1*y1 + {k}*x2*y2 + x{}*y{}", k + 2, k + 2))
                        .expect("literal")
                })
                .collect();
            let system = arrow_system(&bound, &dim, relations);
            Ok(Fixture {
                id,
                bound,
                dim,
                system: Some(system),
            })
        }
    }
}

impl Fixture {
    /// Whether `lambda` avoids the excluded parameter values.
    pub fn admissible(&self, lambda: &BigRational) -> bool {
        match self.id {
            FixtureId::Ex1 | FixtureId::Ex2TildeD4 => !lambda.is_zero(),
            FixtureId::Ex2 => !lambda.is_zero() && *lambda != -BigRational::one(),
            FixtureId::Ex3 { n } => {
                !lambda.is_zero()
                    && (1..=n as i64).all(|k| *lambda != -BigRational::new(1.into(), k.into()))
            }
        }
    }

    /// The module `M_lambda` of the family.
    pub fn module(&self, lambda: &BigRational) -> Result<RepPoint, FixtureError> {
        if !self.admissible(lambda) {
            return Err(FixtureError::BadParams(format!(
                "lambda = {lambda} is excluded for {}",
                self.id
            )));
        }
        let (zero, one) = (BigRational::zero(), BigRational::one());
        let scalar = |x: BigRational| Matrix::from_rows(vec![vec![x]], 1);
        let mats: Vec<Matrix<BigRational>> = match self.id {
            FixtureId::Ex1 => vec![
                Matrix::from_rows(
                    vec![
                        vec![zero.clone(), one.clone()],
                        vec![zero.clone(), zero.clone()],
                    ],
                    2,
                ),
                Matrix::from_rows(
                    vec![vec![zero.clone(), lambda.clone()], vec![zero.clone(), zero]],
                    2,
                ),
            ],
            FixtureId::Ex2 => {
                let ys = [one.clone(), lambda.clone(), -one.clone() - lambda];
                ys.into_iter()
                    .flat_map(|y| [scalar(one.clone()), scalar(y)])
                    .collect()
            }
            FixtureId::Ex2TildeD4 => vec![
                Matrix::from_rows(vec![vec![one.clone()], vec![zero.clone()]], 1),
                Matrix::from_rows(vec![vec![zero], vec![one.clone()]], 1),
                Matrix::from_rows(vec![vec![one.clone(), one.clone()]], 2),
                Matrix::from_rows(vec![vec![one, lambda.clone()]], 2),
            ],
            FixtureId::Ex3 { n } => {
                let y = |k: usize| match k {
                    1 => one.clone(),
                    2 => lambda.clone(),
                    _ => -one.clone() - int(k as i64 - 2) * lambda,
                };
                (1..=n + 2)
                    .flat_map(|k| [scalar(one.clone()), scalar(y(k))])
                    .collect()
            }
        };
        Ok(
            RepPoint::new(&self.bound.quiver, self.dim.clone(), mats)
                .expect("fixture shapes match"),
        )
    }

    /// `count` admissible parameters drawn from `seed`, pairwise distinct.
    pub fn sample_parameters(&self, count: usize, seed: u64) -> Vec<BigRational> {
        let mut rng = sample_rng(seed, 0x1a4bda);
        let mut out: Vec<BigRational> = Vec::with_capacity(count);
        while out.len() < count {
            let l = BigRational::new(
                rng.gen_range(-50i64..=50).into(),
                rng.gen_range(1i64..=7).into(),
            );
            if self.admissible(&l) && !out.contains(&l) {
                out.push(l);
            }
        }
        out
    }
}
