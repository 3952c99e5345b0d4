//! Pencils `alpha p - q`, the value map `q(M) / p(M)`, trinomial relations
//! and the Jacobian of the relations.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly::{Polynomial, Var};
use super::system::{GeneratorSystem, WeightedMonomial};
use super::SiError;
use crate::linalg::{Field, Matrix, Rationals};
use crate::rep::{sample_rng, RepPoint, ENTRY_RANGE};

/// `h_alpha = alpha p - q` for two distinct monomials of one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilElement {
    pub alpha: BigRational,
    pub p: WeightedMonomial,
    pub q: WeightedMonomial,
}

impl PencilElement {
    pub fn new(
        sys: &GeneratorSystem,
        alpha: BigRational,
        p: WeightedMonomial,
        q: WeightedMonomial,
    ) -> Result<Self, SiError> {
        if p == q || sys.weight_of(&p) != sys.weight_of(&q) {
            return Err(SiError::WeightMismatch {
                p: sys.display(&p).to_string(),
                q: sys.display(&q).to_string(),
            });
        }
        Ok(PencilElement { alpha, p, q })
    }

    pub fn to_polynomial(&self, sys: &GeneratorSystem) -> Polynomial {
        sys.to_polynomial(&self.p)
            .scale(&self.alpha)
            .sub(&sys.to_polynomial(&self.q))
    }

    /// Value given generator values.
    pub fn evaluate(&self, values: &[BigRational]) -> BigRational {
        &self.alpha * GeneratorSystem::evaluate_monomial(values, &self.p)
            - GeneratorSystem::evaluate_monomial(values, &self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    /// `q(v) / p(v)`.
    pub alpha: String,
    /// `alpha p - q` vanishes at `v` and at every sampled `g.v`.
    pub vanishes_on_orbit: bool,
    pub orbit_points_checked: usize,
}

/// Number of base-changed points used to test that the pencil element
/// vanishes along the orbit.
const ORBIT_SAMPLES: u64 = 3;

fn random_invertible(dim: usize, rng: &mut impl Rng) -> Matrix<BigRational> {
    loop {
        let g = Matrix::from_fn(dim, dim, |_, _| {
            Rationals.from_i64(rng.gen_range(ENTRY_RANGE))
        });
        if g.is_invertible(&Rationals) {
            return g;
        }
    }
}

/// `phi(v) = q(v) / p(v)` with a pointwise orbit check of `h_phi(v)`.
pub fn phi_value(
    p: &WeightedMonomial,
    q: &WeightedMonomial,
    sys: &GeneratorSystem,
    v: &RepPoint,
    seed: u64,
) -> Result<(BigRational, PhiReport), SiError> {
    if sys.weight_of(p) != sys.weight_of(q) {
        return Err(SiError::WeightMismatch {
            p: sys.display(p).to_string(),
            q: sys.display(q).to_string(),
        });
    }
    let values = sys.evaluate_generators(v)?;
    let pv = GeneratorSystem::evaluate_monomial(&values, p);
    if pv.is_zero() {
        return Err(SiError::PZero {
            p: sys.display(p).to_string(),
        });
    }
    let alpha = GeneratorSystem::evaluate_monomial(&values, q) / &pv;
    let h = PencilElement {
        alpha: alpha.clone(),
        p: p.clone(),
        q: q.clone(),
    };
    let mut vanishes = h.evaluate(&values).is_zero();
    for i in 0..ORBIT_SAMPLES {
        let mut rng = sample_rng(seed, i);
        let g: Vec<Matrix<BigRational>> = v
            .dim()
            .0
            .iter()
            .map(|&d| random_invertible(d as usize, &mut rng))
            .collect();
        let moved = v
            .act(&Rationals, &g)
            .expect("sampled matrices are invertible");
        vanishes &= h.evaluate(&sys.evaluate_generators(&moved)?).is_zero();
    }
    let report = PhiReport {
        alpha: alpha.to_string(),
        vanishes_on_orbit: vanishes,
        orbit_points_checked: ORBIT_SAMPLES as usize + 1,
    };
    Ok((alpha, report))
}

/// `c1 m1 + c2 m2 + c3 m3` with pairwise coprime monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrinomialRelation {
    pub terms: Vec<(BigRational, WeightedMonomial)>,
}

impl TrinomialRelation {
    pub fn from_polynomial(sys: &GeneratorSystem, p: &Polynomial) -> Result<Self, SiError> {
        let terms = p
            .terms()
            .map(|(m, c)| Ok((c.clone(), sys.to_weighted(m)?)))
            .collect::<Result<Vec<_>, SiError>>()?;
        if terms.len() != 3 {
            return Err(SiError::NotTrinomial(format!(
                "`{p}` has {} terms",
                terms.len()
            )));
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if !terms[i].1.coprime(&terms[j].1) {
                    return Err(SiError::NotTrinomial(format!(
                        "`{p}` has monomials sharing a generator"
                    )));
                }
            }
        }
        Ok(TrinomialRelation { terms })
    }
}

/// `relations[k] - relations[0]` for `k >= 1`.
pub fn relation_differences(sys: &GeneratorSystem) -> Vec<Polynomial> {
    let rels = sys.relations();
    rels.iter().skip(1).map(|r| r.sub(&rels[0])).collect()
}

/// Matrix `(dH_i / df_j)` at the given generator values.
pub fn jacobian_at(sys: &GeneratorSystem, values: &[BigRational]) -> Matrix<BigRational> {
    let point: BTreeMap<Var, BigRational> = sys
        .generators()
        .iter()
        .zip(values)
        .map(|(g, x)| (Var(g.name.clone()), x.clone()))
        .collect();
    let rows: Vec<Vec<BigRational>> = sys
        .relations()
        .iter()
        .map(|h| {
            sys.generators()
                .iter()
                .map(|g| {
                    h.derivative(&Var(g.name.clone()))
                        .eval(&point)
                        .expect("relations use generator names")
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows, sys.rank())
}

/// Points tried by [`jacobian_rank`]; the maximum rank is reported.
const JACOBIAN_POINTS: u64 = 3;

/// Rank of the Jacobian of the relations at random points with coordinates
/// in `1..=10^6`, maximised over three points.
pub fn jacobian_rank(sys: &GeneratorSystem, seed: u64) -> usize {
    (0..JACOBIAN_POINTS)
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let values: Vec<BigRational> = (0..sys.rank())
                .map(|_| BigRational::from_integer(rng.gen_range(1..=1_000_000i64).into()))
                .collect();
            Rationals.rank(&jacobian_at(sys, &values))
        })
        .max()
        .unwrap_or(0)
}
