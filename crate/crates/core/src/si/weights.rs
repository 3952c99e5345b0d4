//! Monomials by weight, the minimal double weight, graded dimensions modulo
//! the relation ideal and the multiplicity-free test.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, Polynomial, Var};
use super::system::{GeneratorSystem, WeightedMonomial};
use super::SiError;
use crate::linalg::{nonneg_lattice_solutions, Field, Matrix, Rationals};
use crate::quiver::Weight;

/// All monomials of weight `sigma` with every exponent at most `bound`.
pub fn monomials_of_weight(
    sys: &GeneratorSystem,
    sigma: &Weight,
    bound: u32,
) -> Vec<WeightedMonomial> {
    let n = sys.vertices().len();
    assert_eq!(sigma.len(), n, "weight indexed by the system's vertices");
    let a: Vec<Vec<i64>> = (0..n)
        .map(|x| sys.generators().iter().map(|g| g.weight.0[x]).collect())
        .collect();
    nonneg_lattice_solutions(&a, &sigma.0, bound)
        .into_iter()
        .map(|exponents| WeightedMonomial { exponents })
        .collect()
}

/// A weight together with its monomials of total degree at most the box,
/// listed by increasing degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightCell {
    pub weight: Weight,
    pub monomials: Vec<WeightedMonomial>,
}

impl WeightCell {
    /// Degree at which the weight acquires its second monomial.
    pub fn double_degree(&self) -> Option<u32> {
        self.monomials.get(1).map(|m| m.degree())
    }
}

fn for_each_of_degree(r: usize, d: u32, f: &mut impl FnMut(&[u32])) {
    fn rec(start: usize, left: u32, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if left == 0 {
            f(cur);
            return;
        }
        for i in start..cur.len() {
            cur[i] += 1;
            rec(i, left - 1, cur, f);
            cur[i] -= 1;
        }
    }
    let mut cur = vec![0u32; r];
    rec(0, d, &mut cur, f);
}

/// Every weight with at least two monomials of degree `<= bound`, ordered by
/// the degree of its second monomial, then lexicographically by weight.
pub fn weight_cells(sys: &GeneratorSystem, bound: u32) -> Vec<WeightCell> {
    let r = sys.rank();
    let mut cells: HashMap<Weight, Vec<WeightedMonomial>> = HashMap::new();
    for d in 0..=bound {
        for_each_of_degree(r, d, &mut |e| {
            let m = WeightedMonomial {
                exponents: e.to_vec(),
            };
            cells.entry(sys.weight_of(&m)).or_default().push(m);
        });
    }
    let mut out: Vec<WeightCell> = cells
        .into_iter()
        .filter(|(_, ms)| ms.len() >= 2)
        .map(|(weight, monomials)| WeightCell { weight, monomials })
        .collect();
    out.sort_by(|a, b| {
        a.double_degree()
            .cmp(&b.double_degree())
            .then_with(|| a.weight.cmp(&b.weight))
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalWeightReport {
    pub chi: Weight,
    pub monomials: Vec<WeightedMonomial>,
    pub count: usize,
    pub codim: usize,
    pub unique_in_box: bool,
    /// Degree at which the search first saw two monomials of weight `chi`.
    pub degree: u32,
}

/// The first weight, in degree order, carrying two or more monomials.
///
/// `unique_in_box` is false when another weight in the box has two
/// monomials that are not multiples of `chi`-monomials.
pub fn minimal_double_weight(
    sys: &GeneratorSystem,
    bound: u32,
) -> Result<MinimalWeightReport, SiError> {
    let cells = weight_cells(sys, bound);
    let first = cells.first().ok_or(SiError::NotFoundInBox { bound })?;
    let chi = first.weight.clone();
    let monomials = monomials_of_weight(sys, &chi, bound);
    let count = monomials.len();
    let unique_in_box = cells.iter().skip(1).all(|c| {
        let free = c
            .monomials
            .iter()
            .filter(|m| !monomials.iter().any(|p| p.divides(m)))
            .count();
        free < 2
    });
    Ok(MinimalWeightReport {
        chi,
        monomials,
        count,
        codim: count - 2,
        unique_in_box,
        degree: first.double_degree().expect("cells have two monomials"),
    })
}

fn coefficient_rank(polys: &[Polynomial]) -> (usize, usize) {
    let basis: BTreeSet<&Monomial> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m))
        .collect();
    let basis: Vec<&Monomial> = basis.into_iter().collect();
    let rows: Vec<Vec<BigRational>> = polys
        .iter()
        .map(|p| basis.iter().map(|m| p.coefficient(m)).collect())
        .collect();
    let m = Matrix::from_rows(rows, basis.len());
    (basis.len(), Rationals.rank(&m))
}

/// `dim` of the weight-`sigma` piece of the generator ring modulo the
/// relation ideal. The ideal's piece is spanned by `m * H` with `H` a
/// relation and `m` a monomial of weight `sigma - weight(H)`. Without
/// relations but with realizations, the realized monomials are compared
/// directly in the ambient coordinate ring.
pub fn weight_space_dim_symbolic(sys: &GeneratorSystem, sigma: &Weight, bound: u32) -> usize {
    let monomials = monomials_of_weight(sys, sigma, bound);
    if !sys.relations().is_empty() {
        let mut polys: Vec<Polynomial> = Vec::new();
        for h in sys.relations() {
            let wh = match sys.relation_weight(h) {
                Some(Ok(w)) => w,
                _ => unreachable!("relations validated as homogeneous"),
            };
            for m in monomials_of_weight(sys, &sigma.sub(&wh), bound) {
                polys.push(sys.to_polynomial(&m).mul(h));
            }
        }
        let span: Vec<Polynomial> = monomials.iter().map(|m| sys.to_polynomial(m)).collect();
        let (basis_len, _) = coefficient_rank(&[span, polys.clone()].concat());
        let (_, rank) = coefficient_rank(&polys);
        return basis_len - rank;
    }
    let realized: Option<BTreeMap<Var, Polynomial>> = sys
        .generators()
        .iter()
        .map(|g| g.realization.clone().map(|p| (Var(g.name.clone()), p)))
        .collect();
    match realized {
        Some(map) => {
            let polys: Vec<Polynomial> = monomials
                .iter()
                .map(|m| sys.to_polynomial(m).substitute(&map))
                .collect();
            coefficient_rank(&polys).1
        }
        None => monomials.len(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Remainder {
    pub n: u32,
    pub rem: Weight,
    /// Monomials of weight `rem`.
    pub rem_count: usize,
    /// `n + 1` when `rem` carries exactly one monomial, otherwise `None`.
    pub predicted_dim: Option<usize>,
}

/// Largest `n` with `sigma - n chi` realized by a monomial, with the
/// remainder weight and the predicted dimension `n + 1`.
pub fn weight_remainder(
    sigma: &Weight,
    report: &MinimalWeightReport,
    sys: &GeneratorSystem,
    bound: u32,
) -> Result<Remainder, SiError> {
    if monomials_of_weight(sys, sigma, bound).is_empty() {
        return Err(SiError::NoMonomial {
            sigma: sigma.clone(),
        });
    }
    let mut n = 0;
    for k in 1..=bound {
        if !monomials_of_weight(sys, &sigma.sub(&report.chi.scale(k as i64)), bound).is_empty() {
            n = k;
        }
    }
    let rem = sigma.sub(&report.chi.scale(n as i64));
    let rem_count = monomials_of_weight(sys, &rem, bound).len();
    Ok(Remainder {
        n,
        rem,
        rem_count,
        predicted_dim: (rem_count == 1).then_some(n as usize + 1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub multiplicity_free: bool,
    pub witness: Option<Weight>,
    pub witness_dim: Option<usize>,
}

/// Scan weights with two or more monomials in degree order; the first one
/// whose weight space has dimension at least 2 is the witness.
pub fn multiplicity_free_in_box(sys: &GeneratorSystem, bound: u32) -> MultiplicityReport {
    for cell in weight_cells(sys, bound) {
        let d = weight_space_dim_symbolic(sys, &cell.weight, bound);
        if d >= 2 {
            return MultiplicityReport {
                multiplicity_free: false,
                witness: Some(cell.weight),
                witness_dim: Some(d),
            };
        }
    }
    MultiplicityReport {
        multiplicity_free: true,
        witness: None,
        witness_dim: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HYPERSURFACE: &str = r#"{
        "generators": [
            {"name":"x1","weight":{"1":1,"2":-1}}, {"name":"x2","weight":{"2":1,"5":-1}},
            {"name":"x3","weight":{"1":1,"3":-1}}, {"name":"x4","weight":{"3":1,"5":-1}},
            {"name":"x5","weight":{"1":1,"4":-1}}, {"name":"x6","weight":{"4":1,"5":-1}}
        ],
        "relations": ["x1*x2 + x3*x4 + x5*x6"]
    }"#;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn hypersurface_weights() {
        let sys = GeneratorSystem::from_json(HYPERSURFACE).unwrap();
        assert_eq!(sys.vertices(), ["1", "2", "3", "4", "5"]);
        let chi = w(&[1, 0, 0, 0, -1]);
        let ms = monomials_of_weight(&sys, &chi, 6);
        let shown: Vec<String> = ms.iter().map(|m| sys.display(m).to_string()).collect();
        assert_eq!(shown, ["x1*x2", "x3*x4", "x5*x6"]);
        assert_eq!(
            monomials_of_weight(&sys, &Weight::zero(5), 3),
            vec![WeightedMonomial::one(6)]
        );

        let rep = minimal_double_weight(&sys, 3).unwrap();
        assert_eq!(
            (rep.chi.clone(), rep.count, rep.codim, rep.unique_in_box),
            (chi.clone(), 3, 1, true)
        );

        assert_eq!(weight_space_dim_symbolic(&sys, &chi, 6), 2);
        assert_eq!(weight_space_dim_symbolic(&sys, &chi.scale(2), 6), 3);

        let r = weight_remainder(&chi, &rep, &sys, 6).unwrap();
        assert_eq!((r.n, r.rem.is_zero(), r.predicted_dim), (1, true, Some(2)));
        let r2 = weight_remainder(&chi.scale(2), &rep, &sys, 6).unwrap();
        assert_eq!((r2.n, r2.predicted_dim), (2, Some(3)));
        let x1 = w(&[1, -1, 0, 0, 0]);
        let r3 = weight_remainder(&x1, &rep, &sys, 6).unwrap();
        assert_eq!((r3.n, r3.rem.clone(), r3.predicted_dim), (0, x1, Some(1)));
        assert!(matches!(
            weight_remainder(&w(&[0, 0, 0, 0, 1]), &rep, &sys, 6),
            Err(SiError::NoMonomial { .. })
        ));

        let mf = multiplicity_free_in_box(&sys, 3);
        assert!(!mf.multiplicity_free);
        assert_eq!(mf.witness, Some(chi));
    }

    /// Independent oracle for dim SI_{2 chi}: write the six degree-2
    /// monomials and the three products x_i * H by hand.
    #[test]
    fn hypersurface_second_power_by_hand() {
        // basis order: (x1x2)^2, (x3x4)^2, (x5x6)^2, x1x2x3x4, x1x2x5x6, x3x4x5x6
        // x1x2*H = (x1x2)^2 + x1x2x3x4 + x1x2x5x6, and so on
        let rows = Matrix::from_i64_rows(&[
            &[1, 0, 0, 1, 1, 0],
            &[0, 1, 0, 1, 0, 1],
            &[0, 0, 1, 0, 1, 1],
        ]);
        assert_eq!(6 - Rationals.rank(&rows), 3);
    }

    #[test]
    fn independent_weights_have_no_double() {
        let s = r#"{"generators":[{"name":"f","weight":{"1":1,"2":-1}},{"name":"g","weight":{"2":1,"3":-1}}]}"#;
        let sys = GeneratorSystem::from_json(s).unwrap();
        assert_eq!(
            minimal_double_weight(&sys, 5),
            Err(SiError::NotFoundInBox { bound: 5 })
        );
        let single = r#"{"generators":[{"name":"f","weight":{"1":2}}]}"#;
        let sys = GeneratorSystem::from_json(single).unwrap();
        assert!(multiplicity_free_in_box(&sys, 6).multiplicity_free);
    }

    #[test]
    fn inhomogeneous_relations_are_rejected() {
        let s = r#"{"generators":[{"name":"f","weight":{"1":1}},{"name":"g","weight":{"1":2}}],"relations":["f*g + g"]}"#;
        assert!(matches!(
            GeneratorSystem::from_json(s),
            Err(SiError::InhomogeneousRelation { index: 0, .. })
        ));
        let s = r#"{"generators":[{"name":"f","weight":{"1":1}}],"relations":["f*h"]}"#;
        assert_eq!(
            GeneratorSystem::from_json(s),
            Err(SiError::UnknownGenerator("h".into()))
        );
    }

    #[test]
    fn realizations_without_relations() {
        // f = a, g = b on the Kronecker quiver with dim (1,1): independent
        // coordinates, so the weight e1 - e2 has a 2-dimensional space
        let s = r#"{
            "generators":[{"name":"f","weight":{"1":1,"2":-1},"realization":"a"},
                          {"name":"g","weight":{"1":1,"2":-1},"realization":"b"}],
            "ambient":{"quiver":{"vertices":["1","2"],"arrows":[{"id":"a","tail":"1","head":"2"},{"id":"b","tail":"1","head":"2"}]},"dim":[1,1]}
        }"#;
        let sys = GeneratorSystem::from_json(s).unwrap();
        assert_eq!(weight_space_dim_symbolic(&sys, &w(&[1, -1]), 4), 2);
        let wrong = s.replace(r#""realization":"b""#, r#""realization":"a*b""#);
        assert!(matches!(
            GeneratorSystem::from_json(&wrong),
            Err(SiError::RealizationWeight { .. })
        ));
    }
}
