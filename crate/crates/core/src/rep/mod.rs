//! Representations of quivers with exact matrices, hom spaces, orbit data,
//! generic sampling and splitting into indecomposable summands.

mod hom;
mod sampling;
mod split;

pub use hom::{
    end_dim, ext_dim, hom_dim, hom_space, is_brick, is_isomorphic, orbit_codim_hereditary,
    orbit_data, HomSpace, IsoResult, OrbitData,
};
pub use sampling::{
    derive_seed, generic_end_dim, generic_ext_cokernel, generic_hom_ext, random_rep, random_rep_in,
    sample_rng, Sampling, ENTRY_RANGE,
};
pub use split::{
    split_indecomposables, split_indecomposables_in, SplitPart, Splitting, SPLIT_CAVEAT,
};

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::linalg::{Field, Matrix, Rationals};
use crate::quiver::{
    parse_rational, DimensionVector, Path, Quiver, QuiverError, RelationSet, UniformElement,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("arrow `{arrow}` needs a {rows}x{cols} matrix, got {got_rows}x{got_cols}")]
    ShapeMismatch {
        arrow: String,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("expected {expected} matrices (one per arrow), got {got}")]
    ArrowCount { expected: usize, got: usize },
    #[error("representations live over different quivers")]
    QuiverMismatch,
    #[error("the quiver has an oriented cycle; this analysis needs an acyclic quiver")]
    CyclicQuiver,
    #[error("relation does not fit the representation: {0}")]
    RelationMismatch(String),
    #[error("matrix `{0}` is not defined over the chosen field")]
    NotInField(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("malformed representation JSON: {0}")]
    Json(String),
}

/// A representation: a matrix `V(a)` of size `dim[ha] x dim[ta]` per arrow.
/// Entries live in the field the caller passes to each operation.
#[derive(Clone, PartialEq)]
pub struct Rep<E> {
    quiver: Quiver,
    dim: DimensionVector,
    mats: Vec<Matrix<E>>,
}

impl<E: std::fmt::Display> std::fmt::Debug for Rep<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = f.debug_struct("Rep");
        s.field("dim", &self.dim);
        for (a, m) in self.quiver.arrows().iter().zip(&self.mats) {
            s.field(&a.id, m);
        }
        s.finish()
    }
}

/// A representation with exact rational entries.
pub type RepPoint = Rep<BigRational>;

impl<E: Clone> Rep<E> {
    pub fn new(
        quiver: &Quiver,
        dim: DimensionVector,
        mats: Vec<Matrix<E>>,
    ) -> Result<Self, RepError> {
        quiver.check_len(dim.len())?;
        if mats.len() != quiver.arrows().len() {
            return Err(RepError::ArrowCount {
                expected: quiver.arrows().len(),
                got: mats.len(),
            });
        }
        for (a, m) in quiver.arrows().iter().zip(&mats) {
            let (rows, cols) = (dim.0[a.head] as usize, dim.0[a.tail] as usize);
            if m.shape() != (rows, cols) {
                return Err(RepError::ShapeMismatch {
                    arrow: a.id.clone(),
                    rows,
                    cols,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
        }
        Ok(Rep {
            quiver: quiver.clone(),
            dim,
            mats,
        })
    }

    pub fn zero<F: Field<Elem = E>>(
        field: &F,
        quiver: &Quiver,
        dim: DimensionVector,
    ) -> Result<Self, RepError> {
        quiver.check_len(dim.len())?;
        let mats = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dim.0[a.head] as usize, dim.0[a.tail] as usize))
            .collect();
        Ok(Rep {
            quiver: quiver.clone(),
            dim,
            mats,
        })
    }

    /// The one-dimensional simple representation at `vertex`.
    pub fn simple<F: Field<Elem = E>>(field: &F, quiver: &Quiver, vertex: usize) -> Self {
        let dim = DimensionVector::unit(quiver.num_vertices(), vertex);
        Rep::zero(field, quiver, dim).expect("unit vector has the right length")
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self) -> &DimensionVector {
        &self.dim
    }

    pub fn mats(&self) -> &[Matrix<E>] {
        &self.mats
    }

    pub fn mat(&self, arrow: usize) -> &Matrix<E> {
        &self.mats[arrow]
    }

    pub fn mat_by_id(&self, id: &str) -> Option<&Matrix<E>> {
        self.quiver.arrow_index(id).map(|i| &self.mats[i])
    }

    pub(crate) fn vdim(&self, x: usize) -> usize {
        self.dim.0[x] as usize
    }

    pub fn map_entries<T: Clone>(&self, f: impl Fn(&E) -> T) -> Rep<T> {
        Rep {
            quiver: self.quiver.clone(),
            dim: self.dim.clone(),
            mats: self.mats.iter().map(|m| m.map(&f)).collect(),
        }
    }

    /// `V(p) = V(a_r) ... V(a_1)`; the identity for a trivial path.
    pub fn evaluate_path<F: Field<Elem = E>>(&self, field: &F, p: &Path) -> Matrix<E> {
        let mut acc = Matrix::identity(field, self.vdim(p.tail()));
        for &a in p.arrows() {
            acc = self.mats[a].mul(field, &acc);
        }
        acc
    }

    /// `V(u) = sum_i c_i V(p_i)`.
    pub fn evaluate_uniform<F: Field<Elem = E>>(
        &self,
        field: &F,
        u: &UniformElement,
    ) -> Result<Matrix<E>, RepError> {
        let mut acc = Matrix::zeros(field, self.vdim(u.head()), self.vdim(u.tail()));
        for (c, p) in u.terms() {
            if p.arrows().iter().any(|&a| a >= self.mats.len()) {
                return Err(RepError::RelationMismatch(
                    "arrow index out of range".into(),
                ));
            }
            let c = field
                .from_rational(c)
                .ok_or_else(|| RepError::NotInField(c.to_string()))?;
            acc = acc.add(field, &self.evaluate_path(field, p).scale(field, &c));
        }
        Ok(acc)
    }

    /// True iff every relation evaluates to the zero matrix.
    pub fn is_point_of<F: Field<Elem = E>>(
        &self,
        field: &F,
        relations: &RelationSet,
    ) -> Result<bool, RepError> {
        for u in &relations.elements {
            if !self.evaluate_uniform(field, u)?.is_zero(field) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Base change `(g.V)(a) = g_ha V(a) g_ta^{-1}`; `None` if some `g_x` is singular.
    pub fn act<F: Field<Elem = E>>(&self, field: &F, g: &[Matrix<E>]) -> Option<Self> {
        let inverses: Vec<Matrix<E>> = g.iter().map(|m| m.inverse(field)).collect::<Option<_>>()?;
        let mats = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| g[a.head].mul(field, m).mul(field, &inverses[a.tail]))
            .collect();
        Some(Rep {
            quiver: self.quiver.clone(),
            dim: self.dim.clone(),
            mats,
        })
    }

    pub fn direct_sum<F: Field<Elem = E>>(
        &self,
        field: &F,
        other: &Self,
    ) -> Result<Self, RepError> {
        if self.quiver != other.quiver {
            return Err(RepError::QuiverMismatch);
        }
        let n = self.quiver.num_vertices();
        let dim = DimensionVector::sum(n, [&self.dim, &other.dim]);
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                let (ra, ca) = a.shape();
                let (rb, cb) = b.shape();
                Matrix::from_fn(ra + rb, ca + cb, |i, j| match (i < ra, j < ca) {
                    (true, true) => a.get(i, j).clone(),
                    (false, false) => b.get(i - ra, j - ca).clone(),
                    _ => field.zero(),
                })
            })
            .collect();
        Ok(Rep {
            quiver: self.quiver.clone(),
            dim,
            mats,
        })
    }
}

impl RepPoint {
    pub fn from_json(quiver: &Quiver, s: &str) -> Result<Self, RepError> {
        let file: RepFile = serde_json::from_str(s).map_err(|e| RepError::Json(e.to_string()))?;
        let dim = DimensionVector(file.dim);
        quiver.check_len(dim.len())?;
        let mut mats = Vec::with_capacity(quiver.arrows().len());
        for a in quiver.arrows() {
            let (rows, cols) = (dim.0[a.head] as usize, dim.0[a.tail] as usize);
            let entries = match file.matrices.get(&a.id) {
                Some(m) => m.clone(),
                None if rows == 0 || cols == 0 => vec![Vec::new(); rows],
                None => {
                    return Err(RepError::Json(format!(
                        "missing matrix for arrow `{}`",
                        a.id
                    )))
                }
            };
            let parsed = entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| parse_rational(x).map_err(RepError::Json))
                        .collect()
                })
                .collect::<Result<Vec<Vec<BigRational>>, _>>()?;
            if parsed.len() != rows || parsed.iter().any(|r| r.len() != cols) {
                return Err(RepError::ShapeMismatch {
                    arrow: a.id.clone(),
                    rows,
                    cols,
                    got_rows: parsed.len(),
                    got_cols: parsed.first().map_or(0, |r| r.len()),
                });
            }
            mats.push(Matrix::from_rows(parsed, cols));
        }
        if let Some(extra) = file
            .matrices
            .keys()
            .find(|k| quiver.arrow_index(k).is_none())
        {
            return Err(RepError::Json(format!("unknown arrow `{extra}`")));
        }
        Rep::new(quiver, dim, mats)
    }

    pub fn to_json(&self) -> String {
        let matrices = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| {
                (
                    a.id.clone(),
                    m.to_rows()
                        .iter()
                        .map(|r| r.iter().map(|x| x.to_string()).collect())
                        .collect(),
                )
            })
            .collect();
        let file = RepFile {
            dim: self.dim.0.clone(),
            matrices,
        };
        serde_json::to_string_pretty(&file).expect("representations always serialize")
    }

    /// Shorthand for evaluation over the rationals.
    pub fn satisfies(&self, relations: &RelationSet) -> Result<bool, RepError> {
        self.is_point_of(&Rationals, relations)
    }
}

/// JSON layout of a representation: dimension vector plus one row-major
/// matrix of rational strings per arrow id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepFile {
    pub dim: Vec<u32>,
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

/// `V(u)` over the rationals.
pub fn evaluate_uniform(v: &RepPoint, u: &UniformElement) -> Result<Matrix<BigRational>, RepError> {
    v.evaluate_uniform(&Rationals, u)
}

/// Membership in `rep(Q, R)` over the rationals.
pub fn is_point_of(v: &RepPoint, relations: &RelationSet) -> Result<bool, RepError> {
    v.is_point_of(&Rationals, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::BoundQuiver;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn scalar(n: i64) -> Matrix<BigRational> {
        Matrix::from_i64_rows(&[&[n]])
    }

    const HYPERSURFACE: &str = r#"{
        "vertices": ["1","2","3","4","5"],
        "arrows": [
            {"id":"x1","tail":"1","head":"2"}, {"id":"x2","tail":"2","head":"5"},
            {"id":"x3","tail":"1","head":"3"}, {"id":"x4","tail":"3","head":"5"},
            {"id":"x5","tail":"1","head":"4"}, {"id":"x6","tail":"4","head":"5"}
        ],
        "relations": [{"terms": [
            {"coeff":"1","path":["x1","x2"]},
            {"coeff":"1","path":["x3","x4"]},
            {"coeff":"1","path":["x5","x6"]}
        ]}]
    }"#;

    #[test]
    fn hypersurface_module_satisfies_relation() {
        let bq = BoundQuiver::from_json(HYPERSURFACE).unwrap();
        let lambda = 2;
        let vals = [1, 1, 1, lambda, 1, -1 - lambda];
        let v = Rep::new(
            &bq.quiver,
            DimensionVector::ones(5),
            vals.iter().map(|&x| scalar(x)).collect(),
        )
        .unwrap();
        let m = evaluate_uniform(&v, &bq.relations.elements[0]).unwrap();
        assert_eq!(m.shape(), (1, 1));
        assert_eq!(m.get(0, 0), &q(0));
        assert!(is_point_of(&v, &bq.relations).unwrap());

        let zero = Rep::zero(&Rationals, &bq.quiver, DimensionVector::ones(5)).unwrap();
        assert!(evaluate_uniform(&zero, &bq.relations.elements[0])
            .unwrap()
            .is_zero(&Rationals));
    }

    #[test]
    fn band_module_squares_to_zero() {
        let s = r#"{"vertices":["1"],"arrows":[{"id":"x","tail":"1","head":"1"},{"id":"y","tail":"1","head":"1"}],
            "relations":[{"terms":[{"coeff":"1","path":["x","x"]}]}]}"#;
        let bq = BoundQuiver::from_json(s).unwrap();
        let x = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let y = Matrix::from_i64_rows(&[&[0, 3], &[0, 0]]);
        let v = Rep::new(&bq.quiver, DimensionVector(vec![2]), vec![x, y]).unwrap();
        let m = evaluate_uniform(&v, &bq.relations.elements[0]).unwrap();
        assert_eq!(m.shape(), (2, 2));
        assert!(m.is_zero(&Rationals));
    }

    #[test]
    fn path_evaluation_order() {
        // 1 -> 2 -> 3 with V(a) 2x1, V(b) 1x2: V(ab) = V(b) V(a) is 1x1
        let quiver = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let a = Matrix::from_i64_rows(&[&[2], &[3]]);
        let b = Matrix::from_i64_rows(&[&[5, 7]]);
        let v = Rep::new(&quiver, DimensionVector(vec![1, 2, 1]), vec![a, b]).unwrap();
        let p = Path::from_ids(&quiver, &["a", "b"]).unwrap();
        assert_eq!(v.evaluate_path(&Rationals, &p), scalar(31));
    }

    #[test]
    fn shape_errors() {
        let quiver = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let err = Rep::new(&quiver, DimensionVector(vec![1, 2]), vec![scalar(1)]).unwrap_err();
        assert!(matches!(
            err,
            RepError::ShapeMismatch {
                rows: 2,
                cols: 1,
                ..
            }
        ));
    }

    #[test]
    fn json_roundtrip() {
        let quiver = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        let a = Matrix::from_fn(2, 1, |i, _| {
            BigRational::new((i as i64 + 1).into(), 3.into())
        });
        let b = Matrix::from_i64_rows(&[&[-4], &[0]]);
        let v = Rep::new(&quiver, DimensionVector(vec![1, 2]), vec![a, b]).unwrap();
        let back = RepPoint::from_json(&quiver, &v.to_json()).unwrap();
        assert_eq!(back, v);
        assert!(RepPoint::from_json(&quiver, r#"{"dim":[1,2],"matrices":{"a":[["1"]]}}"#).is_err());
    }

    #[test]
    fn base_change_preserves_relations() {
        let bq = BoundQuiver::from_json(HYPERSURFACE).unwrap();
        let vals = [1, 1, 1, 3, 1, -4];
        let v = Rep::new(
            &bq.quiver,
            DimensionVector::ones(5),
            vals.iter().map(|&x| scalar(x)).collect(),
        )
        .unwrap();
        let g: Vec<_> = [2, -1, 5, 7, 3].iter().map(|&t| scalar(t)).collect();
        let w = v.act(&Rationals, &g).unwrap();
        assert!(is_point_of(&w, &bq.relations).unwrap());
        assert_ne!(w, v);
    }
}
