//! Splitting a representation into indecomposable summands by Fitting
//! decompositions of sampled endomorphisms.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::hom::hom_space;
use super::{sample_rng, Rep, RepPoint, ENTRY_RANGE};
use crate::linalg::{poly::char_poly, Field, Matrix, Rationals};
use crate::quiver::DimensionVector;

pub const SPLIT_CAVEAT: &str =
    "parts with dim End > 1 are declared indecomposable only after repeated failed Fitting splits";

/// One summand found by the splitter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplitPart {
    pub dim: DimensionVector,
    pub end_dim: usize,
}

/// Result of a splitting run. Parts are sorted; `caveat` is set when some
/// part is not a brick, so its indecomposability is only probabilistic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting {
    pub parts: Vec<SplitPart>,
    pub caveat: Option<String>,
}

impl Splitting {
    pub fn dims(&self) -> Vec<DimensionVector> {
        self.parts.iter().map(|p| p.dim.clone()).collect()
    }

    pub fn all_bricks(&self) -> bool {
        self.parts.iter().all(|p| p.end_dim == 1)
    }

    /// `sum (dim End - 1)` over the parts; zero iff every part is a brick.
    pub fn excess_end_dim(&self) -> usize {
        self.parts.iter().map(|p| p.end_dim - 1).sum()
    }
}

/// Try `V = ker psi^N + im psi^N` for `psi = phi - lambda`, over every
/// eigenvalue `lambda` of `phi` found in the field.
fn fitting_split<F: Field>(
    field: &F,
    v: &Rep<F::Elem>,
    phi: &[Matrix<F::Elem>],
) -> Option<(Rep<F::Elem>, Rep<F::Elem>)> {
    let n = v.quiver().num_vertices();
    let total = v.dim().total();
    let mut eigen: Vec<F::Elem> = Vec::new();
    for m in phi.iter().filter(|m| m.rows() > 0) {
        for r in field.roots(&char_poly(field, m)) {
            if !eigen.contains(&r) {
                eigen.push(r);
            }
        }
    }
    for lambda in &eigen {
        let mut bases = Vec::with_capacity(n);
        let mut kdims = Vec::with_capacity(n);
        for m in phi {
            let size = m.rows();
            let psi = m.sub(field, &Matrix::identity(field, size).scale(field, lambda));
            let p = psi.pow(field, total);
            let (_, kernel) = p.rank_kernel(field);
            let image = p.column_basis(field);
            kdims.push(kernel.len());
            let cols: Vec<Vec<F::Elem>> = kernel.into_iter().chain(image).collect();
            bases.push(Matrix::from_columns(&cols, size));
        }
        let k: usize = kdims.iter().sum();
        if k == 0 || k == total {
            continue;
        }
        let inverses: Vec<Matrix<F::Elem>> = bases
            .iter()
            .map(|b| {
                b.inverse(field)
                    .expect("kernel and image of a Fitting power are complementary")
            })
            .collect();
        let mut first = Vec::new();
        let mut second = Vec::new();
        for (ai, a) in v.quiver().arrows().iter().enumerate() {
            let m = inverses[a.head]
                .mul(field, v.mat(ai))
                .mul(field, &bases[a.tail]);
            let (kh, kt) = (kdims[a.head], kdims[a.tail]);
            first.push(m.block(0, kh, 0, kt));
            second.push(m.block(kh, m.rows(), kt, m.cols()));
        }
        let d1 = DimensionVector(kdims.iter().map(|&x| x as u32).collect());
        let d2 = DimensionVector(
            v.dim()
                .0
                .iter()
                .zip(&kdims)
                .map(|(&d, &x)| d - x as u32)
                .collect(),
        );
        let r1 = Rep::new(v.quiver(), d1, first).expect("block shapes follow the split");
        let r2 = Rep::new(v.quiver(), d2, second).expect("block shapes follow the split");
        return Some((r1, r2));
    }
    None
}

/// Split `v` over `field`. Each summand with `dim End > 1` is attacked with
/// the hom-space basis elements and then with `trials` random endomorphisms.
pub fn split_indecomposables_in<F: Field>(
    field: &F,
    v: &Rep<F::Elem>,
    trials: usize,
    rng: &mut impl Rng,
) -> Splitting {
    let mut stack = vec![v.clone()];
    let mut parts = Vec::new();
    while let Some(w) = stack.pop() {
        if w.dim().is_zero() {
            continue;
        }
        let end = hom_space(field, &w, &w).expect("same quiver");
        if end.dim == 1 {
            parts.push(SplitPart {
                dim: w.dim().clone(),
                end_dim: 1,
            });
            continue;
        }
        let mut found = end.basis.iter().find_map(|b| fitting_split(field, &w, b));
        let mut failures = 0;
        while found.is_none() && failures < trials {
            let coeffs: Vec<F::Elem> = (0..end.dim)
                .map(|_| field.from_i64(rng.gen_range(ENTRY_RANGE)))
                .collect();
            let phi: Vec<Matrix<F::Elem>> = (0..w.quiver().num_vertices())
                .map(|x| {
                    end.basis
                        .iter()
                        .zip(&coeffs)
                        .fold(Matrix::zeros(field, w.vdim(x), w.vdim(x)), |acc, (b, c)| {
                            acc.add(field, &b[x].scale(field, c))
                        })
                })
                .collect();
            found = fitting_split(field, &w, &phi);
            failures += 1;
        }
        match found {
            Some((a, b)) => {
                stack.push(b);
                stack.push(a);
            }
            None => parts.push(SplitPart {
                dim: w.dim().clone(),
                end_dim: end.dim,
            }),
        }
    }
    parts.sort();
    let caveat = parts
        .iter()
        .any(|p| p.end_dim > 1)
        .then(|| SPLIT_CAVEAT.to_string());
    Splitting { parts, caveat }
}

/// Split a rational representation; randomness comes from `seed` only.
pub fn split_indecomposables(v: &RepPoint, trials: usize, seed: u64) -> Splitting {
    split_indecomposables_in(&Rationals, v, trials, &mut sample_rng(seed, 0))
}
