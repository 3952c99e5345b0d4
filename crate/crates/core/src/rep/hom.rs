//! Hom spaces as kernels of the intertwiner map, Ext via its cokernel, and
//! the derived brick, isomorphism and orbit tests.

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{sample_rng, Rep, RepError, RepPoint, ENTRY_RANGE};
use crate::linalg::{Field, Matrix, Rationals};

/// Basis of `Hom(V, W)`: each element is one matrix `g_x: V_x -> W_x` per vertex.
#[derive(Clone, PartialEq)]
pub struct HomSpace<E> {
    pub dim: usize,
    pub basis: Vec<Vec<Matrix<E>>>,
}

impl<E: std::fmt::Display> std::fmt::Debug for HomSpace<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HomSpace")
            .field("dim", &self.dim)
            .field("basis", &self.basis)
            .finish()
    }
}

/// Matrix of `d: (g_x) -> (g_ha V(a) - W(a) g_ta)_a`, unknowns `g_x` laid
/// out row-major vertex after vertex, equations arrow after arrow.
fn intertwiner_system<F: Field>(
    field: &F,
    v: &Rep<F::Elem>,
    w: &Rep<F::Elem>,
) -> (Matrix<F::Elem>, Vec<usize>) {
    let q = v.quiver();
    let n = q.num_vertices();
    let mut offset = vec![0usize; n + 1];
    for x in 0..n {
        offset[x + 1] = offset[x] + w.vdim(x) * v.vdim(x);
    }
    let unknowns = offset[n];
    let mut rows = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (va, wa) = (v.mat(ai), w.mat(ai));
        let (vt, vh, wt, wh) = (
            v.vdim(a.tail),
            v.vdim(a.head),
            w.vdim(a.tail),
            w.vdim(a.head),
        );
        for i in 0..wh {
            for j in 0..vt {
                let mut row = vec![field.zero(); unknowns];
                // (g_ha V(a))[i, j] = sum_k g_ha[i, k] V(a)[k, j]
                for k in 0..vh {
                    let idx = offset[a.head] + i * vh + k;
                    row[idx] = field.add(&row[idx], va.get(k, j));
                }
                // (W(a) g_ta)[i, j] = sum_k W(a)[i, k] g_ta[k, j]
                for k in 0..wt {
                    let idx = offset[a.tail] + k * vt + j;
                    row[idx] = field.sub(&row[idx], wa.get(i, k));
                }
                rows.push(row);
            }
        }
    }
    (Matrix::from_rows(rows, unknowns), offset)
}

fn check_same_quiver<E: Clone>(v: &Rep<E>, w: &Rep<E>) -> Result<(), RepError> {
    if v.quiver() == w.quiver() {
        Ok(())
    } else {
        Err(RepError::QuiverMismatch)
    }
}

/// `Hom(V, W)` with an explicit basis.
pub fn hom_space<F: Field>(
    field: &F,
    v: &Rep<F::Elem>,
    w: &Rep<F::Elem>,
) -> Result<HomSpace<F::Elem>, RepError> {
    check_same_quiver(v, w)?;
    let (d, offset) = intertwiner_system(field, v, w);
    let (_, kernel) = d.rank_kernel(field);
    let n = v.quiver().num_vertices();
    let basis: Vec<Vec<Matrix<F::Elem>>> = kernel
        .iter()
        .map(|vec| {
            (0..n)
                .map(|x| {
                    let (r, c) = (w.vdim(x), v.vdim(x));
                    Matrix::from_fn(r, c, |i, j| vec[offset[x] + i * c + j].clone())
                })
                .collect()
        })
        .collect();
    Ok(HomSpace {
        dim: basis.len(),
        basis,
    })
}

/// `dim Hom(V, W)` from the rank of the intertwiner map alone.
pub fn hom_dim<F: Field>(field: &F, v: &Rep<F::Elem>, w: &Rep<F::Elem>) -> Result<usize, RepError> {
    check_same_quiver(v, w)?;
    let (d, _) = intertwiner_system(field, v, w);
    Ok(d.cols() - field.rank(&d))
}

/// `dim Ext^1(V, W)` as the cokernel of the intertwiner map. Valid for
/// quivers without relations, where this map is the whole projective
/// resolution.
pub fn ext_dim<F: Field>(field: &F, v: &Rep<F::Elem>, w: &Rep<F::Elem>) -> Result<usize, RepError> {
    check_same_quiver(v, w)?;
    let (d, _) = intertwiner_system(field, v, w);
    Ok(d.rows() - field.rank(&d))
}

pub fn end_dim<F: Field>(field: &F, v: &Rep<F::Elem>) -> usize {
    hom_dim(field, v, v).expect("same quiver")
}

/// A brick has only scalar endomorphisms. Returns the verdict and `dim End`.
pub fn is_brick<F: Field>(field: &F, v: &Rep<F::Elem>) -> (bool, usize) {
    let e = end_dim(field, v);
    (e == 1, e)
}

/// Outcome of an isomorphism test.
#[derive(Debug, Clone, PartialEq)]
pub enum IsoResult {
    /// An invertible intertwiner `V -> W`, one matrix per vertex.
    Yes(Vec<Matrix<BigRational>>),
    No(String),
    Inconclusive,
}

fn is_intertwiner<F: Field>(
    field: &F,
    v: &Rep<F::Elem>,
    w: &Rep<F::Elem>,
    g: &[Matrix<F::Elem>],
) -> bool {
    v.quiver()
        .arrows()
        .iter()
        .enumerate()
        .all(|(ai, a)| g[a.head].mul(field, v.mat(ai)) == w.mat(ai).mul(field, &g[a.tail]))
}

/// Search for an invertible element of `Hom(V, W)`. Basis elements are tried
/// first, then `trials` random combinations; any certificate is re-verified.
pub fn is_isomorphic(
    v: &RepPoint,
    w: &RepPoint,
    trials: usize,
    seed: u64,
) -> Result<IsoResult, RepError> {
    check_same_quiver(v, w)?;
    let f = Rationals;
    if v.dim() != w.dim() {
        return Ok(IsoResult::No(format!(
            "dimension vectors {} and {} differ",
            v.dim(),
            w.dim()
        )));
    }
    let hvw = hom_space(&f, v, w)?;
    let hwv = hom_dim(&f, w, v)?;
    let (ev, ew) = (end_dim(&f, v), end_dim(&f, w));
    if hvw.dim != hwv || hvw.dim < ev || hvw.dim < ew || ev != ew {
        return Ok(IsoResult::No(format!(
            "dim Hom(V,W) = {}, dim Hom(W,V) = {hwv}, dim End(V) = {ev}, dim End(W) = {ew}",
            hvw.dim
        )));
    }
    let n = v.quiver().num_vertices();
    let invertible = |g: &[Matrix<BigRational>]| g.iter().all(|m| m.is_invertible(&f));
    let accept =
        |g: Vec<Matrix<BigRational>>| (invertible(&g) && is_intertwiner(&f, v, w, &g)).then_some(g);
    for b in &hvw.basis {
        if let Some(g) = accept(b.clone()) {
            return Ok(IsoResult::Yes(g));
        }
    }
    let mut rng = sample_rng(seed, 0);
    for _ in 0..trials {
        let coeffs: Vec<BigRational> = (0..hvw.dim)
            .map(|_| f.from_i64(rng.gen_range(ENTRY_RANGE)))
            .collect();
        let g: Vec<Matrix<BigRational>> = (0..n)
            .map(|x| {
                hvw.basis
                    .iter()
                    .zip(&coeffs)
                    .fold(Matrix::zeros(&f, w.vdim(x), v.vdim(x)), |acc, (b, c)| {
                        acc.add(&f, &b[x].scale(&f, c))
                    })
            })
            .collect();
        if let Some(g) = accept(g) {
            return Ok(IsoResult::Yes(g));
        }
    }
    Ok(IsoResult::Inconclusive)
}

/// Orbit data of a representation: `orbit_dim = gl_dim - end_dim`, plus the
/// codimension in `rep_beta(Q)` when the quiver is acyclic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitData {
    pub gl_dim: usize,
    pub end_dim: usize,
    pub orbit_dim: usize,
    pub codim: Option<usize>,
}

pub fn orbit_data<F: Field>(field: &F, v: &Rep<F::Elem>) -> OrbitData {
    let end = end_dim(field, v);
    let gl = v.dim().gl_dim();
    let codim = orbit_codim_hereditary(field, v).ok();
    OrbitData {
        gl_dim: gl,
        end_dim: end,
        orbit_dim: gl - end,
        codim,
    }
}

/// Codimension of the orbit of `V` in `rep_beta(Q)`: `dim End(V) - <beta, beta>`.
pub fn orbit_codim_hereditary<F: Field>(field: &F, v: &Rep<F::Elem>) -> Result<usize, RepError> {
    if !v.quiver().is_acyclic() {
        return Err(RepError::CyclicQuiver);
    }
    let b = v.dim().to_i64();
    let euler = v.quiver().euler_pairing(&b, &b)?;
    let codim = end_dim(field, v) as i64 - euler;
    Ok(usize::try_from(codim).expect("dim End - <b,b> = dim Ext(V,V) >= 0"))
}
