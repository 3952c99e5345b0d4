//! Dense row-major matrices over an exact [`Field`].

use std::fmt;

use num_rational::BigRational;

use super::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<T: Clone>(&self, f: impl Fn(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Sub-block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<E>], rows: usize) -> Self {
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            field.add(self.get(i, j), other.get(i, j))
        })
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            field.sub(self.get(i, j), other.get(i, j))
        })
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        self.map(|x| field.mul(c, x))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = field.zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                acc = field.add(&acc, &field.mul(a, other.get(k, j)));
            }
            acc
        })
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, mut exp: usize) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(field, self.rows);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            base = base.mul(field, &base);
            exp >>= 1;
        }
        acc
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(field.zero(), |acc, (a, b)| {
                    field.add(&acc, &field.mul(a, b))
                })
            })
            .collect()
    }

    /// Reduced row echelon form and its pivot columns (Gauss-Jordan).
    pub fn rref<F: Field<Elem = E>>(&self, field: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !field.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = field.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || field.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = field.sub(m.get(i, j), &field.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank and a basis of the right kernel `{v : M v = 0}`.
    pub fn rank_kernel<F: Field<Elem = E>>(&self, field: &F) -> (usize, Vec<Vec<E>>) {
        let (reduced, pivots) = self.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(reduced.get(row, free));
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }

    /// Columns of `self` forming a basis of its column space.
    pub fn column_basis<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let (_, pivots) = self.rref(field);
        pivots.into_iter().map(|c| self.column(c)).collect()
    }

    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                field.one()
            } else {
                field.zero()
            }
        });
        let (reduced, pivots) = aug.rref(field);
        // A is invertible iff the pivots of [A | I] are exactly the first n columns
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(reduced.block(0, n, n, 2 * n))
    }

    pub fn is_invertible<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.rows == self.cols && field.rank(self) == self.rows
    }

    pub fn trace<F: Field<Elem = E>>(&self, field: &F) -> E {
        (0..self.rows.min(self.cols)).fold(field.zero(), |acc, i| field.add(&acc, self.get(i, i)))
    }
}

impl Matrix<BigRational> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
            cols,
        )
    }
}

impl<E: fmt::Display> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{PrimeField, Rationals};
    use num_traits::Zero;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn identity_has_full_rank() {
        let id = Matrix::<BigRational>::identity(&Rationals, 2);
        let (rank, ker) = id.rank_kernel(&Rationals);
        assert_eq!(rank, 2);
        assert!(ker.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let z = Matrix::<BigRational>::zeros(&Rationals, 2, 2);
        let (rank, ker) = z.rank_kernel(&Rationals);
        assert_eq!(rank, 0);
        assert_eq!(ker.len(), 2);
    }

    #[test]
    fn hand_reduced_kernel() {
        // [[1,2],[2,4]]: R2 <- R2 - 2 R1 leaves x + 2y = 0, so y free and x = -2y
        let m = Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let (rank, ker) = m.rank_kernel(&Rationals);
        assert_eq!(rank, 1);
        assert_eq!(ker, vec![vec![q(-2), q(1)]]);
        assert!(m.mul_vec(&Rationals, &ker[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64_rows(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse(&Rationals).unwrap();
        assert_eq!(m.mul(&Rationals, &inv), Matrix::identity(&Rationals, 2));
        let singular = Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse(&Rationals).is_none());
        assert!(Matrix::<BigRational>::zeros(&Rationals, 0, 0)
            .inverse(&Rationals)
            .is_some());
    }

    #[test]
    fn prime_field_rank_drops_on_multiples_of_p() {
        let f = PrimeField::new(32003).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 0], vec![0, 0]], 2);
        assert_eq!(f.rank(&m), 1);
        let reduced = Matrix::from_i64_rows(&[&[1, 1], &[1, 32004]]).map(|x| f.reduce(x).unwrap());
        assert_eq!(f.rank(&reduced), 1);
        assert_eq!(
            Rationals.rank(&Matrix::from_i64_rows(&[&[1, 1], &[1, 32004]])),
            2
        );
    }

    #[test]
    fn matrix_power() {
        let n = Matrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert!(n.pow(&Rationals, 2).is_zero(&Rationals));
        assert_eq!(n.pow(&Rationals, 0), Matrix::identity(&Rationals, 2));
    }
}
