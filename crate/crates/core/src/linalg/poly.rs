//! Dense univariate polynomials over a [`Field`]: characteristic polynomials
//! and root finding. Coefficient vectors are stored lowest degree first.

use super::field::{Field, PrimeField};
use super::matrix::Matrix;

fn trim<F: Field>(field: &F, mut p: Vec<F::Elem>) -> Vec<F::Elem> {
    while p.last().is_some_and(|c| field.is_zero(c)) {
        p.pop();
    }
    p
}

fn degree<E>(p: &[E]) -> Option<usize> {
    p.len().checked_sub(1)
}

fn mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, out)
}

/// Quotient and remainder; `b` must be nonzero after trimming.
fn divrem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let b = trim(field, b.to_vec());
    let mut r = trim(field, a.to_vec());
    let db = degree(&b).expect("division by the zero polynomial");
    let lead_inv = field.inv(&b[db]).expect("trimmed leading coefficient");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quot = vec![field.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = field.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = field.sub(&r[shift + j], &field.mul(&c, bj));
        }
        quot[shift] = c;
        r = trim(field, r);
    }
    (trim(field, quot), r)
}

fn monic<F: Field>(field: &F, p: Vec<F::Elem>) -> Vec<F::Elem> {
    match p.last() {
        None => p,
        Some(lead) => {
            let inv = field.inv(lead).expect("trimmed leading coefficient");
            p.iter().map(|c| field.mul(c, &inv)).collect()
        }
    }
}

pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = trim(field, a.to_vec());
    let mut b = trim(field, b.to_vec());
    while !b.is_empty() {
        let (_, r) = divrem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, a)
}

/// `base^exp mod modulus`.
fn powmod<F: Field>(
    field: &F,
    base: &[F::Elem],
    mut exp: u64,
    modulus: &[F::Elem],
) -> Vec<F::Elem> {
    let mut acc = vec![field.one()];
    let mut b = divrem(field, base, modulus).1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = divrem(field, &mul(field, &acc, &b), modulus).1;
        }
        b = divrem(field, &mul(field, &b, &b), modulus).1;
        exp >>= 1;
    }
    acc
}

pub fn eval<F: Field>(field: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier
/// recurrence. Requires `n < char` for positive characteristic.
pub fn char_poly<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Vec<F::Elem> {
    let n = a.rows();
    assert_eq!(
        n,
        a.cols(),
        "characteristic polynomial of a non-square matrix"
    );
    let mut coeffs = vec![field.zero(); n + 1];
    coeffs[n] = field.one();
    let mut m = Matrix::zeros(field, n, n);
    let id = Matrix::identity(field, n);
    for k in 1..=n {
        m = a
            .mul(field, &m)
            .add(field, &id.scale(field, &coeffs[n - k + 1]));
        let tr = a.mul(field, &m).trace(field);
        let kinv = field
            .inv(&field.from_i64(k as i64))
            .expect("k below the characteristic");
        coeffs[n - k] = field.neg(&field.mul(&tr, &kinv));
    }
    coeffs
}

/// Distinct roots in `F_p` (odd `p`): isolate the linear part with
/// `gcd(f, x^p - x)`, then split it by Cantor-Zassenhaus with the
/// deterministic shifts `x + 1, x + 2, ...`.
pub fn prime_field_roots(field: &PrimeField, coeffs: &[u64]) -> Vec<u64> {
    let f = trim(field, coeffs.to_vec());
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let p = field.modulus();
    let x = vec![0, 1];
    let xp = powmod(field, &x, p, &f);
    let mut xp_minus_x = xp;
    xp_minus_x.resize(xp_minus_x.len().max(2), 0);
    xp_minus_x[1] = field.sub(&xp_minus_x[1], &1);
    let linear = gcd(field, &f, &trim(field, xp_minus_x));
    let mut roots = Vec::new();
    split_linear(field, linear, &mut roots);
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn split_linear(field: &PrimeField, g: Vec<u64>, out: &mut Vec<u64>) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => {
            let root = field.neg(&field.div(&g[0], &g[1]).unwrap());
            out.push(root);
        }
        Some(d) => {
            let half = (field.modulus() - 1) / 2;
            for shift in 1..field.modulus() {
                let mut h = powmod(field, &[shift, 1], half, &g);
                if h.is_empty() {
                    h.push(0);
                }
                h[0] = field.sub(&h[0], &1);
                let factor = gcd(field, &g, &trim(field, h));
                let df = degree(&factor).unwrap_or(0);
                if df > 0 && df < d {
                    let (other, _) = divrem(field, &g, &factor);
                    split_linear(field, factor, out);
                    split_linear(field, other, out);
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::Rationals;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn char_poly_of_companion() {
        // [[0,-6],[1,5]] has characteristic polynomial x^2 - 5x + 6
        let a = Matrix::from_i64_rows(&[&[0, -6], &[1, 5]]);
        assert_eq!(char_poly(&Rationals, &a), vec![q(6), q(-5), q(1)]);
        let roots = Rationals.roots(&char_poly(&Rationals, &a));
        assert_eq!(roots, vec![q(2), q(3)]);
    }

    #[test]
    fn prime_roots_of_product_of_linears() {
        let f = PrimeField::new(32003).unwrap();
        // (x - 5)(x - 7)(x^2 + 1); -1 is a non-residue mod 32003 (32003 = 3 mod 4)
        let lin = mul(&f, &[f.from_i64(-5), 1], &[f.from_i64(-7), 1]);
        let p = mul(&f, &lin, &[1, 0, 1]);
        assert_eq!(prime_field_roots(&f, &p), vec![5, 7]);
        // repeated root
        let sq = mul(&f, &[f.from_i64(-9), 1], &[f.from_i64(-9), 1]);
        assert_eq!(prime_field_roots(&f, &sq), vec![9]);
        // x^3 has root 0
        assert_eq!(prime_field_roots(&f, &[0, 0, 0, 1]), vec![0]);
    }

    #[test]
    fn roots_evaluate_to_zero() {
        let f = PrimeField::new(32003).unwrap();
        let p: Vec<u64> = [3, 1, 4, 1, 5, 9, 2, 6]
            .iter()
            .map(|&c| f.from_i64(c))
            .collect();
        for r in prime_field_roots(&f, &p) {
            assert_eq!(eval(&f, &p, &r), 0);
        }
    }
}
