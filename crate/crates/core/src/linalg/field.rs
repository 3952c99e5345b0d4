//! Exact fields: the rationals and prime fields `Z/pZ`.
//!
//! A [`Field`] value is a field *instance*; elements are plain data and every
//! arithmetic operation goes through the instance. This keeps residues of
//! different moduli from ever mixing silently.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fraction_free::fraction_free_rank;
use super::matrix::Matrix;
use super::poly;

/// Smallest modulus accepted for sampling.
pub const MIN_SAMPLING_PRIME: u64 = 32003;

/// A Mersenne prime used to lift integer roots of rational polynomials.
const LIFT_PRIME: u64 = (1 << 61) - 1;

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of a rational number; `None` when its denominator is not invertible.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Distinct roots in this field of the polynomial with coefficients
    /// `coeffs[i]` of `x^i`.
    fn roots(&self, coeffs: &[Self::Elem]) -> Vec<Self::Elem>;

    /// Rank of a matrix. Fields may override with a specialised elimination.
    fn rank(&self, m: &Matrix<Self::Elem>) -> usize {
        m.rank_kernel(self).0
    }

    /// Human-readable name, e.g. `rational` or `p:32003`.
    fn name(&self) -> String;
}

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }

    fn roots(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        rational_roots(coeffs)
    }

    fn rank(&self, m: &Matrix<BigRational>) -> usize {
        let rows: Vec<Vec<BigInt>> = (0..m.rows())
            .map(|i| clear_denominators(m.row(i)))
            .collect();
        fraction_free_rank(rows, m.cols())
    }

    fn name(&self) -> String {
        "rational".to_string()
    }
}

/// Scale a row of rationals by the lcm of its denominators.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Integers modulo a prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is below the sampling minimum {MIN_SAMPLING_PRIME}")]
    TooSmall(u64),
    #[error("modulus {0} does not fit below 2^63")]
    TooLarge(u64),
}

impl PrimeField {
    /// Field of residues modulo `p`; `p` must be a prime at least [`MIN_SAMPLING_PRIME`].
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < MIN_SAMPLING_PRIME {
            return Err(FieldError::TooSmall(p));
        }
        if p >= 1 << 63 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    fn unchecked(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Image of a rational number; `None` when `p` divides the denominator.
    pub fn reduce(&self, x: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let n = x.numer().mod_floor(&p).to_u64()?;
        let d = x.denom().mod_floor(&p).to_u64()?;
        self.inv(&d).map(|di| self.mul(&n, &di))
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i128 {
        if a > self.p / 2 {
            a as i128 - self.p as i128
        } else {
            a as i128
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if u64::is_multiple_of(*a, self.p) {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        self.reduce(q)
    }

    fn roots(&self, coeffs: &[u64]) -> Vec<u64> {
        poly::prime_field_roots(self, coeffs)
    }

    fn name(&self) -> String {
        format!("p:{}", self.p)
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Rational roots via the monic transform `y = lead * x`, root finding modulo
/// a large prime and an exact check of the symmetric lift.
fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut ints = clear_denominators(coeffs);
    while ints.last().is_some_and(|c| c.is_zero()) {
        ints.pop();
    }
    if ints.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // factor out x^k
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        out.push(BigRational::zero());
        ints.drain(..low);
    }
    if ints.len() <= 1 {
        return out;
    }
    let n = ints.len() - 1;
    let lead = ints[n].clone();
    // g(y) = lead^(n-1) f(y / lead) is monic with integer coefficients
    let mut monic = Vec::with_capacity(n + 1);
    for (i, c) in ints.iter().enumerate() {
        if i == n {
            monic.push(BigInt::one());
        } else {
            monic.push(c * num_traits::pow(lead.clone(), n - 1 - i));
        }
    }
    let bound = monic.iter().map(|c| c.abs()).max().unwrap() + BigInt::one();
    if bound >= BigInt::from(LIFT_PRIME / 4) {
        // outside desk scale; report only what was found exactly
        return out;
    }
    let field = PrimeField::unchecked(LIFT_PRIME);
    let p = BigInt::from(LIFT_PRIME);
    let reduced: Vec<u64> = monic
        .iter()
        .map(|c| c.mod_floor(&p).to_u64().unwrap())
        .collect();
    for r in poly::prime_field_roots(&field, &reduced) {
        let y = BigInt::from(field.lift(r));
        let val = monic
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &y + c);
        if val.is_zero() {
            out.push(BigRational::new(y, lead.clone()));
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn prime_field_checks_modulus() {
        assert!(PrimeField::new(32003).is_ok());
        assert_eq!(PrimeField::new(32004), Err(FieldError::NotPrime(32004)));
        assert_eq!(PrimeField::new(101), Err(FieldError::TooSmall(101)));
        assert_eq!(PrimeField::new(32005), Err(FieldError::NotPrime(32005)));
        assert!(is_prime_u64(LIFT_PRIME));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(32003).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, 32002);
        assert_eq!(f.mul(&a, &a), 1);
        let inv3 = f.inv(&3).unwrap();
        assert_eq!(f.mul(&inv3, &3), 1);
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.reduce(&q(1, 2)), Some(f.inv(&2).unwrap()));
    }

    #[test]
    fn rational_roots_of_products() {
        // (x - 3/2)(x + 2) x = x^3 + x^2/2 - 3x
        let roots = Rationals.roots(&[q(0, 1), q(-3, 1), q(1, 2), q(1, 1)]);
        assert_eq!(roots, vec![q(-2, 1), q(0, 1), q(3, 2)]);
        // x^2 - 2 has no rational roots
        assert!(Rationals.roots(&[q(-2, 1), q(0, 1), q(1, 1)]).is_empty());
        // constant polynomial
        assert!(Rationals.roots(&[q(5, 1)]).is_empty());
    }

    #[test]
    fn rational_roots_repeated() {
        // (2x - 1)^2 = 4x^2 - 4x + 1
        let roots = Rationals.roots(&[q(1, 1), q(-4, 1), q(4, 1)]);
        assert_eq!(roots, vec![q(1, 2)]);
    }
}
