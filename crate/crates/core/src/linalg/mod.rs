//! Exact linear algebra over the rationals and prime fields, plus
//! nonnegative lattice solving.

pub mod field;
pub mod fraction_free;
pub mod lattice;
pub mod matrix;
pub mod poly;

pub use field::{Field, FieldError, PrimeField, Rationals, MIN_SAMPLING_PRIME};
pub use lattice::nonneg_lattice_solutions;
pub use matrix::Matrix;

/// Rank and kernel basis of `m` over `field`.
pub fn rank_kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (usize, Vec<Vec<F::Elem>>) {
    m.rank_kernel(field)
}

/// Run `$body` with `$f` bound to the field selected by a [`FieldChoice`].
macro_rules! with_field {
    ($choice:expr, $f:ident => $body:expr) => {
        match $choice {
            $crate::linalg::FieldChoice::Rational => {
                let $f = &$crate::linalg::Rationals;
                $body
            }
            $crate::linalg::FieldChoice::Prime(p) => {
                let $f = &p;
                $body
            }
        }
    };
}
pub(crate) use with_field;

/// The field an analysis runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FieldChoice {
    #[default]
    Rational,
    Prime(PrimeField),
}

impl std::str::FromStr for FieldChoice {
    type Err = String;

    /// Accepts `rational` or `p:PRIME`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "rational" {
            return Ok(FieldChoice::Rational);
        }
        let Some(p) = s.strip_prefix("p:") else {
            return Err(format!(
                "unknown field `{s}`; expected `rational` or `p:PRIME`"
            ));
        };
        let p: u64 = p
            .parse()
            .map_err(|_| format!("`{p}` is not an integer modulus"))?;
        PrimeField::new(p)
            .map(FieldChoice::Prime)
            .map_err(|e| e.to_string())
    }
}

impl std::fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldChoice::Rational => write!(f, "rational"),
            FieldChoice::Prime(p) => write!(f, "p:{}", p.modulus()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn to_q(rows: &[Vec<i64>], cols: usize) -> Matrix<BigRational> {
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

    #[test]
    fn field_choice_parsing() {
        assert_eq!("rational".parse::<FieldChoice>(), Ok(FieldChoice::Rational));
        assert!(matches!(
            "p:32003".parse::<FieldChoice>(),
            Ok(FieldChoice::Prime(_))
        ));
        assert!("p:32004".parse::<FieldChoice>().is_err());
        assert!("p:7".parse::<FieldChoice>().is_err());
        assert!("real".parse::<FieldChoice>().is_err());
    }

    #[test]
    fn prime_rank_matches_rational_rank_on_small_integer_matrices() {
        let fp = PrimeField::new(32003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let r = rng.gen_range(1..=6);
            let c = rng.gen_range(1..=6);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_range(-5..=5)).collect())
                .collect();
            let mq = to_q(&rows, c);
            let mp = mq.map(|x| fp.reduce(x).unwrap());
            let rq = Rationals.rank(&mq);
            let rp = fp.rank(&mp);
            assert!(rp <= rq);
            assert_eq!(rp, rq, "{rows:?}");
        }
    }

    proptest! {
        #[test]
        fn rank_kernel_contract(
            r in 0usize..=5, c in 0usize..=5,
            entries in proptest::collection::vec(-4i64..=4, 25),
        ) {
            let rows: Vec<Vec<i64>> = (0..r).map(|i| (0..c).map(|j| entries[i * 5 + j]).collect()).collect();
            let m = to_q(&rows, c);
            let (rank, ker) = rank_kernel(&Rationals, &m);
            prop_assert_eq!(rank + ker.len(), c);
            for v in &ker {
                prop_assert!(m.mul_vec(&Rationals, v).iter().all(|x| x.is_zero()));
            }
            // independence: kernel vectors stacked have full rank
            if !ker.is_empty() {
                let stacked = Matrix::from_rows(ker.clone(), c);
                prop_assert_eq!(Rationals.rank(&stacked), ker.len());
            }
            // fraction-free rank agrees with Gauss-Jordan rank
            prop_assert_eq!(Rationals.rank(&m), rank);
        }

        #[test]
        fn rank_invariant_under_row_permutation_and_scaling(
            entries in proptest::collection::vec(-4i64..=4, 16),
            scales in proptest::collection::vec(prop_oneof![-5i64..=-1, 1i64..=5], 4),
            perm_seed in 0u64..1000,
        ) {
            let rows: Vec<Vec<i64>> = (0..4).map(|i| entries[i * 4..i * 4 + 4].to_vec()).collect();
            let base = Rationals.rank(&to_q(&rows, 4));
            let mut rng = ChaCha8Rng::seed_from_u64(perm_seed);
            let mut order: Vec<usize> = (0..4).collect();
            for i in (1..4).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let moved: Vec<Vec<i64>> = order
                .iter()
                .zip(&scales)
                .map(|(&i, &s)| rows[i].iter().map(|x| x * s).collect())
                .collect();
            prop_assert_eq!(Rationals.rank(&to_q(&moved, 4)), base);
        }
    }
}
