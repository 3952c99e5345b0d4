//! Fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank of an integer matrix given by rows, using one-step Bareiss
/// elimination so every intermediate entry stays integral.
pub fn fraction_free_rank(mut rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let nrows = rows.len();
    let mut rank = 0;
    let mut prev_pivot = BigInt::from(1);
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(pivot_row) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = rows[r][col].clone();
            for c in col..cols {
                let v = &pivot * &rows[r][c] - &factor * &rows[rank][c];
                // exact by Sylvester's identity
                rows[r][c] = v / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}
