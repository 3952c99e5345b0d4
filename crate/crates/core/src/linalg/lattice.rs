//! Bounded enumeration of nonnegative integer solutions of `A a = b`.

/// All `a` with `A a = b`, `0 <= a_j <= bound`, in descending lexicographic
/// order (the first coordinate varies slowest, largest first).
///
/// `a` is given as rows of equal length (one row per equation). Each step
/// prunes with the interval of values the remaining coordinates can still
/// contribute to every equation.
pub fn nonneg_lattice_solutions(a: &[Vec<i64>], b: &[i64], bound: u32) -> Vec<Vec<u32>> {
    assert_eq!(a.len(), b.len(), "one right-hand side per equation");
    let nvars = a.first().map_or(0, |r| r.len());
    assert!(
        a.iter().all(|r| r.len() == nvars),
        "ragged constraint matrix"
    );
    let bound_i = bound as i64;

    // reach[k][r] = (min, max) of sum_{j >= k} a[r][j] * x_j over the box
    let mut reach = vec![vec![(0i64, 0i64); a.len()]; nvars + 1];
    for k in (0..nvars).rev() {
        for (r, row) in a.iter().enumerate() {
            let c = row[k] * bound_i;
            let (lo, hi) = reach[k + 1][r];
            reach[k][r] = (lo + c.min(0), hi + c.max(0));
        }
    }

    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    let mut residual = b.to_vec();
    search(a, &reach, bound, 0, &mut current, &mut residual, &mut out);
    out
}

fn search(
    a: &[Vec<i64>],
    reach: &[Vec<(i64, i64)>],
    bound: u32,
    k: usize,
    current: &mut Vec<u32>,
    residual: &mut [i64],
    out: &mut Vec<Vec<u32>>,
) {
    let feasible = residual
        .iter()
        .zip(&reach[k])
        .all(|(res, (lo, hi))| lo <= res && res <= hi);
    if !feasible {
        return;
    }
    if k == current.len() {
        // feasibility with an empty suffix means the residual is zero
        out.push(current.clone());
        return;
    }
    for v in (0..=bound).rev() {
        current[k] = v;
        for (r, row) in a.iter().enumerate() {
            residual[r] -= row[k] * v as i64;
        }
        search(a, reach, bound, k + 1, current, residual, out);
        for (r, row) in a.iter().enumerate() {
            residual[r] += row[k] * v as i64;
        }
    }
    current[k] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive grid enumeration, the oracle for the pruned search.
    fn brute_force(a: &[Vec<i64>], b: &[i64], bound: u32) -> Vec<Vec<u32>> {
        let n = a.first().map_or(0, |r| r.len());
        let mut out = Vec::new();
        let total = (bound as usize + 1).pow(n as u32);
        for idx in 0..total {
            let mut x = vec![0u32; n];
            let mut t = idx;
            for j in (0..n).rev() {
                x[j] = (t % (bound as usize + 1)) as u32;
                t /= bound as usize + 1;
            }
            let ok = a.iter().zip(b).all(|(row, &bi)| {
                row.iter().zip(&x).map(|(c, &v)| c * v as i64).sum::<i64>() == bi
            });
            if ok {
                out.push(x);
            }
        }
        out.sort_by(|u, v| v.cmp(u));
        out
    }

    #[test]
    fn two_variable_sum() {
        let sols = nonneg_lattice_solutions(&[vec![1, 1]], &[2], 2);
        assert_eq!(sols, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn zero_rhs_contains_zero_vector() {
        let sols = nonneg_lattice_solutions(&[vec![1, -1, 2]], &[0], 3);
        assert!(sols.contains(&vec![0, 0, 0]));
    }

    #[test]
    fn hypersurface_generators_weight() {
        // columns: weights of the six arrows 1->2, 2->5, 1->3, 3->5, 1->4, 4->5
        // rows: vertices 1..5, convention +1 at the tail, -1 at the head
        let a = vec![
            vec![1, 0, 1, 0, 1, 0],
            vec![-1, 1, 0, 0, 0, 0],
            vec![0, 0, -1, 1, 0, 0],
            vec![0, 0, 0, 0, -1, 1],
            vec![0, -1, 0, -1, 0, -1],
        ];
        let b = [1, 0, 0, 0, -1];
        let sols = nonneg_lattice_solutions(&a, &b, 2);
        assert_eq!(sols, brute_force(&a, &b, 2));
        assert_eq!(sols.len(), 3);
    }

    proptest! {
        #[test]
        fn agrees_with_grid_enumeration(
            nvars in 1usize..=4,
            neq in 1usize..=3,
            bound in 0u32..=4,
            seed_entries in proptest::collection::vec(-3i64..=3, 12),
            rhs in proptest::collection::vec(-4i64..=6, 3),
        ) {
            let a: Vec<Vec<i64>> = (0..neq)
                .map(|r| (0..nvars).map(|c| seed_entries[r * 4 + c]).collect())
                .collect();
            let b = &rhs[..neq];
            prop_assert_eq!(nonneg_lattice_solutions(&a, b, bound), brute_force(&a, b, bound));
        }
    }
}
