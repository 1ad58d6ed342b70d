//! Minimum-cost perfect assignment (Hungarian method, potentials form).
//!
//! Used to track eigenvalues between consecutive loop frames: greedy
//! nearest-neighbor provably mis-tracks near a degeneracy where the
//! eigenvalues cluster, the optimal assignment does not.

/// Solve the square assignment problem for the given row-major cost matrix.
/// Returns `(assignment, total_cost)` where `assignment[row] = col`.
///
/// O(n^3) shortest augmenting path with dual potentials.
pub fn min_cost_assignment(cost: &[f64], n: usize) -> (Vec<usize>, f64) {
    assert_eq!(cost.len(), n * n);
    const UNSET: usize = usize::MAX;
    // 1-based helpers with a virtual column 0, the classic formulation
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut match_col = vec![UNSET; n + 1]; // match_col[col] = row

    for i in 0..n {
        let mut j0 = n; // virtual free column slot
        match_col[j0] = i;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = match_col[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = UNSET;
            for j in 0..n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 * n + j] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            debug_assert!(j1 != UNSET, "square problem always has a free column");
            for j in 0..=n {
                if used[j] {
                    if match_col[j] != UNSET {
                        u[match_col[j]] += delta;
                    }
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if match_col[j0] == UNSET {
                break;
            }
        }
        // augment along the alternating path
        loop {
            let j1 = way[j0];
            match_col[j0] = match_col[j1];
            j0 = j1;
            if j0 == n {
                break;
            }
        }
    }

    let mut assignment = vec![UNSET; n];
    for j in 0..n {
        if match_col[j] != UNSET {
            assignment[match_col[j]] = j;
        }
    }
    let total = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| cost[i * n + j])
        .sum();
    (assignment, total)
}

/// Total cost of the best assignment that differs from `optimal` in at
/// least one row, found by forbidding each optimal edge in turn. Infinity
/// when n = 1 and there is no alternative.
pub fn second_best_cost(cost: &[f64], n: usize, optimal: &[usize]) -> f64 {
    let mut best = f64::INFINITY;
    let mut scratch = cost.to_vec();
    for (row, &col) in optimal.iter().enumerate() {
        let saved = scratch[row * n + col];
        scratch[row * n + col] = f64::INFINITY / 4.0;
        let (_, total) = min_cost_assignment(&scratch, n);
        if total < best {
            best = total;
        }
        scratch[row * n + col] = saved;
    }
    best
}
