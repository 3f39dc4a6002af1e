//! Minimal trace `tr_min(A) = min_P tr(A P)`, i.e. the linear assignment
//! problem with cost matrix `A`.
//!
//! Convention: the *assignment* `sigma` maps row `i` to column `sigma[i]`, and
//! `tr_min(A) = sum_i a[i][sigma[i]]` (the minimal diagonal sum). The
//! permutation matrix realizing `tr(A P)` is the transpose of the selection
//! pattern, `P[sigma[i]][i] = 1`, and is returned as [`MinTraceResult::argmin`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry;
use crate::matrix::{kahan_sum, DoublyStochasticMatrix, SquareMatrix};
use crate::permutation::{next_permutation, PermutationMatrix};
use crate::spectral::frobenius_norm;

/// Largest dimension accepted by [`min_trace_bruteforce`].
pub const BRUTEFORCE_MAX_N: usize = 9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinTraceResult {
    /// The minimal diagonal sum.
    pub value: f64,
    /// Row `i` is matched with column `sigma[i]`.
    #[serde(rename = "sigma")]
    pub assignment: Vec<usize>,
    /// Permutation matrix with `tr(A * argmin) == value`.
    #[serde(skip)]
    pub argmin: PermutationMatrix,
}

impl MinTraceResult {
    fn from_assignment(a: &SquareMatrix, assignment: Vec<usize>) -> Self {
        let value = kahan_sum(assignment.iter().enumerate().map(|(i, &j)| a.get(i, j)));
        let argmin = PermutationMatrix::new(assignment.clone())
            .expect("assignment is a bijection")
            .inverse();
        Self {
            value,
            assignment,
            argmin,
        }
    }
}

/// Exact `tr_min(A)` by shortest augmenting paths with dual potentials, `O(n^3)`.
///
/// Rows are inserted one at a time; each insertion runs a Dijkstra-like
/// search over reduced costs `a[i][j] - u[i] - v[j]` and augments along the
/// cheapest alternating path. Costs are compared exactly (no epsilon).
pub fn min_trace_hungarian(a: &SquareMatrix) -> MinTraceResult {
    let n = a.dim();
    // 1-based indices; column 0 is the virtual source
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = a.get(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[row_of[j] - 1] = j - 1;
    }
    MinTraceResult::from_assignment(a, assignment)
}

/// Exact `tr_min(A)` by enumerating all `n!` assignments in lexicographic
/// order. Ties keep the lexicographically smallest assignment. `n <= 9`.
pub fn min_trace_bruteforce(a: &SquareMatrix) -> Result<MinTraceResult> {
    let n = a.dim();
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::DimensionTooLarge {
            n,
            max: BRUTEFORCE_MAX_N,
        });
    }
    let mut current: Vec<usize> = (0..n).collect();
    let mut best = current.clone();
    let mut best_value = f64::INFINITY;
    loop {
        let value = kahan_sum(current.iter().enumerate().map(|(i, &j)| a.get(i, j)));
        if value < best_value {
            best_value = value;
            best.copy_from_slice(&current);
        }
        if !next_permutation(&mut current) {
            break;
        }
    }
    Ok(MinTraceResult::from_assignment(a, best))
}

/// Recovers `tr_min(D)` from the Frobenius bounding-ball radius via
/// `tr_min(D) = (|D|_F^2 + n - r(D)^2) / 2`.
pub fn min_trace_from_radius(d: &DoublyStochasticMatrix) -> f64 {
    let r = geometry::bounding_ball_radius_s2(d.as_matrix()).radius;
    let f = frobenius_norm(d);
    (f * f + d.dim() as f64 - r * r) / 2.0
}
