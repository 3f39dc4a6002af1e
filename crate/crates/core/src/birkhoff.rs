//! Constructive operations on the Birkhoff polytope: decomposition into
//! permutation matrices, seeded samplers, the uniform permutation average and
//! the nearest generalized doubly stochastic matrix.

use rand::{Rng, SeedableRng};
use rand_distr::Exp1;
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{kahan_sum, DoublyStochasticMatrix, SquareMatrix};
use crate::permutation::{all_permutations, factorial, PermutationMatrix};
use crate::spectral::frobenius_norm;

/// Entries at or below this are treated as outside the support.
pub const SUPPORT_EPS: f64 = 1e-12;
/// Peeling stops once the residual Frobenius norm drops to this.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Largest `n` accepted by [`average_all_permutations`].
pub const AVERAGE_MAX_N: usize = 7;

/// The generator behind every sampler: xoshiro256++ seeded through SplitMix64.
pub type SampleRng = Xoshiro256PlusPlus;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    SampleRng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BirkhoffTerm {
    pub weight: f64,
    #[serde(rename = "sigma")]
    pub perm: PermutationMatrix,
}

/// A convex combination of permutation matrices, in peeling order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BirkhoffDecomposition {
    pub n: usize,
    pub terms: Vec<BirkhoffTerm>,
}

impl BirkhoffDecomposition {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        kahan_sum(self.terms.iter().map(|t| t.weight))
    }

    /// `sum_k w_k P_k`.
    pub fn reconstruct(&self) -> SquareMatrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for t in &self.terms {
            for (i, &j) in t.perm.sigma().iter().enumerate() {
                data[i * n + j] += t.weight;
            }
        }
        SquareMatrix::new(n, data).expect("finite weights")
    }

    /// Marcus–Ree bound on the number of terms, `n^2 - 2n + 2`.
    pub fn max_terms(n: usize) -> usize {
        let m = n.saturating_sub(1);
        m * m + 1
    }
}

/// Perfect matching on the bipartite graph of entries above [`SUPPORT_EPS`],
/// by Kuhn's augmenting paths. Returns `match[row] = col`.
fn support_matching(m: &[f64], n: usize) -> Option<Vec<usize>> {
    fn augment(
        row: usize,
        m: &[f64],
        n: usize,
        seen: &mut [bool],
        col_owner: &mut [Option<usize>],
    ) -> bool {
        for col in 0..n {
            if m[row * n + col] <= SUPPORT_EPS || seen[col] {
                continue;
            }
            seen[col] = true;
            let free = match col_owner[col] {
                None => true,
                Some(other) => augment(other, m, n, seen, col_owner),
            };
            if free {
                col_owner[col] = Some(row);
                return true;
            }
        }
        false
    }

    let mut col_owner = vec![None; n];
    for row in 0..n {
        let mut seen = vec![false; n];
        if !augment(row, m, n, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut matching = vec![0; n];
    for (col, owner) in col_owner.into_iter().enumerate() {
        matching[owner.expect("perfect matching")] = col;
    }
    Some(matching)
}

/// Greedy Birkhoff–von Neumann decomposition.
///
/// Repeatedly finds a perfect matching on the support, removes the smallest
/// matched entry times that permutation, and zeroes entries that fall to
/// [`SUPPORT_EPS`] or below. Each peel zeroes at least one entry, so the loop
/// ends after at most `n^2 - 2n + 2` terms.
pub fn birkhoff_decompose(d: &DoublyStochasticMatrix) -> Result<BirkhoffDecomposition> {
    let n = d.dim();
    let mut residual = d.as_slice().to_vec();
    let mut terms = Vec::new();
    loop {
        let norm = kahan_sum(residual.iter().map(|v| v * v)).sqrt();
        if norm <= RESIDUAL_TOL {
            break;
        }
        let matching =
            support_matching(&residual, n).ok_or(Error::MatchingNotFound { residual: norm })?;
        let weight = matching
            .iter()
            .enumerate()
            .map(|(i, &j)| residual[i * n + j])
            .fold(f64::INFINITY, f64::min);
        for (i, &j) in matching.iter().enumerate() {
            residual[i * n + j] -= weight;
        }
        for v in &mut residual {
            if *v <= SUPPORT_EPS {
                *v = 0.0;
            }
        }
        terms.push(BirkhoffTerm {
            weight,
            perm: PermutationMatrix::new(matching).expect("matching is a bijection"),
        });
    }
    Ok(BirkhoffDecomposition { n, terms })
}

/// `(1/n!) sum_P P` over all `n x n` permutation matrices; equals `J_n`.
pub fn average_all_permutations(n: usize) -> Result<SquareMatrix> {
    if n == 0 {
        return Err(Error::DimensionTooSmall { n, min: 1 });
    }
    if n > AVERAGE_MAX_N {
        return Err(Error::DimensionTooLarge {
            n,
            max: AVERAGE_MAX_N,
        });
    }
    let mut counts = vec![0.0; n * n];
    for p in all_permutations(n) {
        for (i, &j) in p.sigma().iter().enumerate() {
            counts[i * n + j] += 1.0;
        }
    }
    let total = factorial(n) as f64;
    SquareMatrix::new(n, counts.into_iter().map(|c| c / total).collect())
}

/// Convex combination of `k` uniform random permutations with weights from a
/// flat Dirichlet (normalized unit exponentials).
pub fn sample_convex(n: usize, k: usize, seed: u64) -> Result<DoublyStochasticMatrix> {
    let mut rng = rng_from_seed(seed);
    sample_convex_with(n, k, &mut rng)
}

pub fn sample_convex_with<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<DoublyStochasticMatrix> {
    if n == 0 {
        return Err(Error::DimensionTooSmall { n, min: 1 });
    }
    if k == 0 {
        return Err(Error::DimensionTooSmall { n: k, min: 1 });
    }
    let perms: Vec<PermutationMatrix> = (0..k).map(|_| PermutationMatrix::random(n, rng)).collect();
    let raw: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total = kahan_sum(raw.iter().copied());
    let mut data = vec![0.0; n * n];
    for (p, w) in perms.iter().zip(&raw) {
        let w = w / total;
        for (i, &j) in p.sigma().iter().enumerate() {
            data[i * n + j] += w;
        }
    }
    DoublyStochasticMatrix::with_default_tol(SquareMatrix::new(n, data)?)
}

/// Sinkhorn–Knopp balancing of a random matrix with entries in `[0.1, 1)`.
///
/// Rows and columns are normalized alternately; after each column pass the
/// row sums are checked against `tol`.
pub fn sample_sinkhorn(
    n: usize,
    seed: u64,
    max_iters: usize,
    tol: f64,
) -> Result<DoublyStochasticMatrix> {
    let mut rng = rng_from_seed(seed);
    sample_sinkhorn_with(n, &mut rng, max_iters, tol)
}

pub fn sample_sinkhorn_with<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    max_iters: usize,
    tol: f64,
) -> Result<DoublyStochasticMatrix> {
    if n == 0 {
        return Err(Error::DimensionTooSmall { n, min: 1 });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let mut data: Vec<f64> = (0..n * n).map(|_| rng.random_range(0.1..1.0)).collect();
    let mut deviation = f64::INFINITY;
    for _ in 0..max_iters {
        for row in data.chunks_exact_mut(n) {
            let s = kahan_sum(row.iter().copied());
            row.iter_mut().for_each(|v| *v /= s);
        }
        for j in 0..n {
            let s = kahan_sum((0..n).map(|i| data[i * n + j]));
            (0..n).for_each(|i| data[i * n + j] /= s);
        }
        deviation = data
            .chunks_exact(n)
            .map(|row| (kahan_sum(row.iter().copied()) - 1.0).abs())
            .fold(0.0, f64::max);
        if deviation <= tol {
            return DoublyStochasticMatrix::new(SquareMatrix::new(n, data)?, tol);
        }
    }
    Err(Error::SinkhornNonConvergence {
        iters: max_iters,
        deviation,
    })
}

/// Draws from either sampler with equal odds: a convex combination of
/// `1..=2n` permutations, or a Sinkhorn-balanced positive matrix.
pub fn sample_mixed_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DoublyStochasticMatrix> {
    if rng.random_bool(0.5) {
        let k = rng.random_range(1..=2 * n.max(1));
        sample_convex_with(n, k, rng)
    } else {
        sample_sinkhorn_with(n, rng, 10_000, 1e-13)
    }
}

/// Matrix with i.i.d. entries uniform in `[lo, hi)`.
pub fn random_matrix_with<R: Rng + ?Sized>(
    n: usize,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> SquareMatrix {
    SquareMatrix::from_fn(n, |_, _| rng.random_range(lo..hi))
}

/// Nearest generalized doubly stochastic matrix in Frobenius norm:
/// `W B W + J_n` with `W = I_n - J_n`.
///
/// Expanded entrywise as `b_ij - r_i/n - c_j/n + s/n^2 + 1/n`, where `r`, `c`
/// and `s` are the row sums, column sums and total of `B`.
pub fn khoury_projection(b: &SquareMatrix) -> SquareMatrix {
    let n = b.dim();
    let nf = n as f64;
    let rows: Vec<f64> = (0..n).map(|i| b.row_sum(i)).collect();
    let cols: Vec<f64> = (0..n).map(|j| b.col_sum(j)).collect();
    let total = b.total();
    let shift = total / (nf * nf) + 1.0 / nf;
    SquareMatrix::from_fn(n, |i, j| b.get(i, j) - rows[i] / nf - cols[j] / nf + shift)
}

/// Frobenius distance between `B` and its projection.
pub fn khoury_distance(b: &SquareMatrix) -> f64 {
    frobenius_norm(&b.sub(&khoury_projection(b)).expect("same dimension"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::jn;

    #[test]
    fn term_bound_small_n() {
        let got: Vec<usize> = (0..5).map(BirkhoffDecomposition::max_terms).collect();
        assert_eq!(got, [1, 1, 2, 5, 10]);
    }

    #[test]
    fn permutation_decomposes_to_itself() {
        let p = PermutationMatrix::new(vec![2, 0, 3, 1]).unwrap();
        let d = DoublyStochasticMatrix::with_default_tol(p.to_dense()).unwrap();
        let dec = birkhoff_decompose(&d).unwrap();
        assert_eq!(
            dec.terms,
            vec![BirkhoffTerm {
                weight: 1.0,
                perm: p
            }]
        );
    }

    #[test]
    fn j2_splits_in_halves() {
        let dec = birkhoff_decompose(&jn(2)).unwrap();
        assert_eq!(dec.len(), 2);
        let mut perms: Vec<_> = dec.terms.iter().map(|t| t.perm.sigma().to_vec()).collect();
        perms.sort();
        assert_eq!(perms, vec![vec![0, 1], vec![1, 0]]);
        assert!(dec.terms.iter().all(|t| t.weight == 0.5));
    }

    #[test]
    fn matching_failure_is_reported() {
        // passes a loose tolerance but its support has no perfect matching
        let m =
            SquareMatrix::from_rows(&[[0.7, 0.7, 0.0], [0.7, 0.7, 0.0], [0.0, 0.0, 0.5]]).unwrap();
        let d = DoublyStochasticMatrix::new(m, 0.6).unwrap();
        // 0.5 is within tolerance of zero and gets clamped, emptying row 2
        assert!(d.was_clamped());
        assert!(matches!(
            birkhoff_decompose(&d),
            Err(Error::MatchingNotFound { .. })
        ));
    }

    #[test]
    fn average_small() {
        let a2 = average_all_permutations(2).unwrap();
        assert_eq!(
            a2,
            SquareMatrix::from_rows(&[[0.5, 0.5], [0.5, 0.5]]).unwrap()
        );
        assert_eq!(average_all_permutations(3).unwrap(), *jn(3).as_matrix());
        assert!(matches!(
            average_all_permutations(8),
            Err(Error::DimensionTooLarge { n: 8, max: 7 })
        ));
    }

    #[test]
    fn single_term_sample_is_a_permutation() {
        let d = sample_convex(4, 1, 99).unwrap();
        assert!(d.as_slice().iter().all(|&v| v == 0.0 || v == 1.0));
        assert_eq!(d.total(), 4.0);
    }

    #[test]
    fn sinkhorn_trivial_and_errors() {
        let d = sample_sinkhorn(1, 5, 10, 1e-12).unwrap();
        assert_eq!(d.as_slice(), &[1.0]);
        assert!(matches!(
            sample_sinkhorn(5, 5, 1, 1e-15),
            Err(Error::SinkhornNonConvergence { .. })
        ));
        assert!(sample_sinkhorn(3, 5, 10, 0.0).is_err());
        assert!(sample_convex(3, 0, 1).is_err());
    }

    #[test]
    fn khoury_examples() {
        assert_eq!(
            khoury_projection(&SquareMatrix::zeros(3)),
            *jn(3).as_matrix()
        );
        let b = SquareMatrix::from_rows(&[[2.0, 0.0], [0.0, 0.0]]).unwrap();
        let d = khoury_projection(&b);
        assert!(d.max_abs_diff(&SquareMatrix::identity(2)).unwrap() < 1e-15);
    }
}
