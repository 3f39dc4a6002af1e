//! Permutation matrices stored as index vectors, and lexicographic enumeration.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// A permutation matrix `P` with `P[i][sigma[i]] = 1`. Indices are 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PermutationMatrix {
    sigma: Vec<usize>,
}

impl PermutationMatrix {
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        let n = sigma.len();
        if n == 0 {
            return Err(Error::DimensionTooSmall { n, min: 1 });
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n {
                return Err(Error::InvalidPermutation(format!(
                    "index {s} out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidPermutation(format!("index {s} repeated")));
            }
        }
        Ok(Self { sigma })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            sigma: (0..n).collect(),
        }
    }

    /// Swaps rows `i` and `j` of the identity.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.swap(i, j);
        Self { sigma }
    }

    /// The n-cycle `i -> i + 1 mod n`.
    pub fn cycle(n: usize) -> Self {
        Self {
            sigma: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    /// Uniformly random permutation (Fisher–Yates).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(rng);
        Self { sigma }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    #[inline]
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn into_sigma(self) -> Vec<usize> {
        self.sigma
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.dim()];
        for (i, &s) in self.sigma.iter().enumerate() {
            inv[s] = i;
        }
        Self { sigma: inv }
    }

    pub fn to_dense(&self) -> SquareMatrix {
        SquareMatrix::from_fn(
            self.dim(),
            |i, j| if self.sigma[i] == j { 1.0 } else { 0.0 },
        )
    }

    /// Number of fixed points, i.e. `tr(P)`.
    pub fn fixed_points(&self) -> usize {
        self.sigma
            .iter()
            .enumerate()
            .filter(|(i, &s)| *i == s)
            .count()
    }

    /// `tr(A P) = sum_i a[sigma[i]][i]`.
    pub fn trace_product(&self, a: &SquareMatrix) -> Result<f64> {
        self.check(a.dim())?;
        Ok(crate::matrix::kahan_sum(
            self.sigma.iter().enumerate().map(|(i, &s)| a.get(s, i)),
        ))
    }

    /// `<A, P> = tr(A P^T) = sum_i a[i][sigma[i]]`.
    pub fn inner(&self, a: &SquareMatrix) -> Result<f64> {
        self.check(a.dim())?;
        Ok(crate::matrix::kahan_sum(
            self.sigma.iter().enumerate().map(|(i, &s)| a.get(i, s)),
        ))
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::DimensionMismatch {
                left: n,
                right: self.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for PermutationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.sigma)
    }
}

/// Matrix product `P Q`, composed on index vectors.
pub fn permutation_product(
    p: &PermutationMatrix,
    q: &PermutationMatrix,
) -> Result<PermutationMatrix> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(PermutationMatrix {
        sigma: p.sigma.iter().map(|&s| q.sigma[s]).collect(),
    })
}

/// Rearranges `v` into the next permutation in lexicographic order.
/// Returns `false` (leaving `v` sorted ascending) after the last one.
pub fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub struct LexPermutations {
    current: Vec<usize>,
    done: bool,
}

impl Iterator for LexPermutations {
    type Item = PermutationMatrix;

    fn next(&mut self) -> Option<PermutationMatrix> {
        if self.done {
            return None;
        }
        let out = PermutationMatrix {
            sigma: self.current.clone(),
        };
        self.done = !next_permutation(&mut self.current);
        Some(out)
    }
}

pub fn all_permutations(n: usize) -> LexPermutations {
    LexPermutations {
        current: (0..n).collect(),
        done: n == 0,
    }
}

/// `n!`, saturating.
pub fn factorial(n: usize) -> usize {
    (1..=n).fold(1usize, |acc, k| acc.saturating_mul(k))
}
