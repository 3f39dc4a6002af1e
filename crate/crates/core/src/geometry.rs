//! Bounding balls and Chebyshev centers of the Birkhoff polytope.
//!
//! The farthest point of the polytope from any center is a permutation matrix
//! (a convex function attains its maximum at an extreme point), so every
//! radius here is a maximum over permutations. Under the Frobenius norm that
//! maximum reduces to an assignment problem:
//!
//! ```text
//! |A - P|_F^2 = |A|_F^2 + n - 2 <A, P>,   r(A)^2 = |A|_F^2 + n - 2 tr_min(A)
//! ```
//!
//! For other Schatten exponents no closed form is known, and the radius is
//! computed by enumerating (or sampling) permutations.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::assignment::min_trace_hungarian;
use crate::birkhoff::{rng_from_seed, sample_convex_with, sample_sinkhorn_with};
use crate::error::{Error, Result};
use crate::matrix::{jn, kahan_sum, DoublyStochasticMatrix, SquareMatrix};
use crate::permutation::{all_permutations, PermutationMatrix};
use crate::spectral::{frobenius_norm, schatten_norm, SchattenExponent};

/// Largest `n` for exhaustive enumeration of permutations (8! = 40320).
pub const ENUM_MAX_N: usize = 8;

/// Relative tolerance for treating two distances as tied when picking a witness.
const TIE_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusMethod {
    ClosedFormS2,
    Enumeration,
    SampledLowerBound,
}

/// Smallest ball around `center` containing the polytope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundingBallReport {
    pub method: RadiusMethod,
    pub p: SchattenExponent,
    pub radius: f64,
    /// A farthest permutation.
    pub witness: PermutationMatrix,
    pub permutations_checked: usize,
    pub center: SquareMatrix,
}

/// How to search the permutations for the farthest one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Search {
    /// Every permutation; requires `n <= ENUM_MAX_N`.
    Exhaustive,
    /// `samples` uniform random permutations. Yields a lower bound on the radius.
    Sampled { samples: usize, seed: u64 },
}

/// Squared Frobenius norm without the intermediate square root.
fn frobenius_sq(a: &SquareMatrix) -> f64 {
    kahan_sum(a.as_slice().iter().map(|v| v * v))
}

/// Exact Frobenius bounding-ball radius `sqrt(|A|^2 + n - 2 tr_min(A))`.
///
/// The witness is the minimal-trace assignment read as a permutation matrix:
/// it maximizes `|A - P|_F` because it minimizes `<A, P>`.
pub fn bounding_ball_radius_s2(a: &SquareMatrix) -> BoundingBallReport {
    let n = a.dim();
    let tr = min_trace_hungarian(a);
    let r2 = frobenius_sq(a) + n as f64 - 2.0 * tr.value;
    BoundingBallReport {
        method: RadiusMethod::ClosedFormS2,
        p: SchattenExponent::TWO,
        radius: r2.max(0.0).sqrt(),
        witness: PermutationMatrix::new(tr.assignment).expect("assignment is a bijection"),
        permutations_checked: 0,
        center: a.clone(),
    }
}

/// Distances `|A - P|_p` for the permutations selected by `search`, in
/// enumeration (lexicographic) or draw order.
fn distances(
    a: &SquareMatrix,
    p: SchattenExponent,
    search: Search,
) -> Result<(Vec<PermutationMatrix>, Vec<f64>)> {
    let n = a.dim();
    let perms: Vec<PermutationMatrix> = match search {
        Search::Exhaustive => {
            if n > ENUM_MAX_N {
                return Err(Error::DimensionTooLarge { n, max: ENUM_MAX_N });
            }
            all_permutations(n).collect()
        }
        Search::Sampled { samples, seed } => {
            let mut rng = rng_from_seed(seed);
            (0..samples.max(1))
                .map(|_| PermutationMatrix::random(n, &mut rng))
                .collect()
        }
    };
    let dists = if p.value() == 2.0 {
        let base = frobenius_sq(a) + n as f64;
        perms
            .iter()
            .map(|q| Ok((base - 2.0 * q.inner(a)?).max(0.0).sqrt()))
            .collect::<Result<Vec<_>>>()?
    } else {
        perms
            .iter()
            .map(|q| schatten_norm(&a.sub_permutation(q)?, p))
            .collect::<Result<Vec<_>>>()?
    };
    Ok((perms, dists))
}

/// `max_P |A - P|_p` by enumeration or sampling.
///
/// Under ties the lexicographically smallest permutation is the witness.
pub fn bounding_ball_radius_enum(
    a: &SquareMatrix,
    p: SchattenExponent,
    search: Search,
) -> Result<BoundingBallReport> {
    let (perms, dists) = distances(a, p, search)?;
    let radius = dists.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let cutoff = radius - TIE_RTOL * radius.max(1.0);
    let witness = perms
        .iter()
        .zip(&dists)
        .filter(|(_, &d)| d >= cutoff)
        .map(|(q, _)| q)
        .min()
        .expect("at least one permutation")
        .clone();
    Ok(BoundingBallReport {
        method: match search {
            Search::Exhaustive => RadiusMethod::Enumeration,
            Search::Sampled { .. } => RadiusMethod::SampledLowerBound,
        },
        p,
        radius,
        witness,
        permutations_checked: perms.len(),
        center: a.clone(),
    })
}

/// Closed-form bounds on the Frobenius radius of a doubly stochastic center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusBounds {
    /// `sqrt(|D|^2 + n - 2)`
    pub lo: f64,
    /// `sqrt(|D|^2 + n)`
    pub hi: f64,
    /// `n - 1 <= r^2`
    pub crude_lo_sq: f64,
    /// `r^2 <= 2n`
    pub crude_hi_sq: f64,
}

impl RadiusBounds {
    pub fn contains(&self, r: f64, tol: f64) -> bool {
        let r2 = r * r;
        self.lo - tol <= r
            && r <= self.hi + tol
            && self.crude_lo_sq - tol <= r2
            && r2 <= self.crude_hi_sq + tol
    }
}

pub fn radius_bounds_s2(d: &DoublyStochasticMatrix) -> RadiusBounds {
    let n = d.dim() as f64;
    let f2 = frobenius_sq(d);
    RadiusBounds {
        lo: (f2 + n - 2.0).max(0.0).sqrt(),
        hi: (f2 + n).sqrt(),
        crude_lo_sq: n - 1.0,
        crude_hi_sq: 2.0 * n,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebyshevReport {
    pub n: usize,
    pub p: SchattenExponent,
    pub radius: f64,
    pub center: SquareMatrix,
}

/// Chebyshev radius `(n-1)^(1/p)` of the polytope, centered at `J_n`.
pub fn chebyshev_radius(n: usize, p: SchattenExponent) -> Result<ChebyshevReport> {
    if n == 0 {
        return Err(Error::DimensionTooSmall { n, min: 1 });
    }
    Ok(ChebyshevReport {
        n,
        p,
        radius: p.root((n - 1) as f64),
        center: jn(n).into_matrix(),
    })
}

/// `|alpha J_n - I_n|_p = (n - 1 + |1 - alpha|^p)^(1/p)`.
pub fn alpha_line_norm(alpha: f64, n: usize, p: SchattenExponent) -> Result<f64> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    let tail = (1.0 - alpha).abs().powf(p.value());
    Ok(p.root((n - 1) as f64 + tail))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquidistanceReport {
    pub min: f64,
    pub max: f64,
    /// `max - min` over the checked permutations.
    pub max_dev: f64,
    pub within_tol: bool,
    pub distances: Vec<f64>,
}

/// Distances from `a` to the permutations, and their spread.
pub fn equidistance_check(
    a: &SquareMatrix,
    p: SchattenExponent,
    tol: f64,
    search: Search,
) -> Result<EquidistanceReport> {
    let (_, distances) = distances(a, p, search)?;
    let min = distances.iter().copied().fold(f64::INFINITY, f64::min);
    let max = distances.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(EquidistanceReport {
        min,
        max,
        max_dev: max - min,
        within_tol: max - min <= tol,
        distances,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    Perturbation,
    DoublyStochastic,
}

/// A candidate center whose enclosing radius did not exceed the Chebyshev radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Falsifier {
    pub kind: CandidateKind,
    pub radius: f64,
    pub candidate: SquareMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessReport {
    pub n: usize,
    pub p: SchattenExponent,
    pub trials: usize,
    pub chebyshev_radius: f64,
    /// Smallest `radius(A) - chebyshev_radius` seen over all candidates.
    pub min_margin: f64,
    pub falsifiers: Vec<Falsifier>,
}

impl UniquenessReport {
    pub fn passed(&self) -> bool {
        self.falsifiers.is_empty()
    }
}

/// Smallest Frobenius distance from `J_n` a candidate must have.
pub const PROBE_MIN_DISTANCE: f64 = 1e-3;

/// Randomized falsification attempt for uniqueness of `J_n` as Chebyshev center.
///
/// Even trials perturb `J_n` by a Gaussian direction of Frobenius length
/// drawn from `[0.01, 0.5]`; odd trials draw a random doubly stochastic
/// matrix (alternating the convex and Sinkhorn samplers). Each candidate's
/// exact enclosing radius must strictly exceed `(n-1)^(1/p)`. This is a
/// search for counterexamples, not a proof.
pub fn center_uniqueness_probe(
    n: usize,
    p: SchattenExponent,
    trials: usize,
    seed: u64,
) -> Result<UniquenessReport> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    if n > 6 {
        return Err(Error::DimensionTooLarge { n, max: 6 });
    }
    let cheb = chebyshev_radius(n, p)?.radius;
    let center = jn(n);
    let mut rng = rng_from_seed(seed);
    let mut min_margin = f64::INFINITY;
    let mut falsifiers = Vec::new();

    let mut t = 0;
    while t < trials {
        let (kind, candidate) = if t % 2 == 0 {
            let dir = SquareMatrix::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
            let len = rng.random_range(0.01..=0.5);
            let scale = len / frobenius_norm(&dir);
            (CandidateKind::Perturbation, center.add(&dir.scale(scale))?)
        } else {
            let d = if t % 4 == 1 {
                sample_convex_with(n, n, &mut rng)?
            } else {
                sample_sinkhorn_with(n, &mut rng, 10_000, 1e-13)?
            };
            (CandidateKind::DoublyStochastic, d.into_matrix())
        };
        if frobenius_norm(&candidate.sub(&center)?) < PROBE_MIN_DISTANCE {
            continue;
        }
        t += 1;
        let radius = bounding_ball_radius_enum(&candidate, p, Search::Exhaustive)?.radius;
        let margin = radius - cheb;
        min_margin = min_margin.min(margin);
        if margin <= 0.0 {
            falsifiers.push(Falsifier {
                kind,
                radius,
                candidate,
            });
        }
    }
    Ok(UniquenessReport {
        n,
        p,
        trials,
        chebyshev_radius: cheb,
        min_margin,
        falsifiers,
    })
}
