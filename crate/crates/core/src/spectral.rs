//! Singular values and Schatten p-norms.
//!
//! Singular values come from one-sided (Hestenes) Jacobi: plane rotations
//! applied to pairs of columns until every pair is numerically orthogonal,
//! after which the column norms are the singular values. The test for a pair
//! is relative (`|<a_i, a_j>| <= tol * |a_i| |a_j|`), which keeps small
//! singular values accurate to roughly machine precision relative to the
//! largest one.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{kahan_sum, SquareMatrix};

/// Maximum number of cyclic Jacobi sweeps.
pub const MAX_SWEEPS: usize = 60;

/// Singular values in nonincreasing order.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SingularSpectrum {
    values: Vec<f64>,
}

impl SingularSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest singular value (the operator 2-norm).
    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// `l^p` norm of the spectrum.
    pub fn schatten(&self, p: SchattenExponent) -> f64 {
        lp_norm(&self.values, p.value())
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

/// Schatten exponent `1 <= p < inf`.
#[derive(Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct SchattenExponent(f64);

impl SchattenExponent {
    pub const ONE: Self = Self(1.0);
    pub const TWO: Self = Self(2.0);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(Self(p))
        } else {
            Err(Error::InvalidExponent(p))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `x^(1/p)`.
    pub fn root(self, x: f64) -> f64 {
        if self.0 == 1.0 {
            x
        } else if self.0 == 2.0 {
            x.sqrt()
        } else {
            x.powf(1.0 / self.0)
        }
    }
}

impl fmt::Debug for SchattenExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}", self.0)
    }
}

impl fmt::Display for SchattenExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for SchattenExponent {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}

fn lp_norm(values: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        return kahan_sum(values.iter().map(|v| v.abs()));
    }
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    if p == 2.0 {
        let s = kahan_sum(values.iter().map(|v| (v / scale) * (v / scale)));
        return scale * s.sqrt();
    }
    let s = kahan_sum(values.iter().map(|v| (v.abs() / scale).powf(p)));
    scale * s.powf(1.0 / p)
}

/// Singular values of `a`, sorted nonincreasing.
pub fn singular_values(a: &SquareMatrix) -> Result<SingularSpectrum> {
    let n = a.dim();
    // column-major working copy
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| a.get(i, j)).collect())
        .collect();
    let tol = f64::EPSILON * n as f64;
    // columns this small are rounding noise of a rank-deficient input
    let floor = (f64::EPSILON * frobenius_norm(a)).powi(2);

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for i in 0..n - 1 {
            for j in i + 1..n {
                let (alpha, beta, gamma) = gram(&cols[i], &cols[j]);
                if gamma == 0.0
                    || alpha.min(beta) <= floor
                    || gamma.abs() <= tol * (alpha.sqrt() * beta.sqrt())
                {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(j);
                for (x, y) in left[i].iter_mut().zip(right[0].iter_mut()) {
                    let (xi, yj) = (*x, *y);
                    *x = c * xi - s * yj;
                    *y = s * xi + c * yj;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NonConvergence { sweeps: MAX_SWEEPS });
    }

    let mut values: Vec<f64> = cols
        .iter()
        .map(|c| kahan_sum(c.iter().map(|v| v * v)).sqrt())
        .collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(SingularSpectrum { values })
}

fn gram(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let (mut a, mut b, mut g) = (0.0, 0.0, 0.0);
    for (u, v) in x.iter().zip(y) {
        a += u * u;
        b += v * v;
        g += u * v;
    }
    (a, b, g)
}

/// Schatten p-norm: the `l^p` norm of the singular values.
pub fn schatten_norm(a: &SquareMatrix, p: SchattenExponent) -> Result<f64> {
    Ok(singular_values(a)?.schatten(p))
}

/// Entrywise Frobenius norm.
pub fn frobenius_norm(a: &SquareMatrix) -> f64 {
    lp_norm(a.as_slice(), 2.0)
}

/// `sum_i sigma_i(B) sigma_i(C) - |tr(B C)|`, nonnegative by von Neumann's
/// trace inequality.
pub fn von_neumann_gap(b: &SquareMatrix, c: &SquareMatrix) -> Result<f64> {
    let bc = b.matmul(c)?;
    let sb = singular_values(b)?;
    let sc = singular_values(c)?;
    let bound = kahan_sum(sb.values.iter().zip(&sc.values).map(|(x, y)| x * y));
    Ok(bound - bc.trace().abs())
}
