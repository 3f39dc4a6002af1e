//! Dense square matrices, validated members of the Birkhoff polytope and the
//! `aI + bJ` central form.

use std::fmt;
use std::ops::{Deref, Index};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result, Violation};
use crate::permutation::PermutationMatrix;

/// Default absolute tolerance for doubly stochastic validation.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Compensated (Kahan–Babuška) summation.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Dense `n x n` real matrix stored row-major. All entries are finite.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionTooSmall { n, min: 1 });
        }
        if data.len() != n * n {
            return Err(Error::BadEntryCount {
                n,
                expected: n * n,
                got: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: k / n,
                col: k % n,
            });
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from a list of rows. Ragged or non-square input is an error.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    /// Builds a matrix entry by entry. Panics if `n == 0` or an entry is not finite.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                assert!(v.is_finite(), "non-finite entry at ({i}, {j})");
                data.push(v);
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| 0.0)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// The all-ones matrix.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1.0)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        kahan_sum(self.row(i).iter().copied())
    }

    pub fn col_sum(&self, j: usize) -> f64 {
        kahan_sum((0..self.n).map(|i| self.get(i, j)))
    }

    pub fn trace(&self) -> f64 {
        kahan_sum((0..self.n).map(|i| self.get(i, i)))
    }

    /// Sum of all entries.
    pub fn total(&self) -> f64 {
        kahan_sum(self.data.iter().copied())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out[i * n..(i + 1) * n];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { n, data: out })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// `self - P` without densifying `P`.
    pub fn sub_permutation(&self, p: &PermutationMatrix) -> Result<Self> {
        self.check_dim_n(p.dim())?;
        let mut out = self.clone();
        for (i, &j) in p.sigma().iter().enumerate() {
            out.data[i * self.n + j] -= 1.0;
        }
        Ok(out)
    }

    /// `P * self`: row `i` of the result is row `sigma[i]` of `self`.
    pub fn permute_rows(&self, p: &PermutationMatrix) -> Result<Self> {
        self.check_dim_n(p.dim())?;
        let s = p.sigma();
        Ok(Self::from_fn(self.n, |i, j| self.get(s[i], j)))
    }

    /// `self * P`: column `sigma[k]` of the result is column `k` of `self`.
    pub fn permute_cols(&self, p: &PermutationMatrix) -> Result<Self> {
        self.check_dim_n(p.dim())?;
        let inv = p.inverse();
        let s = inv.sigma();
        Ok(Self::from_fn(self.n, |i, j| self.get(i, s[j])))
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        self.check_dim_n(other.n)
    }

    fn check_dim_n(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: n,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of bounds");
        &self.data[i * self.n + j]
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl Serialize for SquareMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.n))?;
        for row in self.rows() {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}

/// Frobenius inner product `<A, B> = tr(A B^T) = sum a_ij b_ij`.
pub fn frobenius_inner(a: &SquareMatrix, b: &SquareMatrix) -> Result<f64> {
    a.check_dim(b)?;
    Ok(kahan_sum(a.data.iter().zip(&b.data).map(|(x, y)| x * y)))
}

/// A validated element of the Birkhoff polytope.
#[derive(Clone, PartialEq)]
pub struct DoublyStochasticMatrix {
    base: SquareMatrix,
    tol: f64,
    clamped: bool,
}

impl DoublyStochasticMatrix {
    /// Validates `m` as doubly stochastic within the absolute tolerance `tol`.
    ///
    /// Entries in `[-tol, tol]` are snapped to exactly zero so that support
    /// based algorithms see a clean sparsity pattern; `was_clamped` records
    /// whether any entry changed.
    pub fn new(m: SquareMatrix, tol: f64) -> Result<Self> {
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(Error::InvalidTolerance(tol));
        }
        let n = m.dim();
        let mut worst: Option<(f64, Violation)> = None;
        let mut consider = |excess: f64, v: Violation| {
            if excess > tol && worst.is_none_or(|(w, _)| excess > w) {
                worst = Some((excess, v));
            }
        };
        for i in 0..n {
            let sum = m.row_sum(i);
            consider((sum - 1.0).abs(), Violation::Row { index: i, sum });
        }
        for j in 0..n {
            let sum = m.col_sum(j);
            consider((sum - 1.0).abs(), Violation::Column { index: j, sum });
        }
        for i in 0..n {
            for j in 0..n {
                let value = m.get(i, j);
                consider(
                    -value,
                    Violation::Entry {
                        row: i,
                        col: j,
                        value,
                    },
                );
            }
        }
        if let Some((_, violation)) = worst {
            return Err(Error::NotDoublyStochastic { violation, tol });
        }

        let mut base = m;
        let mut clamped = false;
        for v in &mut base.data {
            if *v != 0.0 && v.abs() <= tol {
                *v = 0.0;
                clamped = true;
            }
        }
        Ok(Self { base, tol, clamped })
    }

    /// Validation at [`DEFAULT_TOL`].
    pub fn with_default_tol(m: SquareMatrix) -> Result<Self> {
        Self::new(m, DEFAULT_TOL)
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn was_clamped(&self) -> bool {
        self.clamped
    }

    pub fn as_matrix(&self) -> &SquareMatrix {
        &self.base
    }

    pub fn into_matrix(self) -> SquareMatrix {
        self.base
    }
}

impl Deref for DoublyStochasticMatrix {
    type Target = SquareMatrix;

    fn deref(&self) -> &SquareMatrix {
        &self.base
    }
}

impl AsRef<SquareMatrix> for DoublyStochasticMatrix {
    fn as_ref(&self) -> &SquareMatrix {
        &self.base
    }
}

impl fmt::Debug for DoublyStochasticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.base.fmt(f)
    }
}

impl Serialize for DoublyStochasticMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.base.serialize(serializer)
    }
}

/// `J_n`, the matrix with every entry equal to `1/n`.
pub fn jn(n: usize) -> DoublyStochasticMatrix {
    let v = 1.0 / n as f64;
    DoublyStochasticMatrix {
        base: SquareMatrix::from_fn(n, |_, _| v),
        tol: DEFAULT_TOL,
        clamped: false,
    }
}

/// Coefficients of `A = a I_n + b J_n`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CentralForm {
    pub a: f64,
    pub b: f64,
}

impl CentralForm {
    pub fn reconstruct(&self, n: usize) -> SquareMatrix {
        let off = self.b / n as f64;
        SquareMatrix::from_fn(n, |i, j| if i == j { self.a + off } else { off })
    }
}

/// Recovers `(a, b)` with `A = a I_n + b J_n`.
///
/// Diagonal entries must agree within `tol` of each other, as must the
/// off-diagonal ones; class means are used for the coefficients. The result
/// is also checked to commute with the generators `(0 1)` and the n-cycle of
/// the symmetric group.
pub fn central_form_decompose(m: &SquareMatrix, tol: f64) -> Result<CentralForm> {
    let n = m.dim();
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    let off: Vec<f64> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j))
        .collect();
    let spread = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    };
    let (ds, os) = (spread(&diag), spread(&off));
    if ds > tol {
        return Err(Error::NotCentralForm(format!(
            "diagonal entries spread {ds}"
        )));
    }
    if os > tol {
        return Err(Error::NotCentralForm(format!(
            "off-diagonal entries spread {os}"
        )));
    }

    let swap = PermutationMatrix::transposition(n, 0, 1);
    let cycle = PermutationMatrix::cycle(n);
    for (p, name) in [(&swap, "transposition (0 1)"), (&cycle, "n-cycle")] {
        let ap = m.permute_cols(p)?;
        let pa = m.permute_rows(p)?;
        if ap.max_abs_diff(&pa)? > tol {
            return Err(Error::CommutationFailure(name));
        }
    }

    let d = kahan_sum(diag.iter().copied()) / n as f64;
    let o = kahan_sum(off.iter().copied()) / off.len() as f64;
    Ok(CentralForm {
        a: d - o,
        b: n as f64 * o,
    })
}
