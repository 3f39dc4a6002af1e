//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the library's numerics.

#![allow(dead_code)]

use birkhoff::SquareMatrix;
use nalgebra::DMatrix;

/// Every permutation of `0..n` by depth-first search, as row -> column maps.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                go(n, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn to_na(a: &SquareMatrix) -> DMatrix<f64> {
    let n = a.dim();
    DMatrix::from_fn(n, n, |i, j| a.get(i, j))
}

pub fn perm_na(sigma: &[usize]) -> DMatrix<f64> {
    let n = sigma.len();
    DMatrix::from_fn(n, n, |i, j| if sigma[i] == j { 1.0 } else { 0.0 })
}

pub fn sv_oracle(m: &DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

pub fn schatten_oracle(m: &DMatrix<f64>, p: f64) -> f64 {
    sv_oracle(m)
        .iter()
        .map(|s| s.powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

pub fn frob_oracle(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `max_P |A - P|_p` by forming every difference densely.
pub fn radius_oracle(a: &SquareMatrix, p: f64) -> (f64, Vec<f64>) {
    let an = to_na(a);
    let dists: Vec<f64> = all_perms(a.dim())
        .iter()
        .map(|s| {
            let d = &an - perm_na(s);
            if p == 2.0 {
                frob_oracle(&d)
            } else {
                schatten_oracle(&d, p)
            }
        })
        .collect();
    (
        dists.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        dists,
    )
}

/// `min_sigma sum_i a[i][sigma(i)]` by enumeration.
pub fn min_trace_oracle(a: &SquareMatrix) -> f64 {
    all_perms(a.dim())
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, &j)| a.get(i, j)).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// `W B W + J` with `W = I - J`, by dense products.
pub fn khoury_oracle(b: &SquareMatrix) -> DMatrix<f64> {
    let n = b.dim();
    let j = DMatrix::from_element(n, n, 1.0 / n as f64);
    let w = DMatrix::identity(n, n) - &j;
    &w * to_na(b) * &w + j
}
