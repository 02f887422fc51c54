//! Dense linear algebra over the rationals.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rat::{dot, zeros, QVec, Q};

pub type Mat = Vec<QVec>;

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| crate::rat::unit(n, i)).collect()
}

pub fn transpose(a: &Mat, cols: usize) -> Mat {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_vec(a: &Mat, x: &[Q]) -> QVec {
    a.iter().map(|r| dot(r, x)).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat, bcols: usize) -> Mat {
    let bt = transpose(b, bcols);
    a.iter().map(|r| bt.iter().map(|c| dot(r, c)).collect()).collect()
}

/// Reduced row echelon form; returns the nonzero rows and the pivot columns.
pub fn rref(rows: &[QVec]) -> (Mat, Vec<usize>) {
    let mut m: Mat = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[QVec]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : rows · x = 0}` in `n` variables.
pub fn nullspace(rows: &[QVec], n: usize) -> Mat {
    let (r, piv) = rref(rows);
    let mut basis = Vec::new();
    for free in 0..n {
        if piv.contains(&free) {
            continue;
        }
        let mut v = zeros(n);
        v[free] = Q::one();
        for (i, &p) in piv.iter().enumerate() {
            v[p] = -r[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `a · x = b`, or `None`.
pub fn solve(a: &[QVec], b: &[Q], n: usize) -> Option<QVec> {
    let aug: Mat = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    if aug.is_empty() {
        return Some(zeros(n));
    }
    let (r, piv) = rref(&aug);
    if piv.last() == Some(&n) {
        return None;
    }
    let mut x = zeros(n);
    for (i, &p) in piv.iter().enumerate() {
        x[p] = r[i][n].clone();
    }
    Some(x)
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend(crate::rat::unit(n, i));
            r
        })
        .collect();
    let (r, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Whether `v` lies in the span of `rows`.
pub fn in_span(rows: &[QVec], v: &[Q]) -> bool {
    let mut all = rows.to_vec();
    let before = rank(&all);
    all.push(v.to_vec());
    rank(&all) == before
}
