//! Exact two-phase simplex with Bland's rule.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rat::{dot, QVec, Q};

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { x: QVec, value: Q },
}

/// Minimize `c·x` over `{x : a·x ≥ b for ineqs, a·x = b for eqs}` with `x` free.
pub fn minimize(c: &[Q], ineqs: &[(QVec, Q)], eqs: &[(QVec, Q)]) -> LpResult {
    let n = c.len();
    let ni = ineqs.len();
    // variables: x+ (n), x- (n), slack (ni)
    let nv = 2 * n + ni;
    let mut rows: Vec<QVec> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for (k, (a, b)) in ineqs.iter().enumerate() {
        let mut r = vec![Q::zero(); nv];
        for j in 0..n {
            r[j] = a[j].clone();
            r[n + j] = -a[j].clone();
        }
        r[2 * n + k] = -Q::one();
        rows.push(r);
        rhs.push(b.clone());
    }
    for (a, b) in eqs {
        let mut r = vec![Q::zero(); nv];
        for j in 0..n {
            r[j] = a[j].clone();
            r[n + j] = -a[j].clone();
        }
        rows.push(r);
        rhs.push(b.clone());
    }
    let mut cost = vec![Q::zero(); nv];
    for j in 0..n {
        cost[j] = c[j].clone();
        cost[n + j] = -c[j].clone();
    }
    match standard_form(&rows, &rhs, &cost) {
        Std::Infeasible => LpResult::Infeasible,
        Std::Unbounded => LpResult::Unbounded,
        Std::Optimal(y) => {
            let x: QVec = (0..n).map(|j| &y[j] - &y[n + j]).collect();
            let value = dot(c, &x);
            LpResult::Optimal { x, value }
        }
    }
}

/// Some point of the polyhedron, or `None` if empty.
pub fn feasible_point(ineqs: &[(QVec, Q)], eqs: &[(QVec, Q)], n: usize) -> Option<QVec> {
    match minimize(&vec![Q::zero(); n], ineqs, eqs) {
        LpResult::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

enum Std {
    Infeasible,
    Unbounded,
    Optimal(QVec),
}

/// Minimize `cost·y` subject to `rows·y = rhs`, `y ≥ 0`.
fn standard_form(rows: &[QVec], rhs: &[Q], cost: &[Q]) -> Std {
    let m = rows.len();
    let nv = cost.len();
    // tableau columns: original nv, artificials m, rhs
    let width = nv + m + 1;
    let mut t: Vec<QVec> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut r = vec![Q::zero(); width];
        let flip = rhs[i].is_negative();
        for j in 0..nv {
            r[j] = if flip { -rows[i][j].clone() } else { rows[i][j].clone() };
        }
        r[nv + i] = Q::one();
        r[width - 1] = if flip { -rhs[i].clone() } else { rhs[i].clone() };
        t.push(r);
    }
    let mut basis: Vec<usize> = (nv..nv + m).collect();
    // phase one objective: minimize sum of artificials
    let mut obj = vec![Q::zero(); width];
    for j in nv..nv + m {
        obj[j] = Q::one();
    }
    price_out(&mut obj, &t, &basis);
    if !run(&mut t, &mut obj, &mut basis, nv + m) {
        return Std::Unbounded;
    }
    if !obj[width - 1].is_zero() {
        return Std::Infeasible;
    }
    // drive artificials out of the basis
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= nv {
            if let Some(j) = (0..nv).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut obj, i, j);
                basis[i] = j;
            } else {
                t.remove(i);
                basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    for r in t.iter_mut() {
        for j in nv..nv + m {
            r[j] = Q::zero();
        }
    }
    let mut obj = vec![Q::zero(); width];
    obj[..nv].clone_from_slice(cost);
    price_out(&mut obj, &t, &basis);
    if !run(&mut t, &mut obj, &mut basis, nv) {
        return Std::Unbounded;
    }
    let mut y = vec![Q::zero(); nv];
    for (i, &b) in basis.iter().enumerate() {
        y[b] = t[i][width - 1].clone();
    }
    Std::Optimal(y)
}

fn price_out(obj: &mut QVec, t: &[QVec], basis: &[usize]) {
    for (i, &b) in basis.iter().enumerate() {
        if !obj[b].is_zero() {
            let f = obj[b].clone();
            for (o, x) in obj.iter_mut().zip(&t[i]) {
                *o -= &f * x;
            }
        }
    }
}

fn pivot(t: &mut [QVec], obj: &mut QVec, r: usize, c: usize) {
    let inv = Q::one() / &t[r][c];
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let pr = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pr) {
                *x -= &f * p;
            }
        }
    }
    if !obj[c].is_zero() {
        let f = obj[c].clone();
        for (x, p) in obj.iter_mut().zip(&pr) {
            *x -= &f * p;
        }
    }
}

/// Returns false on unboundedness. Columns at or beyond `limit` never enter.
fn run(t: &mut [QVec], obj: &mut QVec, basis: &mut [usize], limit: usize) -> bool {
    let w = obj.len() - 1;
    loop {
        let Some(c) = (0..limit).find(|&j| obj[j].is_negative()) else { return true };
        let mut best: Option<(usize, Q)> = None;
        for i in 0..t.len() {
            if t[i][c].is_positive() {
                let ratio = &t[i][w] / &t[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = best else { return false };
        pivot(t, obj, r, c);
        basis[r] = c;
    }
}
