//! Lattices, integer maps and Smith-normal-form splittings.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rat::{lcm_denominators, Int, QVec, Q};

pub type IntMat = Vec<Vec<Int>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub rank: usize,
    pub name: String,
}

impl Lattice {
    pub fn new(rank: usize, name: &str) -> Self {
        Lattice { rank, name: name.into() }
    }

    /// The dual lattice, named by swapping the usual `N`/`M` letter.
    pub fn dual(&self) -> Self {
        let name = if let Some(rest) = self.name.strip_prefix('N') {
            alloc::format!("M{rest}")
        } else if let Some(rest) = self.name.strip_prefix('M') {
            alloc::format!("N{rest}")
        } else {
            alloc::format!("{}*", self.name)
        };
        Lattice { rank: self.rank, name }
    }
}

/// Integer linear map; `matrix` has `target` rows and `source` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeMap {
    pub source: usize,
    pub target: usize,
    pub matrix: IntMat,
}

impl LatticeMap {
    pub fn new(source: usize, target: usize, matrix: IntMat) -> Self {
        assert_eq!(matrix.len(), target);
        assert!(matrix.iter().all(|r| r.len() == source));
        LatticeMap { source, target, matrix }
    }

    pub fn from_i64(source: usize, rows: &[&[i64]]) -> Self {
        let m: IntMat = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        LatticeMap::new(source, m.len(), m)
    }

    pub fn identity(n: usize) -> Self {
        LatticeMap::new(n, n, int_identity(n))
    }

    pub fn apply(&self, v: &[Q]) -> QVec {
        self.matrix
            .iter()
            .map(|row| {
                let mut s = Q::zero();
                for (a, x) in row.iter().zip(v) {
                    if !a.is_zero() {
                        s += Q::from_integer(a.clone()) * x;
                    }
                }
                s
            })
            .collect()
    }

    pub fn compose(&self, inner: &LatticeMap) -> LatticeMap {
        assert_eq!(self.source, inner.target);
        LatticeMap::new(inner.source, self.target, int_mul(&self.matrix, &inner.matrix))
    }

    pub fn transpose(&self) -> LatticeMap {
        LatticeMap::new(self.target, self.source, int_transpose(&self.matrix, self.source))
    }

    pub fn to_rational(&self) -> Mat {
        self.matrix.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.matrix == int_identity(self.source)
    }
}

pub fn int_identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()).collect()
}

pub fn int_transpose(a: &IntMat, cols: usize) -> IntMat {
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn int_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| {
                    let mut s = Int::zero();
                    for k in 0..inner {
                        s += &r[k] * &b[k][j];
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Smith form `u · a · v = d` with `d` diagonal, nonnegative, divisibility chain.
pub struct Smith {
    pub u: IntMat,
    pub v: IntMat,
    pub diag: Vec<Int>,
}

pub fn smith(a: &IntMat, cols: usize) -> Smith {
    let rows = a.len();
    let mut m = a.clone();
    let mut u = int_identity(rows);
    let mut v = int_identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        u.swap(t, pi);
        for r in m.iter_mut() {
            r.swap(t, pj);
        }
        for r in v.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let f = m[i][t].div_floor(&m[t][t]);
                row_sub(&mut m, i, t, &f);
                row_sub(&mut u, i, t, &f);
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let f = m[t][j].div_floor(&m[t][t]);
                col_sub(&mut m, j, t, &f);
                col_sub(&mut v, j, t, &f);
                if !m[t][j].is_zero() {
                    col_swap(&mut m, t, j);
                    col_swap(&mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let mut fix = None;
            'o: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !m[i][j].is_multiple_of(&m[t][t]) {
                        fix = Some(i);
                        break 'o;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let one = Int::one();
                    row_sub(&mut m, t, i, &-one.clone());
                    row_sub(&mut u, t, i, &-one);
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let diag = (0..rows.min(cols)).map(|i| m[i][i].clone()).collect();
    Smith { u, v, diag }
}

fn row_sub(m: &mut IntMat, i: usize, k: usize, f: &Int) {
    if f.is_zero() {
        return;
    }
    let rk = m[k].clone();
    for (x, y) in m[i].iter_mut().zip(rk) {
        *x -= f * y;
    }
}

fn col_sub(m: &mut IntMat, j: usize, k: usize, f: &Int) {
    if f.is_zero() {
        return;
    }
    for r in m.iter_mut() {
        let y = r[k].clone();
        r[j] -= f * y;
    }
}

fn col_swap(m: &mut IntMat, a: usize, b: usize) {
    for r in m.iter_mut() {
        r.swap(a, b);
    }
}

/// Options controlling how a splitting is chosen.
#[derive(Clone, Debug, Default)]
pub struct SplitOptions {
    /// Permutation applied to the source coordinates before elimination.
    pub pivot_order: Option<Vec<usize>>,
    /// Reduce to the deterministic normal form.
    pub canonical: bool,
}

impl SplitOptions {
    pub fn canonical() -> Self {
        SplitOptions { pivot_order: None, canonical: true }
    }
}

/// Section, cosection and kernel of a surjection `pr: ℤⁿ → ℤᵐ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    /// `pr ∘ section = id`.
    pub section: LatticeMap,
    /// `cosection ∘ kernel = id`, `cosection ∘ section = 0`.
    pub cosection: LatticeMap,
    /// Inclusion of the kernel, columns form a basis.
    pub kernel: LatticeMap,
}

impl Split {
    pub fn kernel_basis(&self) -> Vec<QVec> {
        let k = self.kernel.to_rational();
        (0..self.kernel.source).map(|j| k.iter().map(|r| r[j].clone()).collect()).collect()
    }
}

pub fn smith_split(pr: &LatticeMap) -> Result<Split> {
    smith_split_with(pr, &SplitOptions::canonical())
}

pub fn smith_split_with(pr: &LatticeMap, opts: &SplitOptions) -> Result<Split> {
    let n = pr.source;
    let m = pr.target;
    let perm: Vec<usize> = opts.pivot_order.clone().unwrap_or_else(|| (0..n).collect());
    // columns of pr permuted: a' = pr · P where (P)_{perm[j], j} = 1
    let a: IntMat = pr.matrix.iter().map(|r| perm.iter().map(|&p| r[p].clone()).collect()).collect();
    let s = smith(&a, n);
    if s.diag.len() < m || s.diag.iter().take(m).any(|d| !d.is_one()) {
        return Err(Error::NotSurjective);
    }
    // v in original coordinates: row perm[i] of P·v is row i of v
    let mut v = vec![vec![Int::zero(); n]; n];
    for (i, &p) in perm.iter().enumerate() {
        v[p] = s.v[i].clone();
    }
    // section = v[:, :m] · u ; kernel = v[:, m:]
    let vm: IntMat = v.iter().map(|r| r[..m].to_vec()).collect();
    let mut section = int_mul(&vm, &s.u);
    let mut kernel: Vec<Vec<Int>> = (m..n).map(|j| v.iter().map(|r| r[j].clone()).collect()).collect();
    if opts.canonical {
        kernel = hermite_rows(&kernel, n);
        let mut cols: Vec<Vec<Int>> = int_transpose(&section, m);
        for c in cols.iter_mut() {
            reduce_modulo(c, &kernel);
        }
        section = int_transpose(&cols, n);
    }
    let kcols = int_transpose(&kernel, n);
    let k = n - m;
    // [section | kernel] is unimodular; cosection = last k rows of its inverse
    let b: Mat = (0..n)
        .map(|i| {
            section[i]
                .iter()
                .chain(kcols[i].iter())
                .map(|x| Q::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let inv = linalg::inverse(&b).ok_or(Error::NotSurjective)?;
    let cosection: IntMat = inv[m..].iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
    Ok(Split {
        section: LatticeMap::new(m, n, section),
        cosection: LatticeMap::new(n, k, cosection),
        kernel: LatticeMap::new(k, n, kcols),
    })
}

/// Row-style Hermite normal form of an integer row basis.
pub fn hermite_rows(rows: &[Vec<Int>], n: usize) -> Vec<Vec<Int>> {
    let mut m: Vec<Vec<Int>> = rows.to_vec();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let f = m[i][c].div_floor(&m[r][c]);
                    row_sub(&mut m, i, r, &f);
                    if !m[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let f = m[i][c].div_floor(&m[r][c]);
                row_sub(&mut m, i, r, &f);
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// Reduce `c` modulo the lattice spanned by Hermite rows.
pub fn reduce_modulo(c: &mut [Int], hermite: &[Vec<Int>]) {
    for row in hermite {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { continue };
        let f = c[p].div_floor(&row[p]);
        if !f.is_zero() {
            for (x, y) in c.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
    }
}

/// Smallest positive integer `μ` with `μ·v` integral.
pub fn multiplicity(v: &[Q]) -> Int {
    lcm_denominators(v)
}

/// Primitive integer direction of `v` together with `μ(v)`.
pub fn primitive_and_multiplicity(v: &[Q]) -> Result<(QVec, Int)> {
    if crate::rat::is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    Ok((crate::rat::primitive(v), multiplicity(v)))
}

/// Determinant of a square integer matrix.
pub fn int_det(a: &IntMat) -> Int {
    let n = a.len();
    if n == 0 {
        return Int::one();
    }
    let s = smith(a, n);
    let d: Int = s.diag.iter().product();
    // sign from the unimodular factors
    let qu = det_q(&s.u);
    let qv = det_q(&s.v);
    let sign = qu * qv;
    if sign.is_negative() {
        -d
    } else {
        d
    }
}

fn det_q(a: &IntMat) -> Q {
    let mut m: Mat = a.iter().map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    let n = m.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let d = &f * &m[c][j];
                m[i][j] -= d;
            }
        }
    }
    det
}

/// Quotient map `ℤⁿ → ℤⁿ/ℤd` for a primitive vector `d`.
pub fn quotient_by_vector(d: &[Int]) -> Result<LatticeMap> {
    let n = d.len();
    let col: IntMat = d.iter().map(|x| vec![x.clone()]).collect();
    let s = smith(&col, 1);
    if s.diag.is_empty() || !s.diag[0].is_one() {
        return Err(Error::TorsionCokernel);
    }
    let rows: IntMat = s.u[1..].to_vec();
    let rows = hermite_rows(&rows, n);
    Ok(LatticeMap::new(n, n - 1, rows))
}

/// An integer solution of `a · m = b`, if there is one.
pub fn solve_integer(a: &IntMat, cols: usize, b: &[Int]) -> Option<Vec<Int>> {
    let s = smith(a, cols);
    let ub: Vec<Int> = s
        .u
        .iter()
        .map(|r| r.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y))
        .collect();
    let mut y = vec![Int::zero(); cols];
    for (i, c) in ub.iter().enumerate() {
        let d = s.diag.get(i).cloned().unwrap_or_else(Int::zero);
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            let (q, r) = c.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(s.v.iter().map(|r| r.iter().zip(&y).fold(Int::zero(), |acc, (x, z)| acc + x * z)).collect())
}
