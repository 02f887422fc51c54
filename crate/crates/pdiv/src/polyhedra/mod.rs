//! Exact polyhedra and cones with synchronized V- and H-representations.

mod complex;
mod dd;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

pub use complex::{
    chamber_complex, common_refinement, linearity_regions, PolyhedralComplex,
};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rat::{add, dot, fmt_q, fmt_vec, is_zero_vec, primitive, scale, sub, zeros, Int, QVec, Q};

/// Lower bound of a linear functional on a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Empty,
    MinusInfinity,
    Finite(Q),
}

/// A convex polyhedron in `ℚⁿ`.
///
/// Inequalities are `a·x ≥ b`, equations `a·x = b`. Both representations are
/// irredundant and canonical, so derived equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyhedron {
    dim: usize,
    empty: bool,
    vertices: Vec<QVec>,
    rays: Vec<QVec>,
    lineality: Vec<QVec>,
    ineqs: Vec<(QVec, Q)>,
    eqs: Vec<(QVec, Q)>,
}

impl Polyhedron {
    pub fn empty(dim: usize) -> Self {
        Polyhedron {
            dim,
            empty: true,
            vertices: vec![],
            rays: vec![],
            lineality: vec![],
            ineqs: vec![],
            eqs: vec![],
        }
    }

    pub fn universe(dim: usize) -> Self {
        Self::from_hrep(dim, &[], &[])
    }

    pub fn point(v: &[Q]) -> Self {
        Self::from_vrep(v.len(), &[v.to_vec()], &[], &[])
    }

    pub fn origin(dim: usize) -> Self {
        Self::point(&zeros(dim))
    }

    /// The cone `pos(rays)`.
    pub fn cone(dim: usize, rays: &[QVec]) -> Self {
        Self::from_vrep(dim, &[zeros(dim)], rays, &[])
    }

    /// Convex hull of points plus the cone over `rays`.
    pub fn hull(dim: usize, vertices: &[QVec], rays: &[QVec]) -> Self {
        Self::from_vrep(dim, vertices, rays, &[])
    }

    pub fn from_vrep(dim: usize, vertices: &[QVec], rays: &[QVec], lineality: &[QVec]) -> Self {
        if vertices.is_empty() {
            return Self::empty(dim);
        }
        let (ineqs, eqs) = v_to_h(dim, vertices, rays, lineality);
        let (v, r, l) = h_to_v(dim, &ineqs, &eqs).expect("nonempty by construction");
        Self::canonical(dim, v, r, l, ineqs, eqs)
    }

    pub fn from_hrep(dim: usize, ineqs: &[(QVec, Q)], eqs: &[(QVec, Q)]) -> Self {
        let Some((v, r, l)) = h_to_v(dim, ineqs, eqs) else {
            return Self::empty(dim);
        };
        let (hi, he) = v_to_h(dim, &v, &r, &l);
        Self::canonical(dim, v, r, l, hi, he)
    }

    fn canonical(
        dim: usize,
        vertices: Vec<QVec>,
        rays: Vec<QVec>,
        lineality: Vec<QVec>,
        ineqs: Vec<(QVec, Q)>,
        eqs: Vec<(QVec, Q)>,
    ) -> Self {
        let (lin, lpiv) = if lineality.is_empty() { (vec![], vec![]) } else { linalg::rref(&lineality) };
        let lin: Vec<QVec> = lin.iter().map(|l| primitive(l)).collect();
        let reduce = |x: &QVec| -> QVec {
            let mut x = x.clone();
            for (row, &p) in lin.iter().zip(&lpiv) {
                if !x[p].is_zero() {
                    let c = &x[p] / &row[p];
                    for (a, b) in x.iter_mut().zip(row) {
                        *a -= &c * b;
                    }
                }
            }
            x
        };
        let verts: BTreeSet<QVec> = vertices.iter().map(reduce).collect();
        let rays: BTreeSet<QVec> =
            rays.iter().map(|r| primitive(&reduce(r))).filter(|r| !is_zero_vec(r)).collect();
        let eq_aug: Vec<QVec> = eqs
            .iter()
            .map(|(a, b)| {
                let mut r = a.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let (erows, epiv) = if eq_aug.is_empty() { (vec![], vec![]) } else { linalg::rref(&eq_aug) };
        let erows: Vec<QVec> = erows.iter().map(|r| primitive(r)).collect();
        let mut hs: BTreeSet<(QVec, Q)> = BTreeSet::new();
        for (a, b) in ineqs {
            let mut row = a.clone();
            row.push(b.clone());
            for (e, &p) in erows.iter().zip(&epiv) {
                if !row[p].is_zero() {
                    let c = &row[p] / &e[p];
                    for (x, y) in row.iter_mut().zip(e) {
                        *x -= &c * y;
                    }
                }
            }
            if is_zero_vec(&row[..dim]) {
                continue;
            }
            let row = primitive(&row);
            let b = row[dim].clone();
            hs.insert((row[..dim].to_vec(), b));
        }
        Polyhedron {
            dim,
            empty: false,
            vertices: verts.into_iter().collect(),
            rays: rays.into_iter().collect(),
            lineality: lin,
            ineqs: hs.into_iter().collect(),
            eqs: erows.into_iter().map(|r| (r[..dim].to_vec(), r[dim].clone())).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }
    pub fn is_empty(&self) -> bool {
        self.empty
    }
    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }
    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }
    pub fn lineality(&self) -> &[QVec] {
        &self.lineality
    }
    pub fn inequalities(&self) -> &[(QVec, Q)] {
        &self.ineqs
    }
    pub fn equations(&self) -> &[(QVec, Q)] {
        &self.eqs
    }

    /// Affine dimension; `None` for the empty set.
    pub fn affine_dim(&self) -> Option<usize> {
        if self.empty {
            None
        } else {
            Some(self.dim - self.eqs.len())
        }
    }

    pub fn is_full_dim(&self) -> bool {
        !self.empty && self.eqs.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        !self.empty && self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Whether this polyhedron is a cone with apex at the origin.
    pub fn is_cone(&self) -> bool {
        !self.empty && self.vertices.len() == 1 && is_zero_vec(&self.vertices[0])
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        !self.empty
            && self.ineqs.iter().all(|(a, b)| dot(a, x) >= *b)
            && self.eqs.iter().all(|(a, b)| dot(a, x) == *b)
    }

    /// Membership of a direction in the tailcone.
    pub fn tail_contains(&self, r: &[Q]) -> bool {
        !self.empty
            && self.ineqs.iter().all(|(a, _)| !dot(a, r).is_negative())
            && self.eqs.iter().all(|(a, _)| dot(a, r).is_zero())
    }

    pub fn is_subset(&self, other: &Polyhedron) -> bool {
        if self.empty {
            return true;
        }
        self.vertices.iter().all(|v| other.contains(v))
            && self.rays.iter().all(|r| other.tail_contains(r))
            && self.lineality.iter().all(|l| other.tail_contains(l) && other.tail_contains(&neg(l)))
    }

    pub fn tail(&self) -> Polyhedron {
        assert!(!self.empty, "tailcone of the empty polyhedron");
        Self::from_vrep(self.dim, &[zeros(self.dim)], &self.rays, &self.lineality)
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.dim, other.dim);
        if self.empty || other.empty {
            return Self::empty(self.dim);
        }
        let mut verts = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                verts.push(add(a, b));
            }
        }
        let mut rays = self.rays.clone();
        rays.extend(other.rays.iter().cloned());
        let mut lin = self.lineality.clone();
        lin.extend(other.lineality.iter().cloned());
        Self::from_vrep(self.dim, &verts, &rays, &lin)
    }

    pub fn checked_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if self.dim != other.dim {
            return Err(Error::AmbientMismatch(self.dim, other.dim));
        }
        Ok(self.minkowski_sum(other))
    }

    pub fn intersect(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.dim, other.dim);
        if self.empty || other.empty {
            return Self::empty(self.dim);
        }
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().cloned());
        let mut eqs = self.eqs.clone();
        eqs.extend(other.eqs.iter().cloned());
        Self::from_hrep(self.dim, &ineqs, &eqs)
    }

    pub fn intersect_all(dim: usize, ps: &[&Polyhedron]) -> Polyhedron {
        if ps.iter().any(|p| p.empty) {
            return Self::empty(dim);
        }
        let mut ineqs = Vec::new();
        let mut eqs = Vec::new();
        for p in ps {
            ineqs.extend(p.ineqs.iter().cloned());
            eqs.extend(p.eqs.iter().cloned());
        }
        Self::from_hrep(dim, &ineqs, &eqs)
    }

    /// Adds extra constraints.
    pub fn restrict(&self, ineqs: &[(QVec, Q)], eqs: &[(QVec, Q)]) -> Polyhedron {
        if self.empty {
            return self.clone();
        }
        let mut i = self.ineqs.clone();
        i.extend(ineqs.iter().cloned());
        let mut e = self.eqs.clone();
        e.extend(eqs.iter().cloned());
        Self::from_hrep(self.dim, &i, &e)
    }

    pub fn translate(&self, t: &[Q]) -> Polyhedron {
        if self.empty {
            return self.clone();
        }
        let verts: Vec<QVec> = self.vertices.iter().map(|v| add(v, t)).collect();
        let ineqs = self.ineqs.iter().map(|(a, b)| (a.clone(), b + dot(a, t))).collect();
        let eqs = self.eqs.iter().map(|(a, b)| (a.clone(), b + dot(a, t))).collect();
        Self::canonical(self.dim, verts, self.rays.clone(), self.lineality.clone(), ineqs, eqs)
    }

    /// `λ·P`; `λ = 0` gives the tailcone.
    pub fn scale(&self, lambda: &Q) -> Polyhedron {
        assert!(!lambda.is_negative());
        if self.empty {
            return self.clone();
        }
        if lambda.is_zero() {
            return self.tail();
        }
        let verts: Vec<QVec> = self.vertices.iter().map(|v| scale(lambda, v)).collect();
        let ineqs = self.ineqs.iter().map(|(a, b)| (a.clone(), b * lambda)).collect();
        let eqs = self.eqs.iter().map(|(a, b)| (a.clone(), b * lambda)).collect();
        Self::canonical(self.dim, verts, self.rays.clone(), self.lineality.clone(), ineqs, eqs)
    }

    /// Image under `x ↦ A x + b`, `A` given by rows.
    pub fn affine_image(&self, a: &Mat, b: &[Q]) -> Polyhedron {
        let m = b.len();
        if self.empty {
            return Self::empty(m);
        }
        let verts: Vec<QVec> = self.vertices.iter().map(|v| add(&linalg::mat_vec(a, v), b)).collect();
        let rays: Vec<QVec> = self.rays.iter().map(|r| linalg::mat_vec(a, r)).collect();
        let lin: Vec<QVec> = self.lineality.iter().map(|l| linalg::mat_vec(a, l)).collect();
        Self::from_vrep(m, &verts, &rays, &lin)
    }

    pub fn linear_image(&self, a: &Mat, target_dim: usize) -> Polyhedron {
        self.affine_image(a, &zeros(target_dim))
    }

    /// `{x ∈ ℚ^src : A x + b ∈ P}`.
    pub fn preimage(&self, a: &Mat, b: &[Q], src: usize) -> Polyhedron {
        if self.empty {
            return Self::empty(src);
        }
        let pull = |(f, c): &(QVec, Q)| -> (QVec, Q) {
            let row: QVec = (0..src).map(|j| {
                let mut s = Q::zero();
                for (i, fi) in f.iter().enumerate() {
                    if !fi.is_zero() {
                        s += fi * &a[i][j];
                    }
                }
                s
            }).collect();
            (row, c - dot(f, b))
        };
        let ineqs: Vec<_> = self.ineqs.iter().map(pull).collect();
        let eqs: Vec<_> = self.eqs.iter().map(pull).collect();
        Self::from_hrep(src, &ineqs, &eqs)
    }

    /// Cartesian product `P × Q`.
    pub fn product(&self, other: &Polyhedron) -> Polyhedron {
        let n = self.dim + other.dim;
        if self.empty || other.empty {
            return Self::empty(n);
        }
        let mut verts = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                verts.push(crate::rat::concat(a, b));
            }
        }
        let za = zeros(self.dim);
        let zb = zeros(other.dim);
        let mut rays: Vec<QVec> = self.rays.iter().map(|r| crate::rat::concat(r, &zb)).collect();
        rays.extend(other.rays.iter().map(|r| crate::rat::concat(&za, r)));
        let mut lin: Vec<QVec> = self.lineality.iter().map(|r| crate::rat::concat(r, &zb)).collect();
        lin.extend(other.lineality.iter().map(|r| crate::rat::concat(&za, r)));
        Self::from_vrep(n, &verts, &rays, &lin)
    }

    pub fn min_pairing(&self, u: &[Q]) -> Bound {
        if self.empty {
            return Bound::Empty;
        }
        if self.rays.iter().any(|r| dot(r, u).is_negative())
            || self.lineality.iter().any(|l| !dot(l, u).is_zero())
        {
            return Bound::MinusInfinity;
        }
        Bound::Finite(self.vertices.iter().map(|v| dot(v, u)).min().expect("vertex"))
    }

    /// The face on which `u` attains its minimum.
    pub fn face(&self, u: &[Q]) -> Polyhedron {
        match self.min_pairing(u) {
            Bound::Finite(m) => {
                let verts: Vec<QVec> = self.vertices.iter().filter(|v| dot(v, u) == m).cloned().collect();
                let rays: Vec<QVec> = self.rays.iter().filter(|r| dot(r, u).is_zero()).cloned().collect();
                Self::from_vrep(self.dim, &verts, &rays, &self.lineality)
            }
            _ => Self::empty(self.dim),
        }
    }

    /// A point in the relative interior.
    pub fn relint_point(&self) -> Option<QVec> {
        if self.empty {
            return None;
        }
        let k = Q::from_integer(Int::from(self.vertices.len() as u64));
        let mut p = zeros(self.dim);
        for v in &self.vertices {
            p = add(&p, v);
        }
        p = scale(&(Q::one() / k), &p);
        for r in &self.rays {
            p = add(&p, r);
        }
        Some(p)
    }

    /// Indices of inequalities tight on the whole polyhedron.
    fn tight_set(&self, verts: &[usize], rays: &[usize]) -> Vec<usize> {
        (0..self.ineqs.len())
            .filter(|&i| {
                let (a, b) = &self.ineqs[i];
                verts.iter().all(|&v| dot(a, &self.vertices[v]) == *b)
                    && rays.iter().all(|&r| dot(a, &self.rays[r]).is_zero())
            })
            .collect()
    }

    /// All nonempty faces, including the polyhedron itself.
    pub fn faces(&self) -> Vec<Polyhedron> {
        if self.empty {
            return vec![];
        }
        type Key = (Vec<usize>, Vec<usize>);
        let all: Key = ((0..self.vertices.len()).collect(), (0..self.rays.len()).collect());
        let mut seen: BTreeMap<Key, ()> = BTreeMap::new();
        let mut stack = vec![all.clone()];
        seen.insert(all, ());
        while let Some((vs, rs)) = stack.pop() {
            let tight = self.tight_set(&vs, &rs);
            for i in 0..self.ineqs.len() {
                if tight.contains(&i) {
                    continue;
                }
                let (a, b) = &self.ineqs[i];
                let nv: Vec<usize> = vs.iter().copied().filter(|&v| dot(a, &self.vertices[v]) == *b).collect();
                if nv.is_empty() {
                    continue;
                }
                let nr: Vec<usize> = rs.iter().copied().filter(|&r| dot(a, &self.rays[r]).is_zero()).collect();
                // close under the tight set so each face has one key
                let t2 = self.tight_set(&nv, &nr);
                let cv: Vec<usize> = (0..self.vertices.len())
                    .filter(|&v| t2.iter().all(|&j| dot(&self.ineqs[j].0, &self.vertices[v]) == self.ineqs[j].1))
                    .collect();
                let cr: Vec<usize> = (0..self.rays.len())
                    .filter(|&r| t2.iter().all(|&j| dot(&self.ineqs[j].0, &self.rays[r]).is_zero()))
                    .collect();
                let key = (cv, cr);
                if !seen.contains_key(&key) {
                    seen.insert(key.clone(), ());
                    stack.push(key);
                }
            }
        }
        seen.keys()
            .map(|(vs, rs)| {
                let v: Vec<QVec> = vs.iter().map(|&i| self.vertices[i].clone()).collect();
                let r: Vec<QVec> = rs.iter().map(|&i| self.rays[i].clone()).collect();
                Self::from_vrep(self.dim, &v, &r, &self.lineality)
            })
            .collect()
    }

    /// Whether `f` is a face of `self`.
    pub fn has_face(&self, f: &Polyhedron) -> bool {
        if f.empty {
            return true;
        }
        if !f.is_subset(self) {
            return false;
        }
        let Some(p) = f.relint_point() else { return true };
        let tight: Vec<(QVec, Q)> = self.ineqs.iter().filter(|(a, b)| dot(a, &p) == *b).cloned().collect();
        let face = Self::from_hrep(self.dim, &self.ineqs, &[self.eqs.clone(), tight].concat());
        face == *f
    }

    /// Bounding box of the vertices, enlarged by `pad` units.
    fn integer_box(&self) -> Vec<(Int, Int)> {
        (0..self.dim)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| crate::rat::floor(&v[i])).min().unwrap();
                let hi = self.vertices.iter().map(|v| crate::rat::ceil(&v[i])).max().unwrap();
                (lo, hi)
            })
            .collect()
    }

    /// Lattice points of a bounded polyhedron.
    pub fn lattice_points(&self) -> Vec<QVec> {
        assert!(self.empty || self.is_bounded(), "lattice points of an unbounded polyhedron");
        if self.empty {
            return vec![];
        }
        let bx = self.integer_box();
        let mut out = Vec::new();
        let mut cur: Vec<Int> = bx.iter().map(|(lo, _)| lo.clone()).collect();
        if self.dim == 0 {
            return vec![vec![]];
        }
        loop {
            let p: QVec = cur.iter().map(|x| Q::from_integer(x.clone())).collect();
            if self.contains(&p) {
                out.push(p);
            }
            let mut i = 0;
            loop {
                if i == self.dim {
                    return out;
                }
                if cur[i] < bx[i].1 {
                    cur[i] += 1;
                    break;
                }
                cur[i] = bx[i].0.clone();
                i += 1;
            }
        }
    }

    /// Some lattice point, if one exists.
    pub fn find_lattice_point(&self) -> Option<QVec> {
        if self.empty {
            return None;
        }
        if self.is_bounded() {
            return self.lattice_points().into_iter().next();
        }
        // lattice points exist iff they exist in conv(V) + Σ [0,1]·g over integral generators
        let mut gens: Vec<QVec> = self.rays.clone();
        gens.extend(self.lineality.iter().cloned());
        let mut pts = self.vertices.clone();
        for g in &gens {
            let mut next = pts.clone();
            next.extend(pts.iter().map(|p| add(p, g)));
            pts = next;
        }
        let q = Self::hull(self.dim, &pts, &[]);
        q.lattice_points().into_iter().find(|p| self.contains(p))
    }

    /// `P ∩ {x : ⟨r,x⟩ = h}`.
    pub fn cross_section(&self, r: &[Q], h: &Q) -> Polyhedron {
        self.restrict(&[], &[(r.to_vec(), h.clone())])
    }

    /// Image under `retraction` of `P ∩ f⁻¹(point)`.
    pub fn fiber_slice(&self, f: &Mat, point: &[Q], retraction: &Mat, target_dim: usize) -> Polyhedron {
        let eqs: Vec<(QVec, Q)> = f.iter().zip(point).map(|(row, c)| (row.clone(), c.clone())).collect();
        let slice = self.restrict(&[], &eqs);
        slice.linear_image(retraction, target_dim)
    }
}

fn neg(v: &[Q]) -> QVec {
    v.iter().map(|x| -x).collect()
}

/// H-representation of `conv(V) + pos(R) + span(L)`.
fn v_to_h(dim: usize, vertices: &[QVec], rays: &[QVec], lineality: &[QVec]) -> (Vec<(QVec, Q)>, Vec<(QVec, Q)>) {
    let mut gens: Vec<QVec> = Vec::new();
    for v in vertices {
        let mut g = vec![Q::one()];
        g.extend(v.iter().cloned());
        gens.push(g);
    }
    for r in rays {
        let mut g = vec![Q::zero()];
        g.extend(r.iter().cloned());
        gens.push(g);
    }
    let lin: Vec<QVec> = lineality
        .iter()
        .map(|l| {
            let mut g = vec![Q::zero()];
            g.extend(l.iter().cloned());
            g
        })
        .collect();
    let out = dd::cone_generators(dim + 1, &gens, &lin);
    let mut ineqs = Vec::new();
    for y in out.rays {
        if is_zero_vec(&y[1..]) {
            continue;
        }
        ineqs.push((y[1..].to_vec(), -y[0].clone()));
    }
    let eqs = out.lineality.into_iter().map(|y| (y[1..].to_vec(), -y[0].clone())).collect();
    (ineqs, eqs)
}

type VRep = (Vec<QVec>, Vec<QVec>, Vec<QVec>);

fn h_to_v(dim: usize, ineqs: &[(QVec, Q)], eqs: &[(QVec, Q)]) -> Option<VRep> {
    let mut hi: Vec<QVec> = Vec::with_capacity(ineqs.len() + 1);
    let mut t = vec![Q::one()];
    t.extend(zeros(dim));
    hi.push(t);
    for (a, b) in ineqs {
        let mut g = vec![-b.clone()];
        g.extend(a.iter().cloned());
        hi.push(g);
    }
    let he: Vec<QVec> = eqs
        .iter()
        .map(|(a, b)| {
            let mut g = vec![-b.clone()];
            g.extend(a.iter().cloned());
            g
        })
        .collect();
    let out = dd::cone_generators(dim + 1, &hi, &he);
    let mut verts = Vec::new();
    let mut rays = Vec::new();
    for y in out.rays {
        if y[0].is_positive() {
            verts.push(scale(&(Q::one() / &y[0]), &y[1..]));
        } else {
            rays.push(y[1..].to_vec());
        }
    }
    if verts.is_empty() {
        return None;
    }
    let lin = out.lineality.into_iter().map(|y| y[1..].to_vec()).collect();
    Some((verts, rays, lin))
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return write!(f, "empty");
        }
        let vs: Vec<String> = self.vertices.iter().map(|v| fmt_vec(v)).collect();
        write!(f, "conv{{{}}}", vs.join(", "))?;
        if !self.rays.is_empty() {
            let rs: Vec<String> = self.rays.iter().map(|v| fmt_vec(v)).collect();
            write!(f, " + pos{{{}}}", rs.join(", "))?;
        }
        if !self.lineality.is_empty() {
            let ls: Vec<String> = self.lineality.iter().map(|v| fmt_vec(v)).collect();
            write!(f, " + span{{{}}}", ls.join(", "))?;
        }
        Ok(())
    }
}

/// Prints an inequality system, mostly for diagnostics.
pub fn fmt_hrep(p: &Polyhedron) -> String {
    let mut s = String::new();
    for (a, b) in &p.ineqs {
        s.push_str(&alloc::format!("{}·x >= {}; ", fmt_vec(a), fmt_q(b)));
    }
    for (a, b) in &p.eqs {
        s.push_str(&alloc::format!("{}·x = {}; ", fmt_vec(a), fmt_q(b)));
    }
    s
}

/// A polyhedral cone with apex at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone(Polyhedron);

impl Cone {
    pub fn new(dim: usize, rays: &[QVec]) -> Self {
        Cone(Polyhedron::cone(dim, rays))
    }

    pub fn with_lineality(dim: usize, rays: &[QVec], lineality: &[QVec]) -> Self {
        Cone(Polyhedron::from_vrep(dim, &[zeros(dim)], rays, lineality))
    }

    pub fn zero(dim: usize) -> Self {
        Cone(Polyhedron::origin(dim))
    }

    pub fn full(dim: usize) -> Self {
        Cone(Polyhedron::universe(dim))
    }

    /// `{x : ⟨a,x⟩ ≥ 0}` for all given functionals.
    pub fn from_inequalities(dim: usize, normals: &[QVec]) -> Self {
        let ineqs: Vec<(QVec, Q)> = normals.iter().map(|a| (a.clone(), Q::zero())).collect();
        Cone(Polyhedron::from_hrep(dim, &ineqs, &[]))
    }

    pub fn from_poly(p: Polyhedron) -> Result<Self> {
        if p.is_cone() {
            Ok(Cone(p))
        } else {
            Err(Error::Invalid("polyhedron is not a cone".into()))
        }
    }

    pub fn poly(&self) -> &Polyhedron {
        &self.0
    }

    pub fn into_poly(self) -> Polyhedron {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn rays(&self) -> &[QVec] {
        &self.0.rays
    }

    pub fn lineality(&self) -> &[QVec] {
        &self.0.lineality
    }

    pub fn is_pointed(&self) -> bool {
        self.0.is_pointed()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.0.contains(x)
    }

    pub fn dual(&self) -> Cone {
        let ineqs: Vec<(QVec, Q)> = self.0.rays.iter().map(|r| (r.clone(), Q::zero())).collect();
        let eqs: Vec<(QVec, Q)> = self.0.lineality.iter().map(|l| (l.clone(), Q::zero())).collect();
        Cone(Polyhedron::from_hrep(self.0.dim, &ineqs, &eqs))
    }

    /// Generators including both signs of the lineality directions.
    pub fn all_generators(&self) -> Vec<QVec> {
        let mut g = self.0.rays.clone();
        for l in &self.0.lineality {
            g.push(l.clone());
            g.push(neg(l));
        }
        g
    }

    /// A lattice point in the relative interior.
    pub fn interior_lattice_point(&self) -> QVec {
        let mut p = zeros(self.0.dim);
        for r in &self.0.rays {
            p = add(&p, r);
        }
        p
    }

    pub fn faces(&self) -> Vec<Cone> {
        self.0.faces().into_iter().map(Cone).collect()
    }
}

/// Positive hull of a polyhedron: the cone generated by all of its points.
pub fn positive_hull(p: &Polyhedron) -> Cone {
    assert!(!p.is_empty());
    let mut rays = p.vertices.clone();
    rays.extend(p.rays.iter().cloned());
    Cone::with_lineality(p.dim, &rays, &p.lineality)
}

/// `Σ_i λ_i P_i` with nonnegative weights.
pub fn weighted_sum(dim: usize, terms: &[(Q, &Polyhedron)]) -> Polyhedron {
    let mut acc = Polyhedron::origin(dim);
    for (l, p) in terms {
        acc = acc.minkowski_sum(&p.scale(l));
    }
    acc
}

/// Difference of two vectors, exposed for callers building generators.
pub fn direction(a: &[Q], b: &[Q]) -> QVec {
    sub(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qf, qv};

    #[test]
    fn dual_of_quadric_cone() {
        let d = Cone::new(2, &[qv(&[1, 1]), qv(&[-1, 1])]);
        assert_eq!(d.dual(), d);
        assert_eq!(Cone::full(2).dual(), Cone::zero(2));
        assert_eq!(Cone::zero(2).dual(), Cone::full(2));
    }

    #[test]
    fn hull_segment_and_point() {
        let s = Polyhedron::hull(2, &[qv(&[0, 0]), qv(&[0, 1]), vec![q(0), qf(1, 2)]], &[]);
        assert_eq!(s.vertices(), &[qv(&[0, 0]), qv(&[0, 1])]);
        assert_eq!(s.affine_dim(), Some(1));
        let p = Polyhedron::point(&[qf(1, 2), q(3)]);
        assert_eq!(p.affine_dim(), Some(0));
        assert!(p.contains(&[qf(1, 2), q(3)]));
    }

    #[test]
    fn minkowski_interval() {
        let a = Polyhedron::point(&[qf(-1, 2)]);
        let b = Polyhedron::hull(1, &[qv(&[0]), qv(&[1])], &[]);
        let s = a.minkowski_sum(&b);
        assert_eq!(s, Polyhedron::hull(1, &[vec![qf(-1, 2)], vec![qf(1, 2)]], &[]));
        assert_eq!(s.minkowski_sum(&Polyhedron::origin(1)), s);
        assert!(s.minkowski_sum(&Polyhedron::empty(1)).is_empty());
    }

    #[test]
    fn cross_section_of_quadric() {
        let d = Polyhedron::cone(2, &[qv(&[1, 1]), qv(&[-1, 1])]);
        let s = d.cross_section(&qv(&[0, 2]), &q(1));
        assert_eq!(s, Polyhedron::hull(2, &[vec![qf(-1, 2), qf(1, 2)], vec![qf(1, 2), qf(1, 2)]], &[]));
        let sigma = d.cross_section(&qv(&[0, 1]), &q(0));
        assert_eq!(sigma, Polyhedron::origin(2));
    }

    #[test]
    fn unbounded_with_lineality() {
        let p = Polyhedron::from_hrep(2, &[(qv(&[1, 0]), q(1))], &[]);
        assert_eq!(p.lineality(), &[qv(&[0, 1])]);
        assert_eq!(p.rays(), &[qv(&[1, 0])]);
        assert_eq!(p.vertices(), &[qv(&[1, 0])]);
        assert_eq!(p.min_pairing(&qv(&[1, 0])), Bound::Finite(q(1)));
        assert_eq!(p.min_pairing(&qv(&[1, 1])), Bound::MinusInfinity);
    }

    #[test]
    fn faces_of_square() {
        let s = Polyhedron::hull(2, &[qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])], &[]);
        assert_eq!(s.faces().len(), 9);
        let e = Polyhedron::hull(2, &[qv(&[0, 0]), qv(&[1, 0])], &[]);
        assert!(s.has_face(&e));
        let d = Polyhedron::hull(2, &[qv(&[0, 0]), qv(&[1, 1])], &[]);
        assert!(!s.has_face(&d));
        assert_eq!(s.lattice_points().len(), 4);
    }

    #[test]
    fn faces_of_cone_with_vertex() {
        let p = Polyhedron::hull(2, &[qv(&[1, 0]), qv(&[0, 1])], &[qv(&[1, 0]), qv(&[0, 1])]);
        // two vertices, two unbounded edges, one bounded edge, the whole
        assert_eq!(p.faces().len(), 6);
    }

    #[test]
    fn preimage_and_image() {
        let seg = Polyhedron::hull(2, &[qv(&[0, 0]), qv(&[1, 1])], &[]);
        let pi: Mat = vec![qv(&[0, 1])];
        assert_eq!(seg.linear_image(&pi, 1), Polyhedron::hull(1, &[qv(&[0]), qv(&[1])], &[]));
        let pre = Polyhedron::hull(1, &[qv(&[0]), qv(&[1])], &[]).preimage(&pi, &[q(0)], 2);
        assert_eq!(pre.lineality(), &[qv(&[1, 0])]);
    }

    #[test]
    fn lattice_point_in_unbounded_strip() {
        let p = Polyhedron::from_hrep(2, &[(qv(&[2, -2]), q(1)), (qv(&[-2, 2]), q(-1))], &[]);
        assert!(p.find_lattice_point().is_none() || p.is_empty());
        let p = Polyhedron::from_hrep(2, &[(qv(&[1, 0]), qf(1, 3)), (qv(&[-1, 0]), qf(-2, 3))], &[]);
        assert!(p.find_lattice_point().is_none());
        let p = Polyhedron::hull(2, &[vec![qf(1, 2), q(0)]], &[qv(&[1, 1])]);
        assert!(p.find_lattice_point().is_none());
        let p = Polyhedron::hull(2, &[vec![qf(1, 2), q(0)]], &[qv(&[1, 0])]);
        assert!(p.find_lattice_point().is_some());
    }
}
