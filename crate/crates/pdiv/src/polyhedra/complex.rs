//! Polyhedral complexes, refinements and linearity regions.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rat::{dot, sub, QVec, Q};

use super::Polyhedron;

/// A polyhedral complex, stored by its maximal cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyhedralComplex {
    dim: usize,
    cells: Vec<Polyhedron>,
}

impl PolyhedralComplex {
    /// Validates that every pairwise intersection is a common face.
    pub fn new(dim: usize, cells: Vec<Polyhedron>) -> Result<Self> {
        let c = Self::unchecked(dim, cells);
        for (i, a) in c.cells.iter().enumerate() {
            if a.ambient_dim() != dim {
                return Err(Error::AmbientMismatch(dim, a.ambient_dim()));
            }
            for b in &c.cells[i + 1..] {
                let x = a.intersect(b);
                if !x.is_empty() && !(a.has_face(&x) && b.has_face(&x)) {
                    return Err(Error::NotAComplex(format!("{a} and {b}")));
                }
            }
        }
        Ok(c)
    }

    /// Keeps the maximal cells without checking the intersection property.
    pub fn unchecked(dim: usize, cells: Vec<Polyhedron>) -> Self {
        let set: BTreeSet<Polyhedron> = cells.into_iter().filter(|c| !c.is_empty()).collect();
        let all: Vec<Polyhedron> = set.into_iter().collect();
        let cells = all
            .iter()
            .filter(|c| !all.iter().any(|d| d != *c && c.is_subset(d)))
            .cloned()
            .collect();
        PolyhedralComplex { dim, cells }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn maximal_cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    /// Every cell of the complex, faces included.
    pub fn all_cells(&self) -> Vec<Polyhedron> {
        let mut out: BTreeSet<Polyhedron> = BTreeSet::new();
        for c in &self.cells {
            out.extend(c.faces());
        }
        out.into_iter().collect()
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.cells.iter().any(|c| c.contains(x))
    }

    /// The smallest cell containing `x`.
    pub fn carrier(&self, x: &[Q]) -> Option<Polyhedron> {
        let mut best: Option<Polyhedron> = None;
        for c in self.cells.iter().filter(|c| c.contains(x)) {
            let tight: Vec<(QVec, Q)> =
                c.inequalities().iter().filter(|(a, b)| dot(a, x) == *b).cloned().collect();
            let f = c.restrict(&[], &tight);
            if best.as_ref().is_none_or(|b| f.affine_dim() < b.affine_dim()) {
                best = Some(f);
            }
        }
        best
    }

    /// Rays of all cells, for fans.
    pub fn rays(&self) -> Vec<QVec> {
        let set: BTreeSet<QVec> = self.cells.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        set.into_iter().collect()
    }

    pub fn is_fan(&self) -> bool {
        self.cells.iter().all(|c| c.is_cone())
    }

    /// Whether the support is all of `ℚⁿ`, tested on chamber witnesses.
    pub fn is_complete(&self) -> bool {
        let mut pieces: Vec<Polyhedron> = self.all_cells();
        pieces.push(Polyhedron::universe(self.dim));
        let ch = chamber_complex(self.dim, &pieces);
        ch.maximal_cells().iter().all(|c| {
            c.relint_point().is_some_and(|p| self.contains(&p))
        })
    }

    pub fn refines(&self, coarse: &PolyhedralComplex) -> bool {
        self.cells.iter().all(|c| coarse.cells.iter().any(|d| c.is_subset(d)))
    }
}

/// The chamber complex: cells `∩{p ∈ pieces : w ∈ p}` over the union of the pieces.
///
/// Pieces should be closed under taking faces.
pub fn chamber_complex(dim: usize, pieces: &[Polyhedron]) -> PolyhedralComplex {
    let mut closure: BTreeSet<Polyhedron> = pieces.iter().filter(|p| !p.is_empty()).cloned().collect();
    let mut frontier: Vec<Polyhedron> = closure.iter().cloned().collect();
    let base: Vec<Polyhedron> = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &base {
                let x = a.intersect(b);
                if !x.is_empty() && closure.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    let mut chambers: BTreeSet<Polyhedron> = BTreeSet::new();
    for c in &closure {
        let w = c.relint_point().expect("nonempty");
        let containing: Vec<&Polyhedron> = base.iter().filter(|p| p.contains(&w)).collect();
        chambers.insert(Polyhedron::intersect_all(dim, &containing));
    }
    PolyhedralComplex::unchecked(dim, chambers.into_iter().collect())
}

/// Coarsest common refinement of several complexes.
pub fn common_refinement(dim: usize, complexes: &[&PolyhedralComplex]) -> PolyhedralComplex {
    let pieces: Vec<Polyhedron> = complexes.iter().flat_map(|c| c.all_cells()).collect();
    chamber_complex(dim, &pieces)
}

/// Maximal domains of linearity of `x ↦ min_i (aᵢ·x + bᵢ)` on `domain`.
pub fn linearity_regions(domain: &Polyhedron, pieces: &[(QVec, Q)]) -> Vec<(Polyhedron, usize)> {
    let target = domain.affine_dim();
    let mut seen: BTreeSet<Polyhedron> = BTreeSet::new();
    let mut out = Vec::new();
    for (i, (ai, bi)) in pieces.iter().enumerate() {
        let cons: Vec<(QVec, Q)> = pieces
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (aj, bj))| (sub(aj, ai), bi - bj))
            .collect();
        let r = domain.restrict(&cons, &[]);
        if r.is_empty() || r.affine_dim() != target {
            continue;
        }
        if seen.insert(r.clone()) {
            out.push((r, i));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qv};
    use alloc::vec;

    fn quadrants() -> PolyhedralComplex {
        let cells = vec![
            Polyhedron::cone(2, &[qv(&[1, 0]), qv(&[0, 1])]),
            Polyhedron::cone(2, &[qv(&[0, 1]), qv(&[-1, 0])]),
            Polyhedron::cone(2, &[qv(&[-1, 0]), qv(&[0, -1])]),
            Polyhedron::cone(2, &[qv(&[0, -1]), qv(&[1, 0])]),
        ];
        PolyhedralComplex::new(2, cells).unwrap()
    }

    #[test]
    fn quadrant_fan_is_complete() {
        let f = quadrants();
        assert!(f.is_fan());
        assert!(f.is_complete());
        assert_eq!(f.rays().len(), 4);
        assert_eq!(f.all_cells().len(), 9);
    }

    #[test]
    fn overlapping_cells_rejected() {
        let cells = vec![
            Polyhedron::cone(2, &[qv(&[1, 0]), qv(&[0, 1])]),
            Polyhedron::cone(2, &[qv(&[1, 1]), qv(&[-1, 0])]),
        ];
        assert!(PolyhedralComplex::new(2, cells).is_err());
    }

    #[test]
    fn refinement_with_diagonal() {
        let diag = PolyhedralComplex::new(
            2,
            vec![
                Polyhedron::from_hrep(2, &[(qv(&[1, -1]), q(0))], &[]),
                Polyhedron::from_hrep(2, &[(qv(&[-1, 1]), q(0))], &[]),
            ],
        )
        .unwrap();
        let r = common_refinement(2, &[&quadrants(), &diag]);
        assert_eq!(r.maximal_cells().len(), 6);
        assert!(r.refines(&quadrants()));
        assert!(r.refines(&diag));
    }

    #[test]
    fn regions_of_abs() {
        let dom = Polyhedron::universe(1);
        let regs = linearity_regions(&dom, &[(qv(&[1]), q(0)), (qv(&[-1]), q(0)), (qv(&[0]), q(5))]);
        assert_eq!(regs.len(), 2);
    }

    #[test]
    fn carrier_is_smallest() {
        let f = quadrants();
        let c = f.carrier(&qv(&[0, 3])).unwrap();
        assert_eq!(c, Polyhedron::cone(2, &[qv(&[0, 1])]));
    }
}
