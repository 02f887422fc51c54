//! The p-divisor of the Cox ring of `X(𝒮)` when `Cl(Y) = ℤ`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{multiplicity, quotient_by_vector, smith_split_with, LatticeMap, Split, SplitOptions};
use crate::linalg::{self, Mat};
use crate::pdivisor::{PolyhedralDivisor, ProperReport};
use crate::polyhedra::{Cone, Polyhedron};
use crate::rat::{concat, scale, zeros, Int, QVec, Q};
use crate::tvariety::DivisorialFan;
use crate::upgrade::{correct_pic_z, upgrade_coefficients, InvariantPDivisorOnFan};

/// Hypotheses on `X` that the caller vouches for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CoxHypotheses {
    pub complete: bool,
    pub q_factorial: bool,
    pub cl_torsion_free: bool,
}

/// `0 → Cl(X)* → ℤ^(𝒱 ∪ ℛ) → ℤ^𝒫/ℤ ⊕ N → 0` with a chosen splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxData {
    pub fan: DivisorialFan,
    /// `𝒫`.
    pub primes: Vec<String>,
    /// `𝒱`, with `μ(v)`.
    pub vertices: Vec<(String, QVec, Int)>,
    /// `ℛ`.
    pub rays: Vec<QVec>,
    /// `ℤ^𝒫 → ℤ^𝒫/ℤ`.
    pub quotient: LatticeMap,
    pub pi: LatticeMap,
    /// `section` is `t*`, `cosection` is `s`, `kernel` is `Cl(X)* ↪ ℤ^(𝒱 ∪ ℛ)`.
    pub split: Split,
    pub hypotheses: CoxHypotheses,
}

impl CoxData {
    /// Rank of `Cl(X)`.
    pub fn class_rank(&self) -> usize {
        self.split.kernel.source
    }

    /// `|𝒱| + |ℛ|`.
    pub fn generators(&self) -> usize {
        self.vertices.len() + self.rays.len()
    }

    fn column(&self, i: usize) -> QVec {
        let mut e = zeros(self.generators());
        e[i] = Q::from_integer(1.into());
        e
    }

    /// `s(e_i)`.
    pub fn s_of(&self, i: usize) -> QVec {
        self.split.cosection.apply(&self.column(i))
    }
}

/// Assemble `π` and split it. `primes` must contain every prime with a nontrivial slice.
pub fn cox_sequence(
    fan: &DivisorialFan,
    primes: &[String],
    hypotheses: CoxHypotheses,
    opts: &SplitOptions,
) -> Result<CoxData> {
    if primes.is_empty() {
        return Err(Error::Invalid("empty prime set".into()));
    }
    let base = fan.base();
    let primes: Vec<String> = primes.iter().map(|p| base.canonical_label(p)).collect::<Result<_>>()?;
    for p in fan.marked_primes() {
        let nontrivial = fan.slice(&p) != *fan.tailfan();
        if nontrivial && !primes.contains(&p) {
            return Err(Error::MarksMissingSupport(p));
        }
    }
    let (rays, _) = fan.invariant_prime_divisors()?;
    let mut vertices = Vec::new();
    for p in &primes {
        for v in fan.vertices(p) {
            let mu = multiplicity(&v);
            vertices.push((p.clone(), v, mu));
        }
    }
    if vertices.is_empty() {
        return Err(Error::Invalid("no vertices over the chosen primes".into()));
    }
    let degs: Vec<Int> = primes
        .iter()
        .map(|p| {
            let d = base.prime_degree(p)?;
            if !d.is_integer() {
                return Err(Error::Invalid(format!("degree of {p} is not integral")));
            }
            Ok(d.to_integer())
        })
        .collect::<Result<_>>()?;
    let quotient = quotient_by_vector(&degs)?;
    let n = fan.rank();
    let k = primes.len() - 1;
    let cols = vertices.len() + rays.len();
    let mut matrix = vec_of_zeros(k + n, cols);
    for (j, (p, v, mu)) in vertices.iter().enumerate() {
        let i = primes.iter().position(|q| q == p).expect("vertex prime is listed");
        for r in 0..k {
            matrix[r][j] = &quotient.matrix[r][i] * mu;
        }
        let mv = scale(&Q::from_integer(mu.clone()), v);
        for r in 0..n {
            matrix[k + r][j] = mv[r].to_integer();
        }
    }
    for (j, rho) in rays.iter().enumerate() {
        for r in 0..n {
            matrix[k + r][vertices.len() + j] = rho[r].to_integer();
        }
    }
    let pi = LatticeMap::new(cols, k + n, matrix);
    let split = smith_split_with(&pi, opts).map_err(|e| match e {
        Error::NotSurjective => Error::TorsionCokernel,
        e => e,
    })?;
    Ok(CoxData { fan: fan.clone(), primes, vertices, rays, quotient, pi, split, hypotheses })
}

fn vec_of_zeros(r: usize, c: usize) -> Vec<Vec<Int>> {
    (0..r).map(|_| (0..c).map(|_| Int::from(0)).collect()).collect()
}

/// `𝒟^cox = Σ s(e(P,v)) ⊗ D_{P,v} + Σ s(e(ρ)) ⊗ D_ρ` on `X`, in the
/// normalization `μ(v)Δ_{P,v} ⊗ D_{P,v}`.
pub fn cox_raw(cd: &CoxData) -> Result<InvariantPDivisorOnFan> {
    let r = cd.class_rank();
    let nv = cd.vertices.len();
    let rays: Vec<(QVec, Polyhedron)> =
        cd.rays.iter().enumerate().map(|(j, rho)| (rho.clone(), Polyhedron::point(&cd.s_of(nv + j)))).collect();
    let verts: Vec<(String, QVec, Polyhedron)> = cd
        .vertices
        .iter()
        .enumerate()
        .map(|(i, (p, v, mu))| {
            let pt = scale(&Q::new(1.into(), mu.clone()), &cd.s_of(i));
            (p.clone(), v.clone(), Polyhedron::point(&pt))
        })
        .collect();
    InvariantPDivisorOnFan::new(cd.fan.clone(), Cone::zero(r), rays, verts)
}

/// `𝒟̃^cox` on `Y`, in `Cl(X)* ⊕ N`. Both displayed forms of the coefficients
/// are computed and must agree.
pub fn cox_upgrade(cd: &CoxData) -> Result<PolyhedralDivisor> {
    let first = upgrade_coefficients(&cox_raw(cd)?)?;
    for p in &cd.primes {
        let second = second_form(cd, p);
        if first.coeff(p) != second {
            return Err(Error::FormsDisagree(p.clone()));
        }
    }
    Ok(first)
}

/// `conv{e(P,v)/μ(v)} + ℚ≥0^ℛ − t̃*(e(P))`, pulled back along
/// `Cl(X)* ⊕ N ↪ ℤ^(𝒱 ∪ ℛ)`.
fn second_form(cd: &CoxData, p: &str) -> Polyhedron {
    let g = cd.generators();
    let nv = cd.vertices.len();
    let r = cd.class_rank();
    let n = cd.fan.rank();
    let k = cd.primes.len() - 1;
    let pts: Vec<QVec> = cd
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, (q, _, _))| q == p)
        .map(|(i, (_, _, mu))| scale(&Q::new(1.into(), mu.clone()), &cd.column(i)))
        .collect();
    if pts.is_empty() {
        return Polyhedron::empty(r + n);
    }
    let dirs: Vec<QVec> = (nv..g).map(|i| cd.column(i)).collect();
    let i = cd.primes.iter().position(|q| q == p).expect("listed prime");
    let ebar: QVec = cd.quotient.matrix.iter().map(|row| Q::from_integer(row[i].clone())).collect();
    let shift = cd.split.section.apply(&concat(&ebar, &zeros(n)));
    let poly = Polyhedron::hull(g, &pts, &dirs).translate(&shift.iter().map(|x| -x).collect::<QVec>());
    // j(c, m) = ι(c) + t*(0, m)
    let iota = cd.split.kernel.to_rational();
    let tstar = cd.split.section.to_rational();
    let j: Mat = (0..g)
        .map(|row| {
            let mut out = iota[row].clone();
            out.extend((0..n).map(|c| tstar[row][k + c].clone()));
            out
        })
        .collect();
    poly.preimage(&j, &zeros(g), r + n)
}

/// `𝒟̂^cox = Σ (𝒟̃_P^cox + σ̂) ⊗ P` with `σ̂ = ℚ≥0 · deg 𝒟̃^cox`.
pub fn cox_correct(cd: &CoxData) -> Result<(PolyhedralDivisor, ProperReport)> {
    correct_pic_z(&cox_upgrade(cd)?)
}

/// Change of coordinates on `Cl(X)* ⊕ N` between two splittings of the same
/// sequence: `(c, m) ↦ (s'(ι c + t*(0,m)), m)`.
pub fn splitting_change(a: &CoxData, b: &CoxData) -> Mat {
    let r = a.class_rank();
    let n = a.fan.rank();
    let k = a.primes.len() - 1;
    let g = a.generators();
    let iota = a.split.kernel.to_rational();
    let tstar = a.split.section.to_rational();
    let sb = b.split.cosection.to_rational();
    let mut cols: Vec<QVec> = Vec::new();
    for c in 0..r {
        let x: QVec = (0..g).map(|row| iota[row][c].clone()).collect();
        cols.push(concat(&linalg::mat_vec(&sb, &x), &zeros(n)));
    }
    for m in 0..n {
        let x: QVec = (0..g).map(|row| tstar[row][k + m].clone()).collect();
        let mut e = zeros(n);
        e[m] = Q::from_integer(1.into());
        cols.push(concat(&linalg::mat_vec(&sb, &x), &e));
    }
    linalg::transpose(&cols, r + n)
}

/// `dim L(a(φᵀw)) = dim L(b(w))` for every lattice weight `w` of `b` with
/// entries in `[-window, window]`, where `φ` maps the coordinates of `a` to those of `b`.
pub fn graded_dims_agree(a: &PolyhedralDivisor, b: &PolyhedralDivisor, phi: &Mat, window: i64) -> Result<bool> {
    let n = b.rank();
    let phit = linalg::transpose(phi, n);
    let wb = b.weight_cone();
    let wa = a.weight_cone();
    let mut w: Vec<Int> = (0..n).map(|_| Int::from(-window)).collect();
    loop {
        let wq: QVec = w.iter().map(|x| Q::from_integer(x.clone())).collect();
        let wa_pt = linalg::mat_vec(&phit, &wq);
        let inb = wb.contains(&wq);
        if inb != wa.contains(&wa_pt) {
            return Ok(false);
        }
        if inb {
            let db = b.base().global_sections(&b.evaluate(&wq)?, 60)?.dim;
            let da = a.base().global_sections(&a.evaluate(&wa_pt)?, 60)?.dim;
            if da != db {
                return Ok(false);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(true);
            }
            if w[i] < Int::from(window) {
                w[i] += 1;
                break;
            }
            w[i] = Int::from(-window);
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Base;
    use crate::rat::{q, qv};
    use crate::tvariety::tests::p2_cf;
    use alloc::vec;

    fn p1xp1() -> DivisorialFan {
        let b = Base::ProjectiveLine;
        let up = Cone::new(1, &[qv(&[1])]);
        let down = Cone::new(1, &[qv(&[-1])]);
        let mk = |t: &Cone, p: &str| {
            PolyhedralDivisor::new(b.clone(), t.clone(), vec![(p, Polyhedron::empty(1))]).unwrap()
        };
        DivisorialFan::new(b.clone(), vec![mk(&up, "0"), mk(&up, "inf"), mk(&down, "0"), mk(&down, "inf")]).unwrap()
    }

    fn marks() -> Vec<String> {
        vec!["0".into(), "inf".into()]
    }

    fn hyp() -> CoxHypotheses {
        CoxHypotheses { complete: true, q_factorial: true, cl_torsion_free: true }
    }

    #[test]
    fn class_rank_bookkeeping() {
        for fan in [p1xp1(), p2_cf()] {
            let cd = cox_sequence(&fan, &marks(), hyp(), &SplitOptions::canonical()).unwrap();
            let expected = cd.generators() - (cd.primes.len() - 1) - fan.rank();
            assert_eq!(cd.class_rank(), expected);
            let rows = cd.pi.to_rational();
            assert_eq!(cd.generators() - linalg::rank(&rows), cd.class_rank());
            // both surfaces have Picard rank two
            assert_eq!(cd.class_rank(), 2);
        }
    }

    #[test]
    fn sequence_is_exact_and_split() {
        let cd = cox_sequence(&p2_cf(), &marks(), hyp(), &SplitOptions::canonical()).unwrap();
        let comp = cd.pi.compose(&cd.split.kernel);
        assert!(comp.matrix.iter().flatten().all(|x| *x == Int::from(0)));
        assert!(cd.pi.compose(&cd.split.section).is_identity());
        assert!(cd.split.cosection.compose(&cd.split.kernel).is_identity());
    }

    #[test]
    fn raw_coefficients_are_points() {
        let cd = cox_sequence(&p2_cf(), &marks(), hyp(), &SplitOptions::canonical()).unwrap();
        let raw = cox_raw(&cd).unwrap();
        for r in raw.rays() {
            assert_eq!(raw.ray_coeff(r).vertices().len(), 1);
            assert!(raw.ray_coeff(r).is_bounded());
        }
    }

    #[test]
    fn two_forms_agree_under_other_pivots() {
        for order in [vec![0, 1, 2, 3], vec![3, 2, 1, 0], vec![1, 3, 0, 2]] {
            let opts = SplitOptions { pivot_order: Some(order), canonical: false };
            for fan in [p1xp1(), p2_cf()] {
                let cd = cox_sequence(&fan, &marks(), hyp(), &opts).unwrap();
                cox_upgrade(&cd).unwrap();
            }
        }
    }

    #[test]
    fn cox_of_the_quadric_surface_is_proper() {
        let cd = cox_sequence(&p1xp1(), &marks(), hyp(), &SplitOptions::canonical()).unwrap();
        let (d, rep) = cox_correct(&cd).unwrap();
        assert!(rep.is_proper(), "{rep:?}");
        assert_eq!(d.rank(), 3);
    }

    #[test]
    fn graded_pieces_are_sections_of_classes() {
        let cd = cox_sequence(&p2_cf(), &marks(), hyp(), &SplitOptions::canonical()).unwrap();
        let raw = cox_raw(&cd).unwrap();
        let up = cox_upgrade(&cd).unwrap();
        let w = up.weight_cone();
        let mut checked = 0;
        for c0 in -3..4 {
            for c1 in -3..4 {
                for u in -4..5 {
                    let wt = vec![q(c0), q(c1), q(u)];
                    if !w.contains(&wt) {
                        continue;
                    }
                    let Ok(dc) = raw.evaluate(&[q(c0), q(c1)]) else { continue };
                    if !dc.box_polyhedron().contains(&[q(u)]) {
                        continue;
                    }
                    let a = dc.graded_sections(&[q(u)], 40).unwrap().dim;
                    let e = up.evaluate(&wt).unwrap();
                    let b = up.base().global_sections(&e, 40).unwrap().dim;
                    assert_eq!(a, b, "{wt:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn pivot_choice_only_changes_coordinates() {
        let fan = p1xp1();
        let a = cox_sequence(&fan, &marks(), hyp(), &SplitOptions::canonical()).unwrap();
        let b = cox_sequence(&fan, &marks(), hyp(), &SplitOptions { pivot_order: Some(vec![2, 0, 3, 1]), canonical: false })
            .unwrap();
        let (da, _) = cox_correct(&a).unwrap();
        let (db, _) = cox_correct(&b).unwrap();
        let phi = splitting_change(&a, &b);
        assert!(graded_dims_agree(&da, &db, &phi, 3).unwrap());
    }

    #[test]
    fn missing_marked_prime_is_rejected() {
        let e = cox_sequence(&p2_cf(), &["0".into()], hyp(), &SplitOptions::canonical());
        assert_eq!(e.unwrap_err(), Error::MarksMissingSupport("inf".into()));
    }
}
