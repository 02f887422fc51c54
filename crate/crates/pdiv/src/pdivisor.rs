//! Polyhedral divisors: evaluation, properness, degree, pullbacks and the
//! toric downgrade.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::base::{Base, Coef, QDivisor, RationalFunction, ToricBase};
use crate::error::{Error, Result};
use crate::lattice::{smith_split, LatticeMap};
use crate::linalg::{self, Mat};
use crate::polyhedra::{
    chamber_complex, linearity_regions, weighted_sum, Bound, Cone, PolyhedralComplex, Polyhedron,
};
use crate::rat::{add, dot, is_zero_vec, primitive, scale, zeros, Int, QVec, Q};

/// `Σ Δ_P ⊗ P` with a common tailcone; unlisted primes carry the tailcone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralDivisor {
    base: Base,
    tail: Cone,
    coeffs: BTreeMap<String, Polyhedron>,
}

/// Clause-by-clause properness verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProperReport {
    pub qcartier: bool,
    pub semiample: bool,
    pub big: bool,
    pub loc_semiprojective: bool,
    pub fulldim_weightcone: bool,
}

impl ProperReport {
    pub fn is_proper(&self) -> bool {
        self.qcartier && self.semiample && self.big && self.loc_semiprojective && self.fulldim_weightcone
    }
}

impl PolyhedralDivisor {
    pub fn new<S: AsRef<str>>(base: Base, tail: Cone, coeffs: Vec<(S, Polyhedron)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (l, p) in coeffs {
            let label = base.canonical_label(l.as_ref())?;
            if p.ambient_dim() != tail.dim() {
                return Err(Error::AmbientMismatch(tail.dim(), p.ambient_dim()));
            }
            if !p.is_empty() && p.tail() != *tail.poly() {
                return Err(Error::TailMismatch(label));
            }
            if map.insert(label.clone(), p).is_some() {
                return Err(Error::Invalid(format!("prime {label} listed twice")));
            }
        }
        map.retain(|_, p| p != tail.poly());
        Ok(PolyhedralDivisor { base, tail, coeffs: map })
    }

    /// The divisor with every coefficient equal to the tailcone.
    pub fn trivial(base: Base, tail: Cone) -> Self {
        PolyhedralDivisor { base, tail, coeffs: BTreeMap::new() }
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    pub fn rank(&self) -> usize {
        self.tail.dim()
    }

    pub fn weight_cone(&self) -> Cone {
        self.tail.dual()
    }

    pub fn coeff(&self, label: &str) -> Polyhedron {
        self.coeffs.get(label).cloned().unwrap_or_else(|| self.tail.poly().clone())
    }

    /// Coefficients differing from the tailcone.
    pub fn coeffs(&self) -> impl Iterator<Item = (&String, &Polyhedron)> {
        self.coeffs.iter()
    }

    pub fn empty_primes(&self) -> Vec<String> {
        self.coeffs.iter().filter(|(_, p)| p.is_empty()).map(|(l, _)| l.clone()).collect()
    }

    /// `∞` on the primes with empty coefficient, zero elsewhere.
    pub fn locus_divisor(&self) -> QDivisor {
        let mut d = QDivisor::new();
        for l in self.empty_primes() {
            d.set(&l, Coef::Infinity);
        }
        d
    }

    pub fn with_base(&self, base: Base) -> Result<Self> {
        let coeffs: Vec<(String, Polyhedron)> = self.coeffs.iter().map(|(l, p)| (l.clone(), p.clone())).collect();
        PolyhedralDivisor::new(base, self.tail.clone(), coeffs)
    }

    /// `𝒟(u) = Σ min⟨𝒟_P, u⟩ · P`.
    pub fn evaluate(&self, u: &[Q]) -> Result<QDivisor> {
        if u.len() != self.rank() {
            return Err(Error::AmbientMismatch(self.rank(), u.len()));
        }
        if !self.weight_cone().contains(u) {
            return Err(Error::WeightOutsideCone);
        }
        let mut d = QDivisor::new();
        for (l, p) in &self.coeffs {
            match p.min_pairing(u) {
                Bound::Empty => d.set(l, Coef::Infinity),
                Bound::Finite(x) => d.set(l, Coef::Finite(x)),
                Bound::MinusInfinity => unreachable!("u lies in the weight cone"),
            }
        }
        Ok(d)
    }

    /// Subdivision of the weight cone into cones on which evaluation is linear.
    pub fn linearity_complex(&self) -> PolyhedralComplex {
        let omega = self.weight_cone().into_poly();
        let n = self.rank();
        let mut pieces: Vec<Polyhedron> = omega.faces();
        for p in self.coeffs.values() {
            if p.is_empty() || p.vertices().len() < 2 {
                continue;
            }
            let fs: Vec<(QVec, Q)> = p.vertices().iter().map(|v| (v.clone(), Q::zero())).collect();
            for (r, _) in linearity_regions(&omega, &fs) {
                pieces.extend(r.faces());
            }
        }
        chamber_complex(n, &pieces)
    }

    /// Generators of the maximal linearity cones, and one relative-interior
    /// point for each linearity cell meeting the interior of the weight cone.
    pub fn weight_samples(&self) -> (Vec<QVec>, Vec<QVec>) {
        let cx = self.linearity_complex();
        let omega = self.weight_cone().into_poly();
        let mut gens: BTreeSet<QVec> = BTreeSet::new();
        for c in cx.maximal_cells() {
            gens.extend(c.rays().iter().cloned());
            for l in c.lineality() {
                gens.insert(l.clone());
                gens.insert(l.iter().map(|x| -x).collect());
            }
        }
        if gens.is_empty() {
            gens.insert(zeros(self.rank()));
        }
        let interior: Vec<QVec> = cx
            .all_cells()
            .iter()
            .filter_map(|c| c.relint_point())
            .filter(|p| omega.inequalities().iter().all(|(a, b)| dot(a, p) > *b))
            .collect();
        (gens.into_iter().collect(), interior)
    }

    pub fn is_proper(&self) -> Result<ProperReport> {
        let (gens, interior) = self.weight_samples();
        let mut qcartier = true;
        let mut semiample = true;
        for g in &gens {
            let p = self.base.positivity(&self.evaluate(g)?)?;
            qcartier &= p.qcartier;
            semiample &= p.semiample;
        }
        let mut big = true;
        for u in &interior {
            big &= self.base.positivity(&self.evaluate(u)?)?.big;
        }
        let omega = self.weight_cone();
        Ok(ProperReport {
            qcartier,
            semiample,
            big,
            loc_semiprojective: self.base.locus_semiprojective(&self.locus_divisor())?,
            fulldim_weightcone: omega.poly().is_full_dim(),
        })
    }

    /// `Σ deg(P)·𝒟_P`.
    pub fn degree_polyhedron(&self) -> Result<Polyhedron> {
        let mut terms = Vec::new();
        for (l, p) in &self.coeffs {
            if p.is_empty() {
                return Err(Error::EmptyCoefficient(l.clone()));
            }
            terms.push((self.base.prime_degree(l)?, p));
        }
        if terms.is_empty() {
            // still requires a degree map
            if matches!(self.base, Base::OpenInProjectiveLine(_)) {
                return Err(Error::NoDegreeMap);
            }
            if let Base::Toric(t) = &self.base {
                t.degrees.as_ref().ok_or(Error::NoDegreeMap)?;
            }
        }
        Ok(weighted_sum(self.rank(), &terms).minkowski_sum(self.tail.poly()))
    }

    /// Replaces the tailcone by `tail + extra` and every coefficient by `Δ + extra`.
    pub fn widen_tail(&self, extra: &Cone) -> Result<Self> {
        let tail = Cone::from_poly(self.tail.poly().minkowski_sum(extra.poly()))?;
        let coeffs: Vec<(String, Polyhedron)> =
            self.coeffs.iter().map(|(l, p)| (l.clone(), p.minkowski_sum(extra.poly()))).collect();
        PolyhedralDivisor::new(self.base.clone(), tail, coeffs)
    }

    pub fn pullback(&self, phi: &PullbackTriple) -> Result<PolyhedralDivisor> {
        let n = self.rank();
        let (src_base, mut coeffs) = match &phi.base_map {
            BaseMap::Identity => (self.base.clone(), self.coeffs.clone()),
            BaseMap::Curve { source, preimages } => {
                let mut out: BTreeMap<String, Polyhedron> = BTreeMap::new();
                for (l, p) in &self.coeffs {
                    let pre = preimages.get(l).ok_or_else(|| Error::IndeterminateBaseMap(l.clone()))?;
                    for (q, e) in pre {
                        let q = source.canonical_label(q)?;
                        if !e.is_positive() {
                            return Err(Error::Invalid(format!("ramification index at {q}")));
                        }
                        if out.insert(q.clone(), p.scale(&Q::from_integer(e.clone()))).is_some() {
                            return Err(Error::Invalid(format!("{q} maps to two points")));
                        }
                    }
                }
                (source.clone(), out)
            }
            BaseMap::Toric { source, lattice } => {
                let src = source.toric().ok_or_else(|| Error::UnsupportedBase("toric map from a curve".into()))?;
                let tgt = self.base.toric().ok_or_else(|| Error::UnsupportedBase("toric map to a curve".into()))?;
                (source.clone(), self.toric_pullback(src, tgt, lattice)?)
            }
        };
        for (l, v) in phi.shift.shifts(&src_base)? {
            let c = coeffs.remove(&l).unwrap_or_else(|| self.tail.poly().clone());
            coeffs.insert(l, c.translate(&v));
        }
        let f = phi.lattice_map.to_rational();
        let src = phi.lattice_map.source;
        if phi.lattice_map.target != n {
            return Err(Error::AmbientMismatch(n, phi.lattice_map.target));
        }
        let tail = Cone::from_poly(self.tail.poly().preimage(&f, &zeros(n), src))?;
        let pulled: Vec<(String, Polyhedron)> =
            coeffs.into_iter().map(|(l, p)| (l, p.preimage(&f, &zeros(n), src))).collect();
        PolyhedralDivisor::new(src_base, tail, pulled)
    }

    fn toric_pullback(
        &self,
        src: &ToricBase,
        tgt: &ToricBase,
        lattice: &LatticeMap,
    ) -> Result<BTreeMap<String, Polyhedron>> {
        let n = self.rank();
        let phi = lattice.to_rational();
        let mut out = BTreeMap::new();
        for (label, v) in &src.rays {
            let w = linalg::mat_vec(&phi, v);
            if is_zero_vec(&w) {
                continue;
            }
            let weights = decompose_in_fan(tgt, &w).ok_or_else(|| Error::IndeterminateBaseMap(label.clone()))?;
            let mut terms: Vec<(Q, Polyhedron)> = Vec::new();
            for (i, c) in weights {
                terms.push((c, self.coeff(&tgt.rays[i].0)));
            }
            if terms.iter().any(|(_, p)| p.is_empty()) {
                out.insert(label.clone(), Polyhedron::empty(n));
                continue;
            }
            let refs: Vec<(Q, &Polyhedron)> = terms.iter().map(|(c, p)| (c.clone(), p)).collect();
            out.insert(label.clone(), weighted_sum(n, &refs).minkowski_sum(self.tail.poly()));
        }
        for e in &tgt.extra {
            let c = self.coeff(&e.label);
            if c == *self.tail.poly() {
                continue;
            }
            if src.extra_index(&e.label).is_none() {
                return Err(Error::IndeterminateBaseMap(e.label.clone()));
            }
            out.insert(e.label.clone(), c);
        }
        Ok(out)
    }
}

/// Nonnegative coordinates of `w` in the rays of the smallest cone containing it.
fn decompose_in_fan(t: &ToricBase, w: &[Q]) -> Option<Vec<(usize, Q)>> {
    for c in &t.cones {
        let cone = Cone::new(t.dim, &c.iter().map(|&i| t.rays[i].1.clone()).collect::<Vec<_>>());
        if !cone.contains(w) {
            continue;
        }
        let face: Vec<usize> = c
            .iter()
            .copied()
            .filter(|&i| cone.poly().inequalities().iter().all(|(a, _)| !dot(a, w).is_zero() || dot(a, &t.rays[i].1).is_zero()))
            .collect();
        let rows: Vec<QVec> = face.iter().map(|&i| t.rays[i].1.clone()).collect();
        if linalg::rank(&rows) != rows.len() {
            return None;
        }
        let cols = linalg::transpose(&rows, t.dim);
        let x = linalg::solve(&cols, w, rows.len())?;
        return Some(face.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect());
    }
    None
}

/// How the base of a pullback triple maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseMap {
    Identity,
    /// A map of curves, given by the fibers over the marked points with
    /// ramification indices.
    Curve { source: Base, preimages: BTreeMap<String, Vec<(String, Int)>> },
    /// A toric morphism, given by its map of base lattices.
    Toric { source: Base, lattice: LatticeMap },
}

/// `Div(𝔣)` for `𝔣 = Σ vᵢ ⊗ fᵢ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrincipalPolyhedralDivisor {
    pub terms: Vec<(QVec, RationalFunction)>,
}

impl PrincipalPolyhedralDivisor {
    pub fn new(terms: Vec<(QVec, RationalFunction)>) -> Self {
        PrincipalPolyhedralDivisor { terms }
    }

    /// `Σ ⟨vᵢ,u⟩ Div(fᵢ)`.
    pub fn evaluate(&self, base: &Base, u: &[Q]) -> Result<QDivisor> {
        let mut d = QDivisor::new();
        for (v, f) in &self.terms {
            let k = dot(v, u);
            d = d.plus(&base.divisor_of(f)?.scale_signed(&k));
        }
        Ok(d)
    }

    /// Per prime, the translation `Σ ord_P(fᵢ) vᵢ`.
    pub fn shifts(&self, base: &Base) -> Result<BTreeMap<String, QVec>> {
        let mut out: BTreeMap<String, QVec> = BTreeMap::new();
        for (v, f) in &self.terms {
            for (l, c) in base.divisor_of(f)?.terms() {
                let k = c.finite().expect("principal divisors are finite");
                let e = out.entry(l.clone()).or_insert_with(|| zeros(v.len()));
                *e = add(e, &scale(k, v));
            }
        }
        out.retain(|_, v| !is_zero_vec(v));
        Ok(out)
    }
}

/// `(ψ, F, 𝔣)`: `F` maps the new lattice into the old one, `𝔣` lives on the source base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackTriple {
    pub base_map: BaseMap,
    pub lattice_map: LatticeMap,
    pub shift: PrincipalPolyhedralDivisor,
}

impl PullbackTriple {
    pub fn identity(rank: usize) -> Self {
        PullbackTriple {
            base_map: BaseMap::Identity,
            lattice_map: LatticeMap::identity(rank),
            shift: PrincipalPolyhedralDivisor::default(),
        }
    }
}

impl QDivisor {
    /// Scaling by any rational; `∞` stays `∞` unless the factor is zero.
    pub fn scale_signed(&self, k: &Q) -> QDivisor {
        let mut d = QDivisor::new();
        for (l, c) in self.terms() {
            d.set(
                l,
                match c {
                    Coef::Finite(x) => Coef::Finite(x * k),
                    Coef::Infinity if k.is_zero() => Coef::zero(),
                    Coef::Infinity => Coef::Infinity,
                },
            );
        }
        d
    }
}

/// The polyhedron `{x : ⟨x,u⟩ ≥ h(u)}` with the support values given on sample weights.
pub fn polyhedron_from_support(dim: usize, values: &[(QVec, Q)]) -> Polyhedron {
    Polyhedron::from_hrep(dim, values, &[])
}

/// Result of downgrading a toric variety to a subtorus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDowngrade {
    pub base: ToricBase,
    pub divisor: PolyhedralDivisor,
    /// Projection `Ñ → Ñ/N̄` and retraction `Ñ → N̄` used.
    pub projection: LatticeMap,
    pub retraction: LatticeMap,
}

/// Downgrades the affine toric variety of `pos(generators)` to the subtorus
/// given by `sub: N̄ ↪ Ñ`.
///
/// The base fan is the common refinement of the projected faces. Its rays
/// are labelled `D1, D2, …`, images of the generators first in the given
/// order, then rays created by the refinement.
pub fn toric_downgrade(generators: &[QVec], sub: &LatticeMap) -> Result<ToricDowngrade> {
    let n = sub.target;
    let k = sub.source;
    let delta = Cone::new(n, generators);
    if !delta.is_pointed() {
        return Err(Error::Invalid("cone is not pointed".into()));
    }
    let split = smith_split(&sub.transpose()).map_err(|_| Error::NotSplit)?;
    let projection = split.kernel.transpose();
    let retraction = split.section.transpose();
    let m = n - k;
    let pr: Mat = projection.to_rational();
    let rt: Mat = retraction.to_rational();
    let tail = Cone::from_poly(delta.poly().fiber_slice(&pr, &zeros(m), &rt, k))?;
    if m == 0 {
        let base = ToricBase::point();
        let divisor = PolyhedralDivisor::trivial(Base::Toric(base.clone()), tail);
        return Ok(ToricDowngrade { base, divisor, projection, retraction });
    }
    let images: Vec<Polyhedron> = delta.poly().faces().iter().map(|f| f.linear_image(&pr, m)).collect();
    let cx = chamber_complex(m, &images);
    let mut rays: Vec<QVec> = Vec::new();
    for g in generators {
        let w = linalg::mat_vec(&pr, g);
        if !is_zero_vec(&w) {
            let p = primitive(&w);
            if !rays.contains(&p) && cx.rays().iter().any(|r| primitive(r) == p) {
                rays.push(p);
            }
        }
    }
    for r in cx.rays() {
        let p = primitive(&r);
        if !rays.contains(&p) {
            rays.push(p);
        }
    }
    let cones: Vec<Vec<usize>> = cx
        .maximal_cells()
        .iter()
        .map(|c| {
            let mut ids: Vec<usize> = c.rays().iter().map(|r| rays.iter().position(|x| *x == primitive(r)).expect("ray")).collect();
            ids.sort();
            ids
        })
        .collect();
    let labelled: Vec<(String, QVec)> =
        rays.iter().enumerate().map(|(i, r)| (format!("D{}", i + 1), r.clone())).collect();
    let base = ToricBase::new(m, labelled.clone(), cones)?.with_semiprojective(true);
    let coeffs: Vec<(String, Polyhedron)> =
        labelled.iter().map(|(l, r)| (l.clone(), delta.poly().fiber_slice(&pr, r, &rt, k))).collect();
    let divisor = PolyhedralDivisor::new(Base::Toric(base.clone()), tail, coeffs)?;
    Ok(ToricDowngrade { base, divisor, projection, retraction })
}

/// Convexity `𝒟(u)+𝒟(u′) ≤ 𝒟(u+u′)` of an evaluation map on the given weights
/// and their pairwise sums.
pub fn is_convex_on<F>(weights: &[QVec], eval: F) -> Result<bool>
where
    F: Fn(&[Q]) -> Result<QDivisor>,
{
    for (i, a) in weights.iter().enumerate() {
        for b in &weights[i..] {
            let lhs = eval(a)?.plus(&eval(b)?);
            if !lhs.le(&eval(&add(a, b))?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl PolyhedralDivisor {
    /// Convexity on the weight-cone generators, the linearity-cone generators
    /// and small integer combinations of them.
    pub fn convexity_check(&self) -> Result<bool> {
        let (mut ws, interior) = self.weight_samples();
        ws.extend(self.weight_cone().all_generators());
        ws.extend(interior);
        let extra: Vec<QVec> = ws
            .iter()
            .enumerate()
            .flat_map(|(i, a)| ws.iter().skip(i + 1).map(move |b| add(&scale(&Q::from_integer(Int::from(2)), a), b)))
            .collect();
        ws.extend(extra);
        is_convex_on(&ws, |u| self.evaluate(u))
    }
}

impl fmt::Display for PolyhedralDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|(l, p)| format!("({p}) (x) {l}")).collect();
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        write!(f, "; tail {}", self.tail.poly())
    }
}

/// Labels of the rays of a toric base, in order.
pub fn ray_labels(t: &ToricBase) -> Vec<String> {
    t.rays.iter().map(|(l, _)| l.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{ExtraPrime, Point};
    use alloc::vec;
    use crate::rat::{q, qf, qv};

    fn seg(a: Q, b: Q) -> Polyhedron {
        Polyhedron::hull(1, &[vec![a], vec![b]], &[])
    }

    fn pt(a: Q) -> Polyhedron {
        Polyhedron::point(&[a])
    }

    pub(crate) fn bl0_a2_with_curve() -> Base {
        let t = ToricBase::new(
            2,
            vec![("D1".into(), qv(&[1, 0])), ("Dv".into(), qv(&[0, 1])), ("E".into(), qv(&[1, 1]))],
            vec![vec![0, 2], vec![2, 1]],
        )
        .unwrap()
        .with_semiprojective(true)
        .with_extra(ExtraPrime {
            label: "D2".into(),
            equation: "u+v^2+v".into(),
            invariant_orders: [("E".to_string(), Int::from(1))].into_iter().collect(),
        });
        Base::Toric(t)
    }

    fn c3_like() -> PolyhedralDivisor {
        PolyhedralDivisor::new(
            bl0_a2_with_curve(),
            Cone::zero(1),
            vec![("D1", pt(qf(1, 2))), ("D2", pt(qf(1, 3))), ("E", seg(q(0), qf(1, 6)))],
        )
        .unwrap()
    }

    #[test]
    fn evaluation_at_six() {
        let d = c3_like().evaluate(&qv(&[6])).unwrap();
        assert_eq!(d, QDivisor::from_finite(&[("D1", q(3)), ("D2", q(2))]));
        let d = c3_like().evaluate(&qv(&[-6])).unwrap();
        assert_eq!(d, QDivisor::from_finite(&[("D1", q(-3)), ("D2", q(-2)), ("E", q(-1))]));
    }

    #[test]
    fn evaluation_at_zero_marks_the_locus() {
        let d = PolyhedralDivisor::new(
            Base::ProjectiveLine,
            Cone::new(1, &[qv(&[1])]),
            vec![("0", Polyhedron::empty(1)), ("1", Polyhedron::hull(1, &[qv(&[2])], &[qv(&[1])]))],
        )
        .unwrap();
        let e = d.evaluate(&qv(&[0])).unwrap();
        assert_eq!(e, QDivisor::from_pairs(&[("0", Coef::Infinity)]));
        assert_eq!(d.evaluate(&qv(&[-1])), Err(Error::WeightOutsideCone));
    }

    #[test]
    fn tail_mismatch_is_rejected() {
        let r = PolyhedralDivisor::new(Base::ProjectiveLine, Cone::zero(1), vec![("0", Polyhedron::cone(1, &[qv(&[1])]))]);
        assert_eq!(r, Err(Error::TailMismatch("0".into())));
    }

    #[test]
    fn degree_polyhedron_on_line() {
        let tail = Cone::zero(1);
        let d = PolyhedralDivisor::new(Base::ProjectiveLine, tail, vec![("0", pt(qf(1, 2))), ("inf", seg(q(0), q(1)))]).unwrap();
        assert_eq!(d.degree_polyhedron().unwrap(), seg(qf(1, 2), qf(3, 2)));
        let e = PolyhedralDivisor::new(Base::ProjectiveLine, Cone::zero(1), vec![("0", Polyhedron::empty(1))]).unwrap();
        assert_eq!(e.degree_polyhedron(), Err(Error::EmptyCoefficient("0".into())));
    }

    #[test]
    fn tail_only_divisor_on_line_is_not_big() {
        let d = PolyhedralDivisor::trivial(Base::ProjectiveLine, Cone::new(1, &[qv(&[1])]));
        let r = d.is_proper().unwrap();
        assert!(r.semiample && !r.big && !r.is_proper());
    }

    #[test]
    fn proper_divisor_on_line() {
        // the quadric cone as a C*-surface: [1/2,∞)⊗0 + [1/2,∞)⊗∞
        let ray = Cone::new(1, &[qv(&[1])]);
        let half = Polyhedron::hull(1, &[vec![qf(1, 2)]], &[qv(&[1])]);
        let d = PolyhedralDivisor::new(Base::ProjectiveLine, ray, vec![("0", half.clone()), ("inf", half)]).unwrap();
        assert!(d.is_proper().unwrap().is_proper());
        assert!(d.convexity_check().unwrap());
    }

    #[test]
    fn affine_plane_divisor_is_proper() {
        let a2 = ToricBase::new(2, vec![("Dx".into(), qv(&[1, 0])), ("Dy".into(), qv(&[0, 1]))], vec![vec![0, 1]]).unwrap();
        let d = PolyhedralDivisor::new(
            Base::Toric(a2),
            Cone::zero(2),
            vec![
                ("Dx", Polyhedron::hull(2, &[qv(&[0, 0]), qv(&[0, 1])], &[])),
                ("Dy", Polyhedron::hull(2, &[qv(&[0, 0]), qv(&[1, 1])], &[])),
            ],
        )
        .unwrap();
        let r = d.is_proper().unwrap();
        assert!(r.is_proper(), "{r:?}");
        assert!(d.convexity_check().unwrap());
    }

    #[test]
    fn principal_divisor_of_x() {
        let f = PrincipalPolyhedralDivisor::new(vec![(qv(&[1]), RationalFunction::from_factors(0, &[("0", 1)]))]);
        let d = f.evaluate(&Base::ProjectiveLine, &qv(&[3])).unwrap();
        assert_eq!(d, QDivisor::from_finite(&[("0", q(3)), ("inf", q(-3))]));
        assert!(PrincipalPolyhedralDivisor::default().evaluate(&Base::ProjectiveLine, &qv(&[3])).unwrap().is_zero());
    }

    #[test]
    fn identity_pullback() {
        let d = c3_like();
        assert_eq!(d.pullback(&PullbackTriple::identity(1)).unwrap(), d);
    }

    #[test]
    fn pullback_with_shift_translates() {
        let d = PolyhedralDivisor::new(Base::ProjectiveLine, Cone::zero(1), vec![("0", seg(q(0), q(1)))]).unwrap();
        let mut phi = PullbackTriple::identity(1);
        phi.shift = PrincipalPolyhedralDivisor::new(vec![(qv(&[1]), RationalFunction::from_factors(0, &[("0", 1)]))]);
        let p = d.pullback(&phi).unwrap();
        assert_eq!(p.coeff("0"), seg(q(1), q(2)));
        assert_eq!(p.coeff("inf"), pt(q(-1)));
    }

    #[test]
    fn pullback_along_double_cover() {
        let d = PolyhedralDivisor::new(Base::ProjectiveLine, Cone::zero(1), vec![("0", pt(qf(1, 2)))]).unwrap();
        let mut pre = BTreeMap::new();
        pre.insert("0".to_string(), vec![("0".to_string(), Int::from(2))]);
        let phi = PullbackTriple {
            base_map: BaseMap::Curve { source: Base::ProjectiveLine, preimages: pre },
            lattice_map: LatticeMap::identity(1),
            shift: PrincipalPolyhedralDivisor::default(),
        };
        assert_eq!(d.pullback(&phi).unwrap().coeff("0"), pt(q(1)));
    }

    #[test]
    fn pullback_to_blowup() {
        let a2 = ToricBase::new(2, vec![("Dx".into(), qv(&[1, 0])), ("Dy".into(), qv(&[0, 1]))], vec![vec![0, 1]]).unwrap();
        let d = PolyhedralDivisor::new(
            Base::Toric(a2),
            Cone::zero(1),
            vec![("Dx", seg(q(0), q(1))), ("Dy", pt(q(1)))],
        )
        .unwrap();
        let bl = ToricBase::new(
            2,
            vec![("Dx".into(), qv(&[1, 0])), ("Dy".into(), qv(&[0, 1])), ("E".into(), qv(&[1, 1]))],
            vec![vec![0, 2], vec![2, 1]],
        )
        .unwrap();
        let phi = PullbackTriple {
            base_map: BaseMap::Toric { source: Base::Toric(bl), lattice: LatticeMap::identity(2) },
            lattice_map: LatticeMap::identity(1),
            shift: PrincipalPolyhedralDivisor::default(),
        };
        let p = d.pullback(&phi).unwrap();
        assert_eq!(p.coeff("E"), seg(q(1), q(2)));
        assert_eq!(p.coeff("Dx"), seg(q(0), q(1)));
    }

    #[test]
    fn downgrade_with_difficulties() {
        let gens = vec![qv(&[0, 0, 1, 0]), qv(&[0, 1, 1, 0]), qv(&[0, 0, 0, 1]), qv(&[1, 1, 0, 1])];
        let m: crate::lattice::IntMat = gens.iter().map(|g| g.iter().map(|x| x.to_integer()).collect()).collect();
        assert_eq!(crate::lattice::int_det(&m).abs(), Int::from(1));
        let sub = LatticeMap::from_i64(1, &[&[1], &[0], &[0], &[0]]);
        let r = toric_downgrade(&gens, &sub).unwrap();
        let rays: Vec<QVec> = r.base.rays.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(rays, vec![qv(&[0, 1, 0]), qv(&[1, 1, 0]), qv(&[0, 0, 1]), qv(&[1, 0, 1]), qv(&[1, 1, 1])]);
        let mut cones: Vec<Vec<usize>> = r.base.cones.clone();
        cones.sort();
        assert_eq!(cones, vec![vec![0, 1, 4], vec![0, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]);
        let coeffs: Vec<(String, Polyhedron)> = r.divisor.coeffs().map(|(l, p)| (l.clone(), p.clone())).collect();
        assert_eq!(coeffs, vec![("D4".to_string(), pt(q(1))), ("D5".to_string(), seg(q(0), q(1)))]);
        assert_eq!(*r.divisor.tail(), Cone::zero(1));
    }

    #[test]
    fn full_sublattice_gives_point_base() {
        let gens = vec![qv(&[1, 0]), qv(&[1, 2])];
        let r = toric_downgrade(&gens, &LatticeMap::identity(2)).unwrap();
        assert_eq!(r.base.dim, 0);
        assert_eq!(*r.divisor.tail(), Cone::new(2, &gens));
    }

    #[test]
    fn orthant_downgrade() {
        let gens = vec![qv(&[1, 0]), qv(&[0, 1])];
        let sub = LatticeMap::from_i64(1, &[&[1], &[0]]);
        let r = toric_downgrade(&gens, &sub).unwrap();
        assert_eq!(r.base.rays, vec![("D1".to_string(), qv(&[1]))]);
        assert_eq!(r.divisor.coeff("D1"), Polyhedron::hull(1, &[qv(&[0])], &[qv(&[1])]));
    }

    #[test]
    fn non_convex_table_detected() {
        let ws = vec![qv(&[1]), qv(&[2])];
        let ok = is_convex_on(&ws, |u| Ok(QDivisor::from_finite(&[("0", u[0].clone() * &u[0])]))).unwrap();
        assert!(ok);
        let bad = is_convex_on(&ws, |u| Ok(QDivisor::from_finite(&[("0", -(u[0].clone() * &u[0]))]))).unwrap();
        assert!(!bad);
    }

    #[test]
    fn open_line_base_is_proper_where_it_can_be() {
        let base = Base::OpenInProjectiveLine(vec![Point::Infinity]);
        let d = PolyhedralDivisor::new(base, Cone::new(1, &[qv(&[1])]), vec![("0", Polyhedron::hull(1, &[qv(&[1])], &[qv(&[1])]))]).unwrap();
        assert!(d.is_proper().unwrap().is_proper());
    }
}
