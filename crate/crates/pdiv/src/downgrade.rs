//! Divisorial polyhedra and the downgrade of a complexity-one torus action to
//! a subtorus.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::base::Point;
use crate::error::{Error, Result};
use crate::lattice::{smith_split, LatticeMap, Split};
use crate::linalg::{self, Mat};
use crate::pdivisor::{PolyhedralDivisor, ProperReport};
use crate::polyhedra::{chamber_complex, linearity_regions, Cone, PolyhedralComplex, Polyhedron};
use crate::rat::{dot, lcm_denominators, scale, zeros, Int, QVec, Q};
use crate::tvariety::{DivisorialFan, PLDivisorMap};
use crate::upgrade::{upgrade, InvariantPDivisorOnFan};

/// A divisorial polyhedron `(Ψ, Box)` on a curve.
pub type DivisorialPolyhedron = PLDivisorMap;

/// `0 → M' → M → M̄ → 0` with section `s*` and cosection `t`, together with
/// the dual maps `π: N → N'` and `s: N → N̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DowngradeContext {
    pub pr: LatticeMap,
    pub split: Split,
}

impl DowngradeContext {
    pub fn new(pr: LatticeMap) -> Result<Self> {
        let split = smith_split(&pr).map_err(|_| Error::NotSplit)?;
        Ok(DowngradeContext { pr, split })
    }

    /// Rank of `M`.
    pub fn rank(&self) -> usize {
        self.pr.source
    }

    /// Rank of `M̄`.
    pub fn bar_rank(&self) -> usize {
        self.pr.target
    }

    /// Rank of `M' = ker pr`.
    pub fn prime_rank(&self) -> usize {
        self.rank() - self.bar_rank()
    }

    /// `π: N → N'`.
    pub fn pi(&self) -> Mat {
        self.split.kernel.transpose().to_rational()
    }

    /// `s: N → N̄`.
    pub fn s(&self) -> Mat {
        self.split.section.transpose().to_rational()
    }

    /// `t: M → M'`.
    pub fn t(&self) -> Mat {
        self.split.cosection.to_rational()
    }

    /// `N ≅ N̄ ⊕ N'`, `v ↦ (s v, π v)`.
    pub fn split_coordinates(&self) -> Mat {
        let mut m = self.s();
        m.extend(self.pi());
        m
    }
}

/// `Ψ_P^lin` on `tail(Box)`, as the minimum of finitely many linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPart {
    pub domain: Polyhedron,
    pub slopes: Vec<QVec>,
}

impl LinearPart {
    pub fn value(&self, w: &[Q]) -> Result<Q> {
        if !self.domain.contains(w) {
            return Err(Error::WeightOutsideBox);
        }
        Ok(self.slopes.iter().map(|s| dot(s, w)).min().unwrap_or_else(Q::zero))
    }
}

pub fn linear_part(psi: &DivisorialPolyhedron, p: &str) -> Result<LinearPart> {
    let n = psi.rank();
    let tail = psi.hypograph(p).tail();
    if tail.is_empty() {
        return Err(Error::Invalid("empty box".into()));
    }
    let slopes: Vec<QVec> = tail
        .inequalities()
        .iter()
        .filter(|(a, _)| a[n].is_negative())
        .map(|(a, _)| {
            let c = -a[n].clone();
            a[..n].iter().map(|x| x / &c).collect()
        })
        .collect();
    if slopes.is_empty() {
        return Err(Error::Invalid("linear part is infinite".into()));
    }
    Ok(LinearPart { domain: psi.domain().tail(), slopes })
}

/// `Ψ_P*` on `Box_P*`, as `v ↦ min_j (⟨v,u_j⟩ − c_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMap {
    pub domain: Polyhedron,
    pub pieces: Vec<(QVec, Q)>,
}

impl DualMap {
    pub fn value(&self, v: &[Q]) -> Result<Q> {
        if !self.domain.contains(v) {
            return Err(Error::WeightOutsideBox);
        }
        Ok(self.pieces.iter().map(|(u, c)| dot(u, v) + c).min().expect("pieces are nonempty"))
    }

    /// `Ξ(Ψ_P*)`.
    pub fn subdivision(&self) -> Result<PolyhedralComplex> {
        let cells: Vec<Polyhedron> = linearity_regions(&self.domain, &self.pieces).into_iter().map(|(c, _)| c).collect();
        if cells.iter().any(|c| !c.is_pointed()) {
            return Err(Error::BoxNotFullDimensional);
        }
        PolyhedralComplex::new(self.domain.ambient_dim(), cells).map_err(|_| Error::BoxNotFullDimensional)
    }
}

/// `Box_P*` and `Ψ_P*` of a single prime, read off from the hypograph.
pub fn dualize_at(psi: &DivisorialPolyhedron, p: &str) -> Result<DualMap> {
    let n = psi.rank();
    let h = psi.hypograph(p);
    if h.is_empty() {
        return Err(Error::Invalid("empty box".into()));
    }
    let pair = |r: &QVec| -> QVec { r[..n].to_vec() };
    // ⟨(v,−1), r⟩ ≥ 0 on rays, = 0 on lineality
    let ineqs: Vec<(QVec, Q)> = h.rays().iter().map(|r| (pair(r), r[n].clone())).collect();
    let eqs: Vec<(QVec, Q)> = h.lineality().iter().map(|r| (pair(r), r[n].clone())).collect();
    let domain = Polyhedron::from_hrep(n, &ineqs, &eqs);
    let pieces = h.vertices().iter().map(|x| (x[..n].to_vec(), -x[n].clone())).collect();
    Ok(DualMap { domain, pieces })
}

/// `Ψ*` for every prime where `Ψ` is nonzero, plus the zero map under
/// the generic label.
pub fn dualize(psi: &DivisorialPolyhedron) -> Result<BTreeMap<String, DualMap>> {
    let mut out = BTreeMap::new();
    for p in psi.primes() {
        out.insert(p.clone(), dualize_at(psi, &p)?);
    }
    out.insert(crate::tvariety::GENERIC.into(), generic_dual(psi)?);
    Ok(out)
}

fn generic_dual(psi: &DivisorialPolyhedron) -> Result<DualMap> {
    let zero = PLDivisorMap::from_pieces::<&str>(psi.base().clone(), psi.domain().clone(), Vec::new())?;
    let g = psi.base().canonical_label("inf").or_else(|_| psi.base().canonical_label("0"))?;
    dualize_at(&zero, &g)
}

/// The contraction-free divisorial fan generated by `Δ_P ⊗ P + ∅ ⊗ (E − P)`
/// for `P ∈ 𝒫` and `Δ_P ∈ Ξ(Ψ_P*)`, together with `Ψ*`.
pub fn fan_from(psi: &DivisorialPolyhedron, marks: &[String]) -> Result<(DivisorialFan, BTreeMap<String, DualMap>)> {
    if marks.is_empty() {
        return Err(Error::Invalid("empty set of marked points".into()));
    }
    let base = psi.base().clone();
    let marks: Vec<String> = marks.iter().map(|m| base.canonical_label(m)).collect::<Result<_>>()?;
    for p in psi.primes() {
        if !marks.contains(&p) {
            return Err(Error::MarksMissingSupport(p));
        }
    }
    let mut duals = BTreeMap::new();
    let mut members = Vec::new();
    let n = psi.rank();
    for p in &marks {
        let dual = dualize_at(psi, p)?;
        for cell in dual.subdivision()?.maximal_cells() {
            let mut cs = Vec::new();
            cs.push((p.clone(), cell.clone()));
            for q in &marks {
                if q != p {
                    cs.push((q.clone(), Polyhedron::empty(n)));
                }
            }
            let tail = Cone::from_poly(cell.tail())?;
            members.push(PolyhedralDivisor::new(base.clone(), tail, cs)?);
        }
        duals.insert(p.clone(), dual);
    }
    duals.insert(crate::tvariety::GENERIC.into(), generic_dual(psi)?);
    let fan = DivisorialFan::new(base, members)?;
    Ok((fan, duals))
}

/// `Box[ū] = t(pr⁻¹(ū) ∩ ω)` and `Ψ[ū](u') = 𝒟(u' + s*(ū))`.
pub fn downgrade_box_psi(d: &PolyhedralDivisor, ctx: &DowngradeContext, ubar: &[Q]) -> Result<DivisorialPolyhedron> {
    if d.rank() != ctx.rank() {
        return Err(Error::AmbientMismatch(ctx.rank(), d.rank()));
    }
    let k = ctx.prime_rank();
    let pr = ctx.pr.to_rational();
    let eqs: Vec<(QVec, Q)> = pr.iter().cloned().zip(ubar.iter().cloned()).collect();
    let fiber = d.weight_cone().poly().restrict(&[], &eqs);
    if fiber.is_empty() {
        return Err(Error::WeightOutsideCone);
    }
    let bx = fiber.linear_image(&ctx.t(), k);
    let lift = ctx.split.section.apply(ubar);
    let iota = ctx.split.kernel.to_rational();
    let mut pieces = Vec::new();
    for (l, c) in d.coeffs() {
        if c.is_empty() {
            return Err(Error::EmptyCoefficient(l.clone()));
        }
        let ps: Vec<(QVec, Q)> = c
            .vertices()
            .iter()
            .map(|x| {
                let slope: QVec = (0..k).map(|j| iota.iter().zip(x).map(|(row, xi)| &row[j] * xi).sum()).collect();
                (slope, dot(x, &lift))
            })
            .collect();
        pieces.push((l.clone(), Some(ps)));
    }
    PLDivisorMap::from_pieces(d.base().clone(), bx, pieces)
}

/// `Ξ_P`: the coarsest subdivision of `π(𝒟_P)` refining `π(Δ)` for every face `Δ`.
pub fn xi_slice(d: &PolyhedralDivisor, ctx: &DowngradeContext, p: &str) -> PolyhedralComplex {
    let k = ctx.prime_rank();
    let pi = ctx.pi();
    let images: Vec<Polyhedron> = d.coeff(p).faces().iter().map(|f| f.linear_image(&pi, k)).collect();
    chamber_complex(k, &images)
}

/// Output of [`downgrade`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Downgrade {
    pub divisor: InvariantPDivisorOnFan,
    /// One weight `ū_i` per domain of linearity.
    pub weights: Vec<QVec>,
    pub psi: DivisorialPolyhedron,
    pub marks: Vec<String>,
    /// Properness of the upgrade of the result, which describes `X(𝒟)` again.
    pub report: ProperReport,
}

impl Downgrade {
    pub fn fan(&self) -> &DivisorialFan {
        self.divisor.fan()
    }
}

/// Lattice representative of a relative interior point of `pr(ω_i)`.
fn interior_weight(cell: &Polyhedron, pr: &Mat, m: usize) -> Result<QVec> {
    let img = cell.linear_image(pr, m);
    let w = img.relint_point().ok_or(Error::WeightOutsideCone)?;
    let l = lcm_denominators(&w);
    Ok(scale(&Q::from_integer(l), &w))
}

/// `𝒫`: the marked points of `d` plus `∞`, with a second point on `P¹`.
fn default_marks(d: &PolyhedralDivisor) -> Vec<String> {
    let base = d.base();
    let mut marks: BTreeSet<String> = d.coeffs().map(|(l, _)| l.clone()).collect();
    if let Ok(l) = base.canonical_label("inf") {
        marks.insert(l);
    }
    let need = if base.is_projective_line() { 2 } else { 1 };
    let mut k = 0i64;
    while marks.len() < need {
        if let Ok(l) = base.canonical_label(&Point::Finite(Q::from_integer(Int::from(k))).label()) {
            marks.insert(l);
        }
        k += 1;
    }
    marks.into_iter().collect()
}

pub fn downgrade(d: &PolyhedralDivisor, ctx: &DowngradeContext) -> Result<Downgrade> {
    downgrade_with_marks(d, ctx, &default_marks(d))
}

pub fn downgrade_with_marks(d: &PolyhedralDivisor, ctx: &DowngradeContext, marks: &[String]) -> Result<Downgrade> {
    if !d.base().is_curve() {
        return Err(Error::UnsupportedBase("downgrades need a curve".into()));
    }
    if let Some(p) = d.empty_primes().first() {
        return Err(Error::EmptyCoefficient(p.clone()));
    }
    if !d.is_proper()?.is_proper() {
        return Err(Error::NotProper);
    }
    if d.rank() != ctx.rank() {
        return Err(Error::AmbientMismatch(ctx.rank(), d.rank()));
    }
    let pr = ctx.pr.to_rational();
    let mut weights: Vec<QVec> = Vec::new();
    for cell in d.linearity_complex().maximal_cells() {
        let w = interior_weight(cell, &pr, ctx.bar_rank())?;
        if !weights.contains(&w) {
            weights.push(w);
        }
    }
    let mut psi: Option<PLDivisorMap> = None;
    for w in &weights {
        let part = downgrade_box_psi(d, ctx, w)?;
        psi = Some(match psi {
            None => part,
            Some(acc) => acc.sum(&part)?,
        });
    }
    let psi = psi.ok_or(Error::WeightOutsideCone)?;
    let (fan, _) = fan_from(&psi, marks)?;
    for p in fan.marked_primes() {
        let direct = xi_slice(d, ctx, &p);
        let a: BTreeSet<&Polyhedron> = direct.maximal_cells().iter().collect();
        let b = fan.slice(&p);
        let b: BTreeSet<&Polyhedron> = b.maximal_cells().iter().collect();
        if a != b {
            return Err(Error::SlicesDisagree(p));
        }
    }
    let k = ctx.prime_rank();
    let m = ctx.bar_rank();
    let pi = ctx.pi();
    let s = ctx.s();
    let tail = Cone::from_poly(d.tail().poly().fiber_slice(&pi, &zeros(k), &s, m))?;
    let rays: Vec<(QVec, Polyhedron)> =
        fan.rays().into_iter().map(|r| {
            let c = d.tail().poly().fiber_slice(&pi, &r, &s, m);
            (r, c)
        }).collect();
    let mut verts = Vec::new();
    for p in fan.marked_primes() {
        let c = d.coeff(&p);
        for v in fan.vertices(&p) {
            verts.push((p.clone(), v.clone(), c.fiber_slice(&pi, &v, &s, m)));
        }
    }
    let divisor = InvariantPDivisorOnFan::new(fan, tail, rays, verts)?;
    let report = upgrade(&divisor)?.report;
    Ok(Downgrade { divisor, weights, psi, marks: marks.to_vec(), report })
}

/// `d` in the coordinates `N̄ ⊕ N'` of the split.
pub fn in_split_coordinates(d: &PolyhedralDivisor, ctx: &DowngradeContext) -> Result<PolyhedralDivisor> {
    let a = ctx.split_coordinates();
    let n = d.rank();
    let tail = Cone::from_poly(d.tail().poly().linear_image(&a, n))?;
    let cs: Vec<(String, Polyhedron)> = d.coeffs().map(|(l, c)| (l.clone(), c.linear_image(&a, n))).collect();
    PolyhedralDivisor::new(d.base().clone(), tail, cs)
}

/// Identity check used by tests and callers: `pr ∘ s* = id` and `t ∘ ι = id`.
pub fn context_is_split(ctx: &DowngradeContext) -> bool {
    let pr = ctx.pr.to_rational();
    let sec = ctx.split.section.to_rational();
    let ps = linalg::mat_mul(&pr, &sec, ctx.bar_rank());
    let t = ctx.t();
    let ker = ctx.split.kernel.to_rational();
    let ti = linalg::mat_mul(&t, &ker, ctx.prime_rank());
    ps == linalg::identity(ctx.bar_rank()) && ti == linalg::identity(ctx.prime_rank())
}
