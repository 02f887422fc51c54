//! Upgrading an invariant p-divisor on `X(𝒮)` to a p-divisor of higher rank
//! over the base of `𝒮`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lp::{minimize, LpResult};
use crate::pdivisor::{PolyhedralDivisor, ProperReport};
use crate::polyhedra::{positive_hull, weighted_sum, Bound, Cone, Polyhedron};
use crate::rat::{concat, fmt_vec, primitive, zeros, QVec, Q};
use crate::tvariety::{DivisorialFan, TInvariantDivisor};

/// `𝒟 = Σ_ρ Δ_ρ ⊗ D_ρ + Σ_{P,v} μ(v)Δ_{P,v} ⊗ D_{P,v}` on `X(𝒮)`.
///
/// Coefficients not listed equal the tailcone `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPDivisorOnFan {
    fan: DivisorialFan,
    tail: Cone,
    rays: Vec<QVec>,
    ray_coeffs: BTreeMap<QVec, Polyhedron>,
    vertex_coeffs: BTreeMap<String, BTreeMap<QVec, Polyhedron>>,
}

impl InvariantPDivisorOnFan {
    pub fn new<S: AsRef<str>>(
        fan: DivisorialFan,
        tail: Cone,
        ray_coeffs: Vec<(QVec, Polyhedron)>,
        vertex_coeffs: Vec<(S, QVec, Polyhedron)>,
    ) -> Result<Self> {
        let rays = fan.ray_set()?;
        let n = tail.dim();
        let check = |p: &Polyhedron, at: String| -> Result<()> {
            if p.ambient_dim() != n {
                return Err(Error::AmbientMismatch(n, p.ambient_dim()));
            }
            if !p.is_empty() && p.tail() != *tail.poly() {
                return Err(Error::TailMismatch(at));
            }
            Ok(())
        };
        let mut rc = BTreeMap::new();
        for (r, p) in ray_coeffs {
            let r = primitive(&r);
            if !rays.contains(&r) {
                return Err(Error::Invalid(format!("{} does not define a prime divisor", fmt_vec(&r))));
            }
            check(&p, fmt_vec(&r))?;
            if rc.insert(r.clone(), p).is_some() {
                return Err(Error::Invalid(format!("ray {} listed twice", fmt_vec(&r))));
            }
        }
        let mut vc: BTreeMap<String, BTreeMap<QVec, Polyhedron>> = BTreeMap::new();
        for (l, v, p) in vertex_coeffs {
            let l = fan.base().canonical_label(l.as_ref())?;
            if !fan.vertices(&l).contains(&v) {
                return Err(Error::Invalid(format!("{} is not a vertex of the slice at {l}", fmt_vec(&v))));
            }
            check(&p, format!("{l},{}", fmt_vec(&v)))?;
            if vc.entry(l.clone()).or_default().insert(v, p).is_some() {
                return Err(Error::Invalid(format!("vertex at {l} listed twice")));
            }
        }
        rc.retain(|_, p| p != tail.poly());
        for m in vc.values_mut() {
            m.retain(|_, p| p != tail.poly());
        }
        vc.retain(|_, m| !m.is_empty());
        Ok(InvariantPDivisorOnFan { fan, tail, rays, ray_coeffs: rc, vertex_coeffs: vc })
    }

    pub fn fan(&self) -> &DivisorialFan {
        &self.fan
    }

    pub fn tail(&self) -> &Cone {
        &self.tail
    }

    /// `ray(𝒮)`.
    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }

    pub fn ray_coeff(&self, r: &[Q]) -> Polyhedron {
        self.ray_coeffs.get(&primitive(r)).cloned().unwrap_or_else(|| self.tail.poly().clone())
    }

    pub fn vertex_coeff(&self, p: &str, v: &[Q]) -> Polyhedron {
        self.vertex_coeffs.get(p).and_then(|m| m.get(v)).cloned().unwrap_or_else(|| self.tail.poly().clone())
    }

    /// Primes that need an explicit coefficient in the upgrade.
    fn primes(&self) -> Vec<String> {
        let mut ps = self.fan.marked_primes();
        for p in self.vertex_coeffs.keys() {
            if !ps.contains(p) {
                ps.push(p.clone());
            }
        }
        ps.sort();
        ps
    }

    /// The invariant divisor `𝒟(u)` on a contraction-free fan.
    pub fn evaluate(&self, u: &[Q]) -> Result<TInvariantDivisor> {
        if !self.tail.dual().contains(u) {
            return Err(Error::WeightOutsideCone);
        }
        let val = |p: &Polyhedron, at: String| match p.min_pairing(u) {
            Bound::Finite(x) => Ok(x),
            _ => Err(Error::EmptyCoefficient(at)),
        };
        let mut rays = Vec::new();
        for r in &self.rays {
            rays.push((r.clone(), val(&self.ray_coeff(r), fmt_vec(r))?));
        }
        let mut verts = Vec::new();
        for (p, m) in &self.vertex_coeffs {
            for (v, c) in m {
                verts.push((p.clone(), v.clone(), val(c, p.clone())?));
            }
        }
        TInvariantDivisor::new(&self.fan, rays, verts)
    }

    /// Pullback along the contraction `X(𝒮') → X(𝒮)` from the contraction-free
    /// model; the curve case only.
    ///
    /// The coefficient of a contracted ray is read off from the Cartier data of
    /// the member containing it and must be a nonnegative combination of the
    /// existing coefficients.
    pub fn pullback_to_contraction_free(&self) -> Result<InvariantPDivisorOnFan> {
        if self.fan.is_contraction_free() {
            return Ok(self.clone());
        }
        let model = self.fan.contraction_free_model()?;
        let n1 = self.fan.rank();
        let mut ray_coeffs: Vec<(QVec, Polyhedron)> =
            self.ray_coeffs.iter().map(|(r, p)| (r.clone(), p.clone())).collect();
        for r in self.fan.rays() {
            if self.rays.contains(&r) {
                continue;
            }
            let m = self
                .fan
                .members()
                .iter()
                .find(|m| !m.locus_divisor().has_infinity() && m.tail().contains(&r))
                .ok_or_else(|| Error::Invalid(format!("no member contracts {}", fmt_vec(&r))))?;
            let mut primes: Vec<String> = m.coeffs().map(|(l, _)| l.clone()).collect();
            for p in self.vertex_coeffs.keys() {
                if !primes.contains(p) {
                    primes.push(p.clone());
                }
            }
            let k = primes.len();
            // rows of the Cartier system in the unknowns (m, c_P), with the coefficient they equal
            let mut rows: Vec<(QVec, Option<Polyhedron>)> = Vec::new();
            for (i, p) in primes.iter().enumerate() {
                for v in m.coeff(p).vertices() {
                    let mut row = concat(v, &zeros(k));
                    row[n1 + i] = Q::from_integer(1.into());
                    rows.push((row, Some(self.vertex_coeff(p, v))));
                }
            }
            for s in &self.rays {
                if m.tail().contains(s) {
                    rows.push((concat(s, &zeros(k)), Some(self.ray_coeff(s))));
                }
            }
            let mut sum = zeros(n1 + k);
            for x in sum.iter_mut().skip(n1) {
                *x = Q::from_integer(1.into());
            }
            rows.push((sum, None));
            let target = concat(&r, &zeros(k));
            let nr = rows.len();
            let eqs: Vec<(QVec, Q)> =
                (0..n1 + k).map(|j| (rows.iter().map(|(row, _)| row[j].clone()).collect(), target[j].clone())).collect();
            let ineqs: Vec<(QVec, Q)> = (0..nr - 1)
                .map(|i| {
                    let mut e = zeros(nr);
                    e[i] = Q::from_integer(1.into());
                    (e, Q::zero())
                })
                .collect();
            let alpha = match minimize(&zeros(nr), &ineqs, &eqs) {
                LpResult::Optimal { x, .. } => x,
                _ => {
                    return Err(Error::Invalid(format!(
                        "pullback coefficient at {} is not a Minkowski combination",
                        fmt_vec(&r)
                    )))
                }
            };
            let terms: Vec<(Q, &Polyhedron)> = rows
                .iter()
                .zip(&alpha)
                .filter(|(_, a)| !a.is_zero())
                .filter_map(|((_, p), a)| p.as_ref().map(|p| (a.clone(), p)))
                .collect();
            let p = if terms.iter().any(|(_, p)| p.is_empty()) {
                Polyhedron::empty(self.rank())
            } else {
                weighted_sum(self.rank(), &terms).minkowski_sum(self.tail.poly())
            };
            ray_coeffs.push((r, p));
        }
        let mut verts = Vec::new();
        for (p, m) in &self.vertex_coeffs {
            for (v, c) in m {
                verts.push((p.clone(), v.clone(), c.clone()));
            }
        }
        InvariantPDivisorOnFan::new(model, self.tail.clone(), ray_coeffs, verts)
    }

    /// Rank of the lattice `N` of the acting torus.
    pub fn rank(&self) -> usize {
        self.tail.dim()
    }
}

/// `σ̃ = pos((σ × {0}) ∪ ⋃_ρ Δ_ρ × {v_ρ})` in `N ⊕ N'`.
pub fn upgrade_tailcone(d: &InvariantPDivisorOnFan) -> Cone {
    let n1 = d.fan.rank();
    let mut gens: Vec<QVec> = d.tail.rays().iter().map(|r| concat(r, &zeros(n1))).collect();
    let lin: Vec<QVec> = d.tail.lineality().iter().map(|r| concat(r, &zeros(n1))).collect();
    for r in &d.rays {
        let c = d.ray_coeff(r);
        gens.extend(c.vertices().iter().map(|x| concat(x, r)));
    }
    Cone::with_lineality(d.rank() + n1, &gens, &lin)
}

/// `Δ_P = conv{Δ_{P,v} × {v}} + σ̃`, on the base of the fan.
pub fn upgrade_coefficients(d: &InvariantPDivisorOnFan) -> Result<PolyhedralDivisor> {
    let tail = upgrade_tailcone(d);
    let dim = tail.dim();
    let mut coeffs = Vec::new();
    for p in d.primes() {
        let vs = d.fan.vertices(&p);
        let mut verts = Vec::new();
        for v in &vs {
            let c = d.vertex_coeff(&p, v);
            verts.extend(c.vertices().iter().map(|x| concat(x, v)));
        }
        let c = if verts.is_empty() {
            Polyhedron::empty(dim)
        } else {
            Polyhedron::hull(dim, &verts, &[]).minkowski_sum(tail.poly())
        };
        coeffs.push((p, c));
    }
    PolyhedralDivisor::new(d.fan.base().clone(), tail, coeffs)
}

/// Result of [`upgrade`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Upgrade {
    pub divisor: PolyhedralDivisor,
    pub report: ProperReport,
    pub contraction_free: bool,
    pub smooth_base: bool,
}

impl Upgrade {
    /// Properness is only guaranteed with a contraction-free fan over a smooth base.
    pub fn hypotheses_hold(&self) -> bool {
        self.contraction_free && self.smooth_base
    }
}

pub fn upgrade(d: &InvariantPDivisorOnFan) -> Result<Upgrade> {
    let divisor = upgrade_coefficients(d)?;
    let report = divisor.is_proper()?;
    Ok(Upgrade {
        divisor,
        report,
        contraction_free: d.fan.is_contraction_free(),
        smooth_base: d.fan.base().is_smooth(),
    })
}

/// `Σ (Δ_P + σ̂) ⊗ P` with `σ̂ = pos(Σ deg(P) Δ_P)`.
pub fn correct_pic_z(d: &PolyhedralDivisor) -> Result<(PolyhedralDivisor, ProperReport)> {
    let deg = d.degree_polyhedron()?;
    let hat = positive_hull(&deg);
    let out = d.widen_tail(&hat)?;
    let report = out.is_proper()?;
    Ok((out, report))
}

/// Generators of the weight cone `σ̃^∨`.
pub fn upgraded_weight_generators(d: &InvariantPDivisorOnFan) -> Vec<QVec> {
    upgrade_tailcone(d).dual().all_generators()
}
