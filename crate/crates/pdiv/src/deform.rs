//! Deformations of affine toric varieties given by Minkowski decompositions,
//! as families of T-varieties over `P¹ × 𝔸^l`, and the upgrade of the total
//! space to the full torus over the blowup of `P^l` at the origin.
//!
//! Everything lives in split coordinates `Ñ = N ⊕ ℤ` where `r₀` is the last
//! coordinate and `r = k·r₀`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::base::{Base, ExtraPrime, RationalFunction, ToricBase};
use crate::error::{Error, Result};
use crate::lattice::LatticeMap;
use crate::linalg::{self, Mat};
use crate::pdivisor::{BaseMap, PolyhedralDivisor, PrincipalPolyhedralDivisor, ProperReport, PullbackTriple};
use crate::polyhedra::{Cone, Polyhedron};
use crate::rat::{gcd_numerators, is_integral, is_zero_vec, lcm_denominators, primitive, scale, unit, zeros, Int, QVec, Q};
use crate::tvariety::DivisorialFan;
use crate::upgrade::{upgrade, InvariantPDivisorOnFan};

/// `δ`, `r = k·r₀` and a decomposition `Δ₀, …, Δ_l` of `δ_r`.
///
/// Without multiplicities, `δ_r = (Δ₀,1/k) + (Δ₁,0) + ⋯ + (Δ_l,0)`. With
/// multiplicities `k₁, …, k_l`, `Δ⁺ = Δ₀ + k₁Δ₁ + ⋯ + k_lΔ_l` and `k` is their gcd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationInput {
    delta: Cone,
    k: u32,
    parts: Vec<Polyhedron>,
    mults: Option<Vec<u32>>,
    sigma: Cone,
    plus: Polyhedron,
    minus: Polyhedron,
}

impl DeformationInput {
    pub fn new(delta: Cone, k: u32, parts: Vec<Polyhedron>) -> Result<Self> {
        Self::build(delta, k, parts, None)
    }

    /// The mixed case; `parts[i]` enters `Δ⁺` with multiplicity `mults[i-1]`.
    pub fn mixed(delta: Cone, parts: Vec<Polyhedron>, mults: Vec<u32>) -> Result<Self> {
        if mults.is_empty() || mults.len() + 1 != parts.len() {
            return Err(Error::Invalid("one multiplicity per deformation parameter".into()));
        }
        if mults.contains(&0) {
            return Err(Error::Invalid("multiplicities must be positive".into()));
        }
        let k = mults.iter().fold(0u32, |a, &b| a.gcd(&b));
        Self::build(delta, k, parts, Some(mults))
    }

    fn build(delta: Cone, k: u32, parts: Vec<Polyhedron>, mults: Option<Vec<u32>>) -> Result<Self> {
        let n1 = delta.dim();
        if n1 == 0 {
            return Err(Error::Invalid("δ lives in a lattice of rank zero".into()));
        }
        if k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        if parts.is_empty() {
            return Err(Error::Invalid("the decomposition needs Δ₀".into()));
        }
        let n = n1 - 1;
        let slice = |h: i64| -> Polyhedron {
            let proj: Mat = (0..n).map(|i| unit(n1, i)).collect();
            delta.poly().cross_section(&unit(n1, n), &Q::from_integer(Int::from(h))).linear_image(&proj, n)
        };
        let sigma = Cone::from_poly(slice(0))?;
        let plus = slice(1);
        let minus = slice(-1);
        for (i, p) in parts.iter().enumerate() {
            if p.ambient_dim() != n {
                return Err(Error::AmbientMismatch(n, p.ambient_dim()));
            }
            if p.is_empty() || p.tail() != *sigma.poly() {
                return Err(Error::TailMismatch(format!("Δ{i}")));
            }
        }
        let din = DeformationInput { delta, k, parts, mults, sigma, plus, minus };
        let mut sum = din.d0_coefficient();
        for i in 1..din.parts.len() {
            sum = sum.minkowski_sum(&din.parts[i].scale(&din.multiplicity(i)));
        }
        if sum != din.plus {
            return Err(Error::SumMismatch);
        }
        Ok(din)
    }

    /// Rank of `N`.
    pub fn rank(&self) -> usize {
        self.delta.dim() - 1
    }

    /// Number `l` of deformation parameters.
    pub fn parameters(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn delta(&self) -> &Cone {
        &self.delta
    }

    pub fn parts(&self) -> &[Polyhedron] {
        &self.parts
    }

    pub fn is_mixed(&self) -> bool {
        self.mults.is_some()
    }

    /// `σ = δ ∩ (N_ℚ, 0)`.
    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    pub fn delta_plus(&self) -> &Polyhedron {
        &self.plus
    }

    /// Empty when `r ∈ δ^∨`.
    pub fn delta_minus(&self) -> &Polyhedron {
        &self.minus
    }

    /// The degree `r = (0, …, 0, k)`.
    pub fn r(&self) -> QVec {
        scale(&Q::from_integer(Int::from(self.k)), &unit(self.rank() + 1, self.rank()))
    }

    /// `k_i`; equal to `k` without multiplicities.
    pub fn multiplicity(&self, i: usize) -> Q {
        let m = match &self.mults {
            Some(ms) => ms[i - 1],
            None => self.k,
        };
        Q::from_integer(Int::from(m))
    }

    /// Coefficient of `D₀` in `ℰ`.
    pub fn d0_coefficient(&self) -> Polyhedron {
        match self.mults {
            Some(_) => self.parts[0].clone(),
            None => self.parts[0].scale(&Q::from_integer(Int::from(self.k))),
        }
    }

    fn kq(&self) -> Q {
        Q::from_integer(Int::from(self.k))
    }

    fn h(&self, i: usize) -> Int {
        (self.multiplicity(i) / self.kq()).to_integer()
    }
}

/// Outcome of [`check_admissible`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    /// `Δ_i` has a non-integral vertex although `k > 1`.
    NotLattice(usize),
    /// At the weight `u`, the listed summands have lattice-free `u`-faces.
    LatticeFreeFaces { weight: QVec, summands: Vec<usize> },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Scans one weight from every cell of the normal fan of `Δ⁺`, which refines
/// the normal fans of all summands. Summand `0` is `(Δ₀, 1/k)`, lattice-free
/// whenever `k > 1`.
pub fn check_admissible(din: &DeformationInput) -> Admissibility {
    if din.k > 1 {
        for (i, p) in din.parts.iter().enumerate().skip(1) {
            if !p.vertices().iter().all(|v| is_integral(v)) {
                return Admissibility::NotLattice(i);
            }
        }
    }
    let e0 = din.d0_coefficient();
    for f in din.plus.faces() {
        let x = f.relint_point().expect("nonempty face");
        let mut u = zeros(din.rank());
        for (a, b) in din.plus.inequalities() {
            if crate::rat::dot(a, &x) == *b {
                u = crate::rat::add(&u, a);
            }
        }
        let u = scale(&Q::from_integer(lcm_denominators(&u)), &u);
        let mut free = Vec::new();
        for (i, p) in din.parts.iter().enumerate() {
            let lattice_free = if i == 0 {
                din.k > 1 || e0.face(&u).find_lattice_point().is_none()
            } else {
                p.face(&u).find_lattice_point().is_none()
            };
            if lattice_free {
                free.push(i);
            }
        }
        if free.len() > 1 {
            return Admissibility::LatticeFreeFaces { weight: u, summands: free };
        }
    }
    Admissibility::Admissible
}

fn require_admissible(din: &DeformationInput) -> Result<()> {
    if check_admissible(din).is_admissible() {
        Ok(())
    } else {
        Err(Error::NotAdmissible)
    }
}

/// `Y = P¹ × 𝔸^l` with rays `D0`, `Dinf`, `Y1, …` and the extra primes
/// `D_i = V(x₁^{k_i} − y_i x₀^{k_i})`.
pub fn family_base(din: &DeformationInput) -> Result<Base> {
    let l = din.parameters();
    let dim = l + 1;
    let mut rays = vec![("D0".to_string(), unit(dim, 0)), ("Dinf".to_string(), scale(&-Q::one(), &unit(dim, 0)))];
    for i in 1..=l {
        rays.push((format!("Y{i}"), unit(dim, i)));
    }
    let ys: Vec<usize> = (2..2 + l).collect();
    let cones = vec![[vec![0], ys.clone()].concat(), [vec![1], ys].concat()];
    let mut t = ToricBase::new(dim, rays, cones)?.with_semiprojective(true);
    for i in 1..=l {
        let ki = din.multiplicity(i).to_integer();
        t = t.with_extra(ExtraPrime {
            label: format!("D{i}"),
            equation: format!("x1^{ki} - y{i}*x0^{ki}"),
            invariant_orders: [("Dinf".to_string(), -ki)].into_iter().collect(),
        });
    }
    Ok(Base::Toric(t))
}

/// `ℰ = kΔ₀ ⊗ D₀ + Δ₁ ⊗ D₁ + ⋯ + Δ_l ⊗ D_l + Δ⁻ ⊗ D_∞` on `P¹ × 𝔸^l`.
pub fn family_pdivisor(din: &DeformationInput) -> Result<PolyhedralDivisor> {
    require_admissible(din)?;
    let base = family_base(din)?;
    let mut cs = vec![("D0".to_string(), din.d0_coefficient()), ("Dinf".to_string(), din.minus.clone())];
    for i in 1..=din.parameters() {
        cs.push((format!("D{i}"), din.parts[i].clone()));
    }
    PolyhedralDivisor::new(base, din.sigma.clone(), cs)
}

/// The restriction of `ℰ` to a general fiber, on `P¹`.
///
/// `D_i` meets the fiber in `k_i` distinct points; they are placed at the
/// rational points `1, 2, …`, which does not change any graded dimension.
pub fn generic_fiber(din: &DeformationInput) -> Result<PolyhedralDivisor> {
    let mut cs = vec![("0".to_string(), din.d0_coefficient()), ("inf".to_string(), din.minus.clone())];
    let mut next = 1i64;
    for i in 1..=din.parameters() {
        let ki = din.multiplicity(i).to_integer();
        let mut j = Int::zero();
        while j < ki {
            cs.push((format!("{next}"), din.parts[i].clone()));
            next += 1;
            j += 1;
        }
    }
    PolyhedralDivisor::new(Base::ProjectiveLine, din.sigma.clone(), cs)
}

/// A `T'`-invariant prime divisor on the contraction-free model.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum InvariantPrime {
    /// `D_ρ`, horizontal.
    Ray(QVec),
    /// `D_{(P,v)}`, vertical.
    Vertex(String, QVec),
}

/// `Z`, the contraction-free fan `𝒮` of `Ỹ → Z` and the pullbacks of the
/// primes of `ℰ` to `Ỹ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyBase {
    pub base: Base,
    pub fan: DivisorialFan,
    pub p0: String,
    /// `P₁, …, P_l`.
    pub p: Vec<String>,
    pub q: String,
    /// All primes of `Z` that carry a coefficient.
    pub labels: Vec<String>,
    /// `D̃` for `D0`, `D1, …` and `Dinf` (when `Δ⁻ ≠ ∅`).
    pub pullbacks: BTreeMap<String, Vec<(InvariantPrime, Int)>>,
}

struct ZModel {
    base: Base,
    labels: Vec<String>,
    rays: Vec<QVec>,
    cones: Vec<Vec<usize>>,
    p0: String,
    p: Vec<String>,
    q: String,
}

/// `Bl_O P(1, h₁, …, h_l)`; the projective line when `l = 1`.
fn z_model(din: &DeformationInput) -> Result<ZModel> {
    let l = din.parameters();
    let h: QVec = (1..=l).map(|i| Q::from_integer(din.h(i))).collect();
    if l == 1 {
        return Ok(ZModel {
            base: Base::ProjectiveLine,
            labels: vec!["0".into(), "inf".into()],
            rays: vec![vec![-Q::one()], vec![Q::one()]],
            cones: vec![vec![0], vec![1]],
            p0: "0".into(),
            p: vec!["1".into()],
            q: "inf".into(),
        });
    }
    let mut labels = vec!["P0".to_string()];
    let mut rays = vec![scale(&-Q::one(), &h)];
    for i in 1..=l {
        labels.push(format!("H{i}"));
        rays.push(unit(l, i - 1));
    }
    labels.push("Q".into());
    rays.push(h.clone());
    let q = l + 1;
    let mut cones = Vec::new();
    for top in [0, q] {
        for j in 1..=l {
            let mut c = vec![top];
            c.extend((1..=l).filter(|&i| i != j));
            c.sort();
            cones.push(c);
        }
    }
    let named: Vec<(String, QVec)> = labels.iter().cloned().zip(rays.iter().cloned()).collect();
    let mut t = ToricBase::new(l, named, cones.clone())?.with_semiprojective(true);
    for i in 1..=l {
        let hi = din.h(i);
        t = t.with_extra(ExtraPrime {
            label: format!("P{i}"),
            equation: format!("y0^{hi} - y{i}"),
            invariant_orders: [("P0".to_string(), -hi)].into_iter().collect(),
        });
    }
    Ok(ZModel {
        base: Base::Toric(t),
        labels,
        rays,
        cones,
        p0: "P0".into(),
        p: (1..=l).map(|i| format!("P{i}")).collect(),
        q: "Q".into(),
    })
}

/// `ℤ^{1+l} → ℤ^l`, `(a, b) ↦ b − a·(k₁, …, k_l)`, with kernel spanned by the
/// `T'`-cocharacter, and the retraction `(a, b) ↦ a`.
fn quotient_maps(din: &DeformationInput) -> (Mat, Mat) {
    let l = din.parameters();
    let pr: Mat = (1..=l)
        .map(|i| {
            let mut row = unit(l + 1, i);
            row[0] = -din.multiplicity(i);
            row
        })
        .collect();
    let rt: Mat = vec![unit(l + 1, 0)];
    (pr, rt)
}

/// Maximal cones of `Ỹ`, the blowup of `Y` along the origin and along
/// `P¹ × {0}`.
fn model_cones(din: &DeformationInput) -> (Vec<QVec>, Vec<Vec<usize>>) {
    let l = din.parameters();
    let w: QVec = [vec![Q::one()], (1..=l).map(|i| din.multiplicity(i)).collect()].concat();
    let f0 = unit(l + 1, 0);
    let g: QVec = [vec![Q::zero()], (1..=l).map(|i| Q::from_integer(din.h(i))).collect()].concat();
    let mut rays = vec![w, f0.clone(), g];
    let (w, f0, g) = (0, 1, 2);
    let neg = if din.minus.is_empty() {
        None
    } else {
        rays.push(scale(&-Q::one(), &rays[f0]));
        Some(rays.len() - 1)
    };
    let mut cones = Vec::new();
    if l == 1 {
        cones.push(vec![w, f0]);
        cones.push(vec![w, g]);
        if let Some(m) = neg {
            cones.push(vec![m, g]);
        }
        return (rays, cones);
    }
    let first = rays.len();
    for i in 1..=l {
        rays.push(unit(l + 1, i));
    }
    for j in 1..=l {
        let others: Vec<usize> = (1..=l).filter(|&i| i != j).map(|i| first + i - 1).collect();
        cones.push([vec![w, f0], others.clone()].concat());
        cones.push([vec![w, g], others.clone()].concat());
        if let Some(m) = neg {
            cones.push([vec![m, g], others].concat());
        }
    }
    (rays, cones)
}

/// The fan `𝒮` of `Ỹ` over `Z`, with slices `𝒮_{P₀} = [1/k,∞)`,
/// `𝒮_{P_i} = [0,∞)` and `𝒮_Q = [−1/k,0] ∪ [0,∞)`.
pub fn family_base_fan(din: &DeformationInput) -> Result<FamilyBase> {
    require_admissible(din)?;
    let l = din.parameters();
    if l == 0 {
        return Err(Error::Invalid("no deformation parameters".into()));
    }
    let z = z_model(din)?;
    let (pr, rt) = quotient_maps(din);
    let (yrays, ycones) = model_cones(din);
    let mut members = Vec::new();
    for c in &ycones {
        let gens: Vec<QVec> = c.iter().map(|&i| yrays[i].clone()).collect();
        let cone = Cone::new(l + 1, &gens);
        let image: BTreeSet<QVec> = gens
            .iter()
            .map(|g| linalg::mat_vec(&pr, g))
            .filter(|v| !is_zero_vec(v))
            .map(|v| primitive(&v))
            .collect();
        let tau = z
            .cones
            .iter()
            .find(|zc| zc.iter().map(|&i| z.rays[i].clone()).collect::<BTreeSet<_>>() == image)
            .ok_or_else(|| Error::Invalid("cone of the model maps onto no cone of Z".into()))?;
        let tail = Cone::from_poly(cone.poly().fiber_slice(&pr, &zeros(l), &rt, 1))?;
        let coeffs: Vec<(String, Polyhedron)> = (0..z.labels.len())
            .map(|i| {
                let c = if tau.contains(&i) {
                    cone.poly().fiber_slice(&pr, &z.rays[i], &rt, 1)
                } else {
                    Polyhedron::empty(1)
                };
                (z.labels[i].clone(), c)
            })
            .collect();
        members.push(PolyhedralDivisor::new(z.base.clone(), tail, coeffs)?);
    }
    let fan = DivisorialFan::new(z.base.clone(), members)?.with_semicomplete(false);
    let classify = |v: &QVec| -> InvariantPrime {
        let p = linalg::mat_vec(&pr, v);
        let a = linalg::mat_vec(&rt, v);
        if is_zero_vec(&p) {
            return InvariantPrime::Ray(primitive(&a));
        }
        let mu = Q::from_integer(gcd_numerators(&p));
        let nu = scale(&(Q::one() / &mu), &p);
        let i = z.rays.iter().position(|r| *r == nu).expect("ray of Z");
        InvariantPrime::Vertex(z.labels[i].clone(), scale(&(Q::one() / &mu), &a))
    };
    let mut pullbacks: BTreeMap<String, Vec<(InvariantPrime, Int)>> = BTreeMap::new();
    let mut add = |key: String, v: &QVec, o: Int| {
        if !o.is_zero() {
            pullbacks.entry(key).or_default().push((classify(v), o));
        }
    };
    for v in &yrays {
        let a = v[0].to_integer();
        add("D0".into(), v, a.clone().max(Int::zero()));
        if !din.minus.is_empty() {
            add("Dinf".into(), v, (-a.clone()).max(Int::zero()));
        }
        for i in 1..=l {
            let ki = din.multiplicity(i).to_integer();
            let o = (&ki * &a).min(v[i].to_integer()) - &ki * a.clone().min(Int::zero());
            add(format!("D{i}"), v, o);
        }
    }
    for (i, p) in z.p.iter().enumerate() {
        pullbacks.entry(format!("D{}", i + 1)).or_default().push((InvariantPrime::Vertex(p.clone(), vec![Q::zero()]), Int::one()));
    }
    for v in pullbacks.values_mut() {
        v.sort();
    }
    let labels = [z.labels.clone(), z.p.clone()].concat();
    Ok(FamilyBase { base: z.base, fan, p0: z.p0, p: z.p, q: z.q, labels, pullbacks })
}

/// `ℰ'` on `Ỹ`: `Δ⁺ ⊗ D_ρ + Δ₀ ⊗ kD_{(P₀,1/k)} + Σ Δ_i ⊗ D_{(P_i,0)} + (1/k)Δ⁻ ⊗ kD_{(Q,−1/k)}`.
pub fn invariant_family_divisor(din: &DeformationInput, fb: &FamilyBase) -> Result<InvariantPDivisorOnFan> {
    let kinv = Q::one() / din.kq();
    let mut verts = vec![(fb.p0.clone(), vec![kinv.clone()], din.d0_coefficient().scale(&kinv))];
    for (i, p) in fb.p.iter().enumerate() {
        verts.push((p.clone(), vec![Q::zero()], din.parts[i + 1].clone()));
    }
    if !din.minus.is_empty() {
        verts.push((fb.q.clone(), vec![-kinv.clone()], din.minus.scale(&kinv)));
    }
    InvariantPDivisorOnFan::new(fb.fan.clone(), din.sigma.clone(), vec![(vec![Q::one()], din.plus.clone())], verts)
}

/// `σ̃ = δ ∩ [r₀ ≥ 0]`.
pub fn upgraded_tail(din: &DeformationInput) -> Result<Cone> {
    let n1 = din.rank() + 1;
    Cone::from_poly(din.delta.poly().restrict(&[(unit(n1, n1 - 1), Q::zero())], &[]))
}

/// The upgraded divisor read off from the closed formulas:
/// `Δ_{P₀} = (Δ₀,1/k) + σ̃`, `Δ_{P_i} = (Δ_i,0) + σ̃` and
/// `Δ_Q = conv{((1/k)Δ⁻,−1/k), (0,0)} + σ̃`.
pub fn upgrade_formulas(din: &DeformationInput) -> Result<PolyhedralDivisor> {
    require_admissible(din)?;
    let z = z_model(din)?;
    let tail = upgraded_tail(din)?;
    let kinv = Q::one() / din.kq();
    let at = |p: &Polyhedron, h: Q| p.product(&Polyhedron::point(&[h])).minkowski_sum(tail.poly());
    let mut cs = vec![(z.p0.clone(), at(&din.parts[0], kinv.clone()))];
    for (i, p) in z.p.iter().enumerate() {
        cs.push((p.clone(), at(&din.parts[i + 1], Q::zero())));
    }
    let dq = if din.minus.is_empty() {
        tail.poly().clone()
    } else {
        let low = din.minus.scale(&kinv).product(&Polyhedron::point(&[-kinv]));
        let mut verts = low.vertices().to_vec();
        verts.push(zeros(din.rank() + 1));
        Polyhedron::hull(din.rank() + 1, &verts, low.rays()).minkowski_sum(tail.poly())
    };
    cs.push((z.q.clone(), dq));
    PolyhedralDivisor::new(z.base, tail, cs)
}

/// Result of [`deformation_upgrade`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationUpgrade {
    pub divisor: PolyhedralDivisor,
    pub report: ProperReport,
    pub family: FamilyBase,
}

/// The total space as a `T̃`-variety over `Z`, computed by upgrading `ℰ'` and
/// checked against [`upgrade_formulas`].
pub fn deformation_upgrade(din: &DeformationInput) -> Result<DeformationUpgrade> {
    let family = family_base_fan(din)?;
    let inv = invariant_family_divisor(din, &family)?;
    let up = upgrade(&inv)?;
    let direct = upgrade_formulas(din)?;
    if up.divisor.tail() != direct.tail() {
        return Err(Error::RoutesDisagree("tail".into()));
    }
    let mut labels: BTreeSet<String> = family.labels.iter().cloned().collect();
    labels.extend(up.divisor.coeffs().map(|(l, _)| l.clone()));
    labels.extend(direct.coeffs().map(|(l, _)| l.clone()));
    for l in labels {
        if up.divisor.coeff(&l) != direct.coeff(&l) {
            return Err(Error::RoutesDisagree(l));
        }
    }
    Ok(DeformationUpgrade { divisor: up.divisor, report: up.report, family })
}

/// `𝔸^l` as a `ℂ*`-variety together with the triple `(π, r, 𝔣)` of the
/// structure map, `𝔣(1) = P₀ − π*H − Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMap {
    pub target: PolyhedralDivisor,
    pub triple: PullbackTriple,
}

/// Only without multiplicities.
pub fn structure_map(din: &DeformationInput) -> Result<StructureMap> {
    require_admissible(din)?;
    let l = din.parameters();
    if l == 0 {
        return Err(Error::Invalid("no deformation parameters".into()));
    }
    if (1..=l).any(|i| !din.h(i).is_one()) {
        return Err(Error::UnsupportedBase("structure map with unequal multiplicities".into()));
    }
    let n1 = din.rank() + 1;
    let r: Vec<i64> = din.r().iter().map(|x| i64::try_from(x.to_integer()).expect("small degree")).collect();
    let lattice_map = LatticeMap::from_i64(n1, &[&r]);
    let half_line = Cone::new(1, &[vec![Q::one()]]);
    let z = z_model(din)?;
    if l == 1 {
        let target = PolyhedralDivisor::trivial(Base::Toric(ToricBase::point()), half_line);
        let triple = PullbackTriple {
            base_map: BaseMap::Curve { source: z.base, preimages: BTreeMap::new() },
            lattice_map,
            shift: PrincipalPolyhedralDivisor::new(vec![(vec![Q::one()], RationalFunction::from_factors(0, &[("0", 1)]))]),
        };
        return Ok(StructureMap { target, triple });
    }
    let d = l - 1;
    let mut rays: Vec<(String, QVec)> = (0..d).map(|i| (format!("H{}", i + 1), unit(d, i))).collect();
    rays.push((format!("H{l}"), vec![-Q::one(); d]));
    let cones: Vec<Vec<usize>> = (0..l).map(|skip| (0..l).filter(|&i| i != skip).collect()).collect();
    let pl = Base::Toric(ToricBase::new(d, rays, cones)?.with_semiprojective(true));
    let hl = Polyhedron::hull(1, &[vec![Q::one()]], &[vec![Q::one()]]);
    let target = PolyhedralDivisor::new(pl, half_line, vec![(format!("H{l}"), hl)])?;
    let rows: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..l).map(|j| if j == i { 1 } else if j == l - 1 { -1 } else { 0 }).collect())
        .collect();
    let row_refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    let pi = LatticeMap::from_i64(l, &row_refs);
    let mut m = vec![Int::zero(); l];
    m[l - 1] = -Int::one();
    let triple = PullbackTriple {
        base_map: BaseMap::Toric { source: z.base, lattice: pi },
        lattice_map,
        shift: PrincipalPolyhedralDivisor::new(vec![(vec![Q::one()], RationalFunction::character(m))]),
    };
    Ok(StructureMap { target, triple })
}
