//! Divisorial fans and invariant divisors on the T-varieties they define.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::base::{Base, Coef, Point, QDivisor, RationalFunction, Sections};
use crate::error::{Error, Result};
use crate::lattice::multiplicity;
use crate::linalg;
use crate::lp::{minimize, LpResult};
use crate::pdivisor::PolyhedralDivisor;
use crate::polyhedra::{Cone, PolyhedralComplex, Polyhedron};
use crate::rat::{concat, dot, fmt_vec, is_integral, primitive, scale, zeros, Int, QVec, Q};

/// Label used for the class of points outside every marked prime.
pub const GENERIC: &str = "generic";

/// A finite set of polyhedral divisors on a common base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorialFan {
    base: Base,
    rank: usize,
    members: Vec<PolyhedralDivisor>,
    slices: BTreeMap<String, PolyhedralComplex>,
    tailfan: PolyhedralComplex,
    semicomplete: bool,
}

impl DivisorialFan {
    pub fn new(base: Base, members: Vec<PolyhedralDivisor>) -> Result<Self> {
        let rank = members.first().map(|m| m.rank()).ok_or_else(|| Error::Invalid("fan without members".into()))?;
        for m in &members {
            if m.rank() != rank {
                return Err(Error::AmbientMismatch(rank, m.rank()));
            }
            if *m.base() != base {
                return Err(Error::Invalid("members live on different bases".into()));
            }
        }
        let tails: Vec<Polyhedron> = members.iter().map(|m| m.tail().poly().clone()).collect();
        check_cells(&tails, "tail fan")?;
        let tailfan = PolyhedralComplex::new(rank, members.iter().map(|m| m.tail().poly().clone()).collect())
            .map_err(|_| Error::NotAComplex("tail fan".into()))?;
        let mut marked: BTreeSet<String> = members.iter().flat_map(|m| m.coeffs().map(|(l, _)| l.clone())).collect();
        if let Base::Toric(t) = &base {
            marked.extend(t.rays.iter().map(|(l, _)| l.clone()));
            marked.extend(t.extra.iter().map(|e| e.label.clone()));
        }
        let mut slices = BTreeMap::new();
        for p in marked {
            let cells: Vec<Polyhedron> = members.iter().map(|m| m.coeff(&p)).filter(|c| !c.is_empty()).collect();
            check_cells(&cells, &p)?;
            let cx = PolyhedralComplex::new(rank, cells).map_err(|_| Error::NotAComplex(p.clone()))?;
            slices.insert(p, cx);
        }
        Ok(DivisorialFan { base, rank, members, slices, tailfan, semicomplete: false })
    }

    /// Records the caller's assertion that `X(𝒮)` is semicomplete.
    pub fn with_semicomplete(mut self, flag: bool) -> Self {
        self.semicomplete = flag;
        self
    }

    pub fn semicomplete(&self) -> bool {
        self.semicomplete
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn members(&self) -> &[PolyhedralDivisor] {
        &self.members
    }

    pub fn tailfan(&self) -> &PolyhedralComplex {
        &self.tailfan
    }

    /// Primes whose slice may differ from the tail fan.
    pub fn marked_primes(&self) -> Vec<String> {
        self.slices.keys().cloned().collect()
    }

    /// The slice `𝒮_P`; unmarked primes carry the tail fan.
    pub fn slice(&self, label: &str) -> PolyhedralComplex {
        self.slices.get(label).cloned().unwrap_or_else(|| self.tailfan.clone())
    }

    pub fn is_contraction_free(&self) -> bool {
        self.members.iter().all(|m| self.base.locus_affine(&m.locus_divisor()))
    }

    /// Primitive generators of the rays of the tail fan.
    pub fn rays(&self) -> Vec<QVec> {
        let set: BTreeSet<QVec> = self.tailfan.rays().iter().map(|r| primitive(r)).collect();
        set.into_iter().collect()
    }

    /// Vertices of `𝒮_P`.
    pub fn vertices(&self, label: &str) -> Vec<QVec> {
        let set: BTreeSet<QVec> =
            self.slice(label).maximal_cells().iter().flat_map(|c| c.vertices().iter().cloned()).collect();
        set.into_iter().collect()
    }

    /// `ray(𝒮)` and `vert_P(𝒮)` for the marked primes.
    pub fn invariant_prime_divisors(&self) -> Result<(Vec<QVec>, BTreeMap<String, Vec<QVec>>)> {
        if !self.is_contraction_free() {
            return Err(Error::NotContractionFree);
        }
        if self.members.iter().any(|m| !m.tail().is_pointed()) {
            return Err(Error::Invalid("tail cones must be pointed".into()));
        }
        let verts = self.slices.keys().map(|p| (p.clone(), self.vertices(p))).collect();
        Ok((self.rays(), verts))
    }

    /// `ray(𝒮)`: every tail ray on contraction-free fans; on curves, the rays
    /// missing `deg 𝒟` for every member `𝒟` with complete locus whose tail
    /// contains them.
    pub fn ray_set(&self) -> Result<Vec<QVec>> {
        if self.is_contraction_free() {
            return Ok(self.rays());
        }
        if !self.base.is_projective_line() {
            return Err(Error::NotContractionFree);
        }
        let mut out = Vec::new();
        for r in self.rays() {
            let line = Polyhedron::cone(self.rank, &[r.clone()]);
            let contracted = self.members.iter().any(|m| {
                !m.locus_divisor().has_infinity()
                    && m.tail().contains(&r)
                    && m.degree_polyhedron().is_ok_and(|d| !d.intersect(&line).is_empty())
            });
            if !contracted {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// A contraction-free fan with the same slices.
    ///
    /// On the projective line every member with complete locus is split into
    /// two members, each with one empty coefficient.
    pub fn contraction_free_model(&self) -> Result<DivisorialFan> {
        if self.is_contraction_free() {
            return Ok(self.clone());
        }
        if !self.base.is_projective_line() {
            return Err(Error::UnsupportedBase("contraction-free models over this base".into()));
        }
        let mut pts: Vec<String> = self.marked_primes();
        let mut k = 0i64;
        while pts.len() < 2 {
            let l = Point::Finite(Q::from_integer(Int::from(k))).label();
            if !pts.contains(&l) {
                pts.push(l);
            }
            k += 1;
        }
        let mut members = Vec::new();
        for m in &self.members {
            if self.base.locus_affine(&m.locus_divisor()) {
                members.push(m.clone());
                continue;
            }
            for p in &pts[..2] {
                let mut cs: Vec<(String, Polyhedron)> = m.coeffs().map(|(l, c)| (l.clone(), c.clone())).collect();
                cs.retain(|(l, _)| l != p);
                cs.push((p.clone(), Polyhedron::empty(self.rank)));
                members.push(PolyhedralDivisor::new(self.base.clone(), m.tail().clone(), cs)?);
            }
        }
        Ok(DivisorialFan::new(self.base.clone(), members)?.with_semicomplete(self.semicomplete))
    }
}

/// Pairwise intersections must be faces of both cells.
fn check_cells(cells: &[Polyhedron], at: &str) -> Result<()> {
    for (i, a) in cells.iter().enumerate() {
        for b in &cells[i + 1..] {
            let x = a.intersect(b);
            if !x.is_empty() && !(a.has_face(&x) && b.has_face(&x)) {
                return Err(Error::NotAComplex(at.to_string()));
            }
        }
    }
    Ok(())
}

/// `D = Σ a_ρ D_ρ + Σ μ(v) b_{P,v} D_{P,v}` on a contraction-free fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TInvariantDivisor {
    fan: DivisorialFan,
    rays: BTreeMap<QVec, Q>,
    verts: BTreeMap<String, BTreeMap<QVec, Q>>,
}

impl TInvariantDivisor {
    pub fn new<S: AsRef<str>>(fan: &DivisorialFan, rays: Vec<(QVec, Q)>, verts: Vec<(S, QVec, Q)>) -> Result<Self> {
        let (all_rays, _) = fan.invariant_prime_divisors()?;
        let mut d = TInvariantDivisor::zero(fan)?;
        for (r, a) in rays {
            let r = primitive(&r);
            if !all_rays.contains(&r) {
                return Err(Error::Invalid(format!("{} is not a ray of the fan", fmt_vec(&r))));
            }
            if !a.is_zero() {
                d.rays.insert(r, a);
            }
        }
        for (p, v, b) in verts {
            let p = fan.base.canonical_label(p.as_ref())?;
            if !fan.vertices(&p).contains(&v) {
                return Err(Error::Invalid(format!("{} is not a vertex of the slice at {p}", fmt_vec(&v))));
            }
            if !b.is_zero() {
                d.verts.entry(p).or_default().insert(v, b);
            }
        }
        Ok(d)
    }

    pub fn zero(fan: &DivisorialFan) -> Result<Self> {
        fan.invariant_prime_divisors()?;
        Ok(TInvariantDivisor { fan: fan.clone(), rays: BTreeMap::new(), verts: BTreeMap::new() })
    }

    pub fn fan(&self) -> &DivisorialFan {
        &self.fan
    }

    pub fn ray_coeff(&self, r: &[Q]) -> Q {
        self.rays.get(&primitive(r)).cloned().unwrap_or_else(Q::zero)
    }

    /// `b_{P,v}`, before the `μ(v)` normalization.
    pub fn vertex_coeff(&self, p: &str, v: &[Q]) -> Q {
        self.verts.get(p).and_then(|m| m.get(v)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn ray_coeffs(&self) -> &BTreeMap<QVec, Q> {
        &self.rays
    }

    pub fn vertex_coeffs(&self) -> &BTreeMap<String, BTreeMap<QVec, Q>> {
        &self.verts
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.verts.is_empty()
    }

    /// Primes whose vertex data may be nonzero or whose slice is nontrivial.
    fn primes(&self) -> BTreeSet<String> {
        let mut s: BTreeSet<String> = self.fan.marked_primes().into_iter().collect();
        s.extend(self.verts.keys().cloned());
        s
    }

    pub fn plus(&self, other: &TInvariantDivisor) -> TInvariantDivisor {
        let mut d = self.clone();
        for (r, a) in &other.rays {
            let e = d.rays.entry(r.clone()).or_insert_with(Q::zero);
            *e += a;
        }
        for (p, m) in &other.verts {
            let e = d.verts.entry(p.clone()).or_default();
            for (v, b) in m {
                *e.entry(v.clone()).or_insert_with(Q::zero) += b;
            }
        }
        d.normalize();
        d
    }

    pub fn scale(&self, k: &Q) -> TInvariantDivisor {
        let mut d = self.clone();
        d.rays.values_mut().for_each(|a| *a *= k);
        d.verts.values_mut().for_each(|m| m.values_mut().for_each(|b| *b *= k));
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        self.rays.retain(|_, a| !a.is_zero());
        for m in self.verts.values_mut() {
            m.retain(|_, b| !b.is_zero());
        }
        self.verts.retain(|_, m| !m.is_empty());
    }

    /// Weil coefficients `a_ρ` and `μ(v) b_{P,v}`.
    pub fn weil_terms(&self) -> Vec<(String, Q)> {
        let mut out: Vec<(String, Q)> =
            self.rays.iter().map(|(r, a)| (format!("D_rho{}", fmt_vec(r)), a.clone())).collect();
        for (p, m) in &self.verts {
            for (v, b) in m {
                out.push((format!("D_{p},{}", fmt_vec(v)), Q::from_integer(multiplicity(v)) * b));
            }
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.weil_terms().iter().all(|(_, c)| c.is_integer())
    }

    /// `Div(f·χᵘ)`.
    pub fn principal(fan: &DivisorialFan, f: &RationalFunction, u: &[Q]) -> Result<Self> {
        let mut d = TInvariantDivisor::zero(fan)?;
        if u.len() != fan.rank {
            return Err(Error::AmbientMismatch(fan.rank, u.len()));
        }
        for r in fan.rays() {
            d.rays.insert(r.clone(), dot(&r, u));
        }
        let div = fan.base.divisor_of(f)?;
        let mut primes: BTreeSet<String> = fan.marked_primes().into_iter().collect();
        primes.extend(div.labels().cloned());
        for p in primes {
            let ord = div.get(&p).finite().cloned().expect("principal divisors are finite");
            let e = d.verts.entry(p.clone()).or_default();
            for v in fan.vertices(&p) {
                e.insert(v.clone(), dot(&v, u) + &ord);
            }
        }
        d.normalize();
        Ok(d)
    }

    /// `Box^D = {u : ⟨v_ρ,u⟩ + a_ρ ≥ 0}`.
    pub fn box_polyhedron(&self) -> Polyhedron {
        let ineqs: Vec<(QVec, Q)> = self.fan.rays().into_iter().map(|r| {
            let a = self.ray_coeff(&r);
            (r, -a)
        }).collect();
        Polyhedron::from_hrep(self.fan.rank, &ineqs, &[])
    }

    /// `Ψ^D_P(u) = min_v (⟨v,u⟩ + b_{P,v})` on `Box^D`.
    pub fn psi(&self) -> PLDivisorMap {
        let mut pieces = Vec::new();
        for p in self.primes() {
            let vs = self.fan.vertices(&p);
            if vs.is_empty() {
                pieces.push((p, None));
            } else {
                let ps: Vec<(QVec, Q)> = vs.iter().map(|v| (v.clone(), self.vertex_coeff(&p, v))).collect();
                pieces.push((p, Some(ps)));
            }
        }
        PLDivisorMap::from_pieces(self.fan.base.clone(), self.box_polyhedron(), pieces)
            .expect("labels come from the fan")
    }

    /// The weight-`u` piece `L(Ψ^D(u))` of `L(D)`.
    pub fn graded_sections(&self, u: &[Q], bound: i64) -> Result<Sections> {
        if !is_integral(u) {
            return Err(Error::WeightOutsideBox);
        }
        let e = self.psi().evaluate(u)?;
        self.fan.base.global_sections(&e, bound)
    }

    /// Affine pieces `h_P^D` on every cell of every slice.
    pub fn support_functions(&self) -> Result<SupportFunction> {
        let n = self.fan.rank;
        let mut cells: BTreeMap<String, Vec<AffinePiece>> = BTreeMap::new();
        let mut tails = Vec::new();
        for (i, m) in self.fan.members.iter().enumerate() {
            let primes: Vec<String> = self.fan.marked_primes().into_iter().filter(|p| !m.coeff(p).is_empty()).collect();
            // unknowns: slope m (n) then one constant per prime
            let nv = n + primes.len();
            let mut rows: Vec<QVec> = Vec::new();
            let mut rhs: Vec<Q> = Vec::new();
            for r in m.tail().rays() {
                rows.push(concat(r, &zeros(primes.len())));
                rhs.push(-self.ray_coeff(r));
            }
            for (j, p) in primes.iter().enumerate() {
                for v in m.coeff(p).vertices() {
                    let mut row = concat(v, &zeros(primes.len()));
                    row[n + j] = Q::one();
                    rows.push(row);
                    rhs.push(-self.vertex_coeff(p, v));
                }
            }
            let x = linalg::solve(&rows, &rhs, nv).ok_or_else(|| Error::NotQCartier(format!("member {i}")))?;
            let slope: QVec = x[..n].to_vec();
            for (j, p) in primes.iter().enumerate() {
                let piece = AffinePiece { cell: m.coeff(p), slope: slope.clone(), constant: x[n + j].clone() };
                let list = cells.entry(p.clone()).or_default();
                if !list.iter().any(|q| q.cell == piece.cell) {
                    list.push(piece);
                }
            }
            tails.push(AffinePiece { cell: m.tail().poly().clone(), slope, constant: Q::zero() });
        }
        for p in self.verts.keys() {
            if !cells.contains_key(p) {
                // an unmarked prime with nonzero data has a single vertex at the origin
                let b = self.vertex_coeff(p, &zeros(n));
                let list = tails
                    .iter()
                    .map(|t| AffinePiece { cell: t.cell.clone(), slope: t.slope.clone(), constant: -b.clone() })
                    .collect();
                cells.insert(p.clone(), list);
            }
        }
        Ok(SupportFunction { pieces: cells, generic: tails })
    }

    /// Decides global generation on a curve base via witnesses `(u, s)`.
    ///
    /// `window` bounds the lattice search in unbounded directions.
    pub fn is_basepoint_free(&self, window: i64) -> Result<Basepoints> {
        if !self.fan.base.is_curve() {
            return Err(Error::UnsupportedBase("base-point freeness on toric bases".into()));
        }
        match self.support_functions() {
            Ok(_) => {}
            Err(Error::NotQCartier(_)) => {
                return Ok(Basepoints::NotFree { member: 0, point: String::from("not Q-Cartier") })
            }
            Err(e) => return Err(e),
        }
        let psi = self.psi();
        let bx = self.box_polyhedron();
        let n = self.fan.rank;
        let mut witnesses = Vec::new();
        let mut inconclusive = false;
        for (i, m) in self.fan.members.iter().enumerate() {
            let mut classes: Vec<String> =
                self.fan.marked_primes().into_iter().filter(|p| !m.coeff(p).is_empty()).collect();
            classes.push(GENERIC.to_string());
            for y in classes {
                let (cell, all) = if y == GENERIC {
                    (m.tail().poly().clone(), vec![(zeros(n), Q::zero())])
                } else {
                    let all: Vec<(QVec, Q)> =
                        self.fan.vertices(&y).into_iter().map(|v| { let b = self.vertex_coeff(&y, &v); (v, b) }).collect();
                    (m.coeff(&y), all)
                };
                let region = attaining_region(&bx, &cell, &all, |r| self.ray_coeff(r));
                if region.is_empty() {
                    return Ok(Basepoints::NotFree { member: i, point: y });
                }
                let (pts, bounded) = window_points(&region, window);
                let mut found = None;
                for u in pts {
                    let e = psi.evaluate(&u)?;
                    let prime = if y == GENERIC { None } else { Some(y.as_str()) };
                    if let Some(s) = section_with_order(&self.fan.base, &e, prime)? {
                        found = Some(BpfWitness { member: i, point: y.clone(), u, section: s });
                        break;
                    }
                }
                match found {
                    Some(w) => witnesses.push(w),
                    None if bounded => return Ok(Basepoints::NotFree { member: i, point: y }),
                    None => inconclusive = true,
                }
            }
        }
        if inconclusive {
            return Err(Error::SearchBoundExceeded);
        }
        Ok(Basepoints::Free(witnesses))
    }
}

/// `{u ∈ Box : the vertices of cell attain min_w(⟨w,u⟩+b_w), ⟨ρ,u⟩ = -a_ρ on rays of cell}`.
fn attaining_region<F: Fn(&QVec) -> Q>(bx: &Polyhedron, cell: &Polyhedron, all: &[(QVec, Q)], ray_coeff: F) -> Polyhedron {
    let b_of = |v: &QVec| all.iter().find(|(w, _)| w == v).map(|(_, b)| b.clone()).unwrap_or_else(Q::zero);
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    let vs = cell.vertices();
    for v in vs {
        let bv = b_of(v);
        for (w, bw) in all {
            // ⟨w - v, u⟩ ≥ b_v - b_w
            ineqs.push((crate::rat::sub(w, v), bv.clone() - bw));
        }
    }
    for r in cell.rays() {
        eqs.push((primitive(r), -ray_coeff(&primitive(r))));
    }
    for l in cell.lineality() {
        eqs.push((primitive(l), -ray_coeff(&primitive(l))));
        let neg: QVec = l.iter().map(|x| -x).collect();
        eqs.push((primitive(&neg), -ray_coeff(&primitive(&neg))));
    }
    bx.restrict(&ineqs, &eqs)
}

/// Lattice points of `p`, cut to a window when `p` is unbounded.
fn window_points(p: &Polyhedron, window: i64) -> (Vec<QVec>, bool) {
    if p.is_bounded() {
        return (p.lattice_points(), true);
    }
    let n = p.ambient_dim();
    let w = Q::from_integer(Int::from(window));
    let mut ineqs = Vec::new();
    for i in 0..n {
        let lo = p.vertices().iter().map(|v| v[i].clone()).min().unwrap_or_else(Q::zero) - &w;
        let hi = p.vertices().iter().map(|v| v[i].clone()).max().unwrap_or_else(Q::zero) + &w;
        let mut e = zeros(n);
        e[i] = Q::one();
        ineqs.push((e.clone(), lo.floor()));
        ineqs.push((scale(&-Q::one(), &e), -hi.ceil()));
    }
    let mut pts = p.restrict(&ineqs, &[]).lattice_points();
    pts.sort_by(|a, b| l1(a).cmp(&l1(b)).then_with(|| a.cmp(b)));
    (pts, false)
}

fn l1(v: &[Q]) -> Q {
    v.iter().map(|x| x.abs()).fold(Q::zero(), |a, b| a + b)
}

/// A section `s ∈ L(E)` with `ord_P s = -E_P` exactly, or any nonzero section
/// when no prime is given.
pub fn section_with_order(base: &Base, e: &QDivisor, prime: Option<&str>) -> Result<Option<RationalFunction>> {
    if let Some(p) = prime {
        match e.get(p) {
            Coef::Finite(x) if x.is_integer() => {}
            Coef::Finite(_) => return Ok(None),
            Coef::Infinity => return Err(Error::Invalid(format!("{p} lies outside the locus"))),
        }
    }
    let spread: Int = e
        .terms()
        .filter_map(|(_, c)| c.finite().map(|x| crate::rat::floor(x).abs()))
        .fold(Int::one(), |a, b| a + b);
    let bound: i64 = i64::try_from(spread).map_err(|_| Error::SearchBoundExceeded)?.max(2);
    let secs = base.global_sections(e, bound)?;
    for s in secs.basis {
        match prime {
            None => return Ok(Some(s)),
            Some(p) => {
                let target = -e.get(p).finite().expect("checked").to_integer();
                if base.order_along(&s, p)? == target {
                    return Ok(Some(s));
                }
            }
        }
    }
    Ok(None)
}

/// One affine piece `x ↦ ⟨slope,x⟩ + constant` of a support function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePiece {
    pub cell: Polyhedron,
    pub slope: QVec,
    pub constant: Q,
}

impl AffinePiece {
    pub fn value(&self, x: &[Q]) -> Q {
        dot(&self.slope, x) + &self.constant
    }
}

/// The functions `h_P^D`, one affine piece per cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFunction {
    pub pieces: BTreeMap<String, Vec<AffinePiece>>,
    /// Pieces on the tail cones, used for unmarked primes.
    pub generic: Vec<AffinePiece>,
}

impl SupportFunction {
    fn cells(&self, p: &str) -> &[AffinePiece] {
        self.pieces.get(p).map(|v| v.as_slice()).unwrap_or(&self.generic)
    }

    pub fn value(&self, p: &str, x: &[Q]) -> Option<Q> {
        self.cells(p).iter().find(|c| c.cell.contains(x)).map(|c| c.value(x))
    }

    /// Concavity of `h_P` on its support.
    pub fn is_concave(&self, p: &str) -> bool {
        let cs = self.cells(p);
        cs.iter().all(|a| {
            cs.iter().all(|b| {
                b.cell.vertices().iter().all(|v| a.value(v) >= b.value(v))
                    && b.cell.rays().iter().all(|r| dot(&a.slope, r) >= dot(&b.slope, r))
            })
        })
    }
}

/// A witness `(u, s)` for one member and one point class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpfWitness {
    pub member: usize,
    pub point: String,
    pub u: QVec,
    pub section: RationalFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basepoints {
    Free(Vec<BpfWitness>),
    /// A member and point class admitting no witness.
    NotFree { member: usize, point: String },
}

impl Basepoints {
    pub fn is_free(&self) -> bool {
        matches!(self, Basepoints::Free(_))
    }
}

/// A concave piecewise-affine map `Box → WDiv_{ℚ∪∞}(Y)`.
///
/// Each prime is stored through the hypograph of `Ψ_P`; an unbounded
/// hypograph means `Ψ_P ≡ ∞`, and unlisted primes are identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLDivisorMap {
    base: Base,
    domain: Polyhedron,
    hyps: BTreeMap<String, Polyhedron>,
}

impl PLDivisorMap {
    /// From affine pieces `(v, b)` per prime, with `None` for `≡ ∞`.
    pub fn from_pieces<S: AsRef<str>>(
        base: Base,
        domain: Polyhedron,
        pieces: Vec<(S, Option<Vec<(QVec, Q)>>)>,
    ) -> Result<Self> {
        let n = domain.ambient_dim();
        let mut hyps = BTreeMap::new();
        for (l, ps) in pieces {
            let l = base.canonical_label(l.as_ref())?;
            let mut ineqs: Vec<(QVec, Q)> =
                domain.inequalities().iter().map(|(a, b)| (concat(a, &[Q::zero()]), b.clone())).collect();
            let eqs: Vec<(QVec, Q)> =
                domain.equations().iter().map(|(a, b)| (concat(a, &[Q::zero()]), b.clone())).collect();
            if let Some(ps) = ps {
                if ps.is_empty() {
                    return Err(Error::Invalid(format!("no affine pieces at {l}")));
                }
                for (v, b) in ps {
                    if v.len() != n {
                        return Err(Error::AmbientMismatch(n, v.len()));
                    }
                    ineqs.push((concat(&v, &[-Q::one()]), -b));
                }
            }
            let h = if domain.is_empty() { Polyhedron::empty(n + 1) } else { Polyhedron::from_hrep(n + 1, &ineqs, &eqs) };
            hyps.insert(l, h);
        }
        Ok(Self::from_hyps(base, domain, hyps))
    }

    fn from_hyps(base: Base, domain: Polyhedron, mut hyps: BTreeMap<String, Polyhedron>) -> Self {
        let zero = zero_hyp(&domain);
        hyps.retain(|_, h| *h != zero);
        PLDivisorMap { base, domain, hyps }
    }

    /// `Ψ(u) = 𝒟(u)` on the weight cone.
    pub fn from_pdivisor(d: &PolyhedralDivisor) -> Self {
        let pieces: Vec<(String, Option<Vec<(QVec, Q)>>)> = d
            .coeffs()
            .map(|(l, p)| {
                let ps = if p.is_empty() {
                    None
                } else {
                    Some(p.vertices().iter().map(|v| (v.clone(), Q::zero())).collect())
                };
                (l.clone(), ps)
            })
            .collect();
        Self::from_pieces(d.base().clone(), d.weight_cone().into_poly(), pieces).expect("labels are canonical")
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn domain(&self) -> &Polyhedron {
        &self.domain
    }

    pub fn rank(&self) -> usize {
        self.domain.ambient_dim()
    }

    /// Primes where `Ψ_P` is not identically zero.
    pub fn primes(&self) -> Vec<String> {
        self.hyps.keys().cloned().collect()
    }

    pub fn hypograph(&self, p: &str) -> Polyhedron {
        self.hyps.get(p).cloned().unwrap_or_else(|| zero_hyp(&self.domain))
    }

    pub fn is_infinite(&self, p: &str) -> bool {
        self.pieces(p).is_none()
    }

    /// Affine pieces `(v, b)` with `Ψ_P = min(⟨v,·⟩ + b)`, or `None` for `≡ ∞`.
    pub fn pieces(&self, p: &str) -> Option<Vec<(QVec, Q)>> {
        let h = self.hypograph(p);
        let n = self.rank();
        let out: Vec<(QVec, Q)> = h
            .inequalities()
            .iter()
            .filter(|(a, _)| a[n].is_negative())
            .map(|(a, b)| {
                let c = -a[n].clone();
                (a[..n].iter().map(|x| x / &c).collect(), -b / &c)
            })
            .collect();
        if out.is_empty() && !h.is_empty() {
            None
        } else {
            Some(out)
        }
    }

    pub fn value(&self, p: &str, u: &[Q]) -> Result<Coef> {
        if !self.domain.contains(u) {
            return Err(Error::WeightOutsideBox);
        }
        Ok(match self.pieces(p) {
            None => Coef::Infinity,
            Some(ps) => Coef::Finite(ps.iter().map(|(v, b)| dot(v, u) + b).min().unwrap_or_else(Q::zero)),
        })
    }

    pub fn evaluate(&self, u: &[Q]) -> Result<QDivisor> {
        if u.len() != self.rank() {
            return Err(Error::AmbientMismatch(self.rank(), u.len()));
        }
        if !self.domain.contains(u) {
            return Err(Error::WeightOutsideBox);
        }
        let mut d = QDivisor::new();
        for p in self.hyps.keys() {
            d.set(p, self.value(p, u)?);
        }
        Ok(d)
    }

    /// The largest subspace along which both `Ψ_P` and the domain are invariant.
    pub fn lineality(&self, p: &str) -> Vec<QVec> {
        let n = self.rank();
        let lin = self.hypograph(p).lineality().to_vec();
        if lin.is_empty() {
            return Vec::new();
        }
        let trow: Vec<QVec> = vec![lin.iter().map(|l| l[n].clone()).collect()];
        let combos = linalg::nullspace(&trow, lin.len());
        combos
            .iter()
            .map(|c| {
                let mut w = zeros(n);
                for (k, l) in c.iter().zip(&lin) {
                    for i in 0..n {
                        w[i] += k * &l[i];
                    }
                }
                w
            })
            .collect()
    }

    /// Points `ū` where `(ū, Ψ_P(ū))` is a vertex of the graph, modulo lineality.
    pub fn vertices(&self, p: &str) -> Vec<QVec> {
        let n = self.rank();
        self.hypograph(p).vertices().iter().map(|v| v[..n].to_vec()).collect()
    }

    /// `(Ψ¹+Ψ²)(u) = max_{u₁+u₂=u} Ψ¹(u₁)+Ψ²(u₂)`.
    pub fn sum(&self, other: &PLDivisorMap) -> Result<PLDivisorMap> {
        if self.base != other.base {
            return Err(Error::Invalid("maps on different bases".into()));
        }
        if self.rank() != other.rank() {
            return Err(Error::AmbientMismatch(self.rank(), other.rank()));
        }
        let domain = self.domain.minkowski_sum(&other.domain);
        let primes: BTreeSet<String> = self.hyps.keys().chain(other.hyps.keys()).cloned().collect();
        let hyps = primes
            .into_iter()
            .map(|p| {
                let h = self.hypograph(&p).minkowski_sum(&other.hypograph(&p));
                (p, h)
            })
            .collect();
        Ok(Self::from_hyps(self.base.clone(), domain, hyps))
    }

    /// The polyhedral divisor `Σ {x : ⟨x,u⟩ ≥ Ψ_P(u) on Box} ⊗ P`, when the
    /// domain is a cone and every `Ψ_P` is linear on it.
    pub fn to_pdivisor(&self) -> Result<PolyhedralDivisor> {
        if !self.domain.is_cone() || self.hyps.values().any(|h| !h.is_empty() && !h.is_cone()) {
            return Err(Error::Invalid("map is not positively homogeneous".into()));
        }
        let n = self.rank();
        let tail = Cone::from_poly(self.domain.clone())?.dual();
        let mut coeffs = Vec::new();
        for p in self.hyps.keys() {
            let c = match self.pieces(p) {
                None => Polyhedron::empty(n),
                Some(ps) => {
                    let vs: Vec<QVec> = ps.into_iter().map(|(v, _)| v).collect();
                    Polyhedron::from_vrep(n, &vs, tail.rays(), tail.lineality())
                }
            };
            coeffs.push((p.clone(), c));
        }
        PolyhedralDivisor::new(self.base.clone(), tail, coeffs)
    }

    /// Degree of `Ψ(u)` maximized over a polyhedral set of weights, if bounded.
    fn max_degree_over(&self, set: &Polyhedron) -> Result<Option<Q>> {
        let n = self.rank();
        let primes = self.primes();
        let nv = n + primes.len();
        let mut ineqs: Vec<(QVec, Q)> =
            set.inequalities().iter().map(|(a, b)| (concat(a, &zeros(primes.len())), b.clone())).collect();
        let eqs: Vec<(QVec, Q)> =
            set.equations().iter().map(|(a, b)| (concat(a, &zeros(primes.len())), b.clone())).collect();
        let mut c = zeros(nv);
        for (j, p) in primes.iter().enumerate() {
            let Some(ps) = self.pieces(p) else { return Ok(None) };
            c[n + j] = -self.base.prime_degree(p)?;
            for (v, b) in ps {
                // t_P ≤ ⟨v,u⟩ + b
                let mut row = concat(&v, &zeros(primes.len()));
                row[n + j] = -Q::one();
                ineqs.push((row, -b));
            }
        }
        Ok(match minimize(&c, &ineqs, &eqs) {
            LpResult::Optimal { value, .. } => Some(-value),
            _ => None,
        })
    }

    /// Tests sharpness, searching `k ≤ k_bound` and a window around each vertex.
    pub fn sharpness(&self, k_bound: u32, window: i64) -> Result<Sharpness> {
        let mut classes: Vec<Option<String>> = self.primes().into_iter().map(Some).collect();
        match &self.base {
            Base::Toric(t) => {
                for l in t.rays.iter().map(|(l, _)| l).chain(t.extra.iter().map(|e| &e.label)) {
                    if !self.hyps.contains_key(l) {
                        classes.push(Some(l.clone()));
                    }
                }
            }
            _ => classes.push(None),
        }
        let mut verdict = Sharpness::Sharp;
        for cls in classes {
            let p = cls.as_deref();
            if let Some(p) = p {
                if self.is_infinite(p) {
                    continue;
                }
            }
            let key = p.unwrap_or(GENERIC);
            let lin = self.lineality(key);
            for ub in self.vertices(key) {
                let mut eqs = Vec::new();
                let n = self.rank();
                let normals = if lin.is_empty() { linalg::identity(n) } else { linalg::nullspace(&lin, n) };
                for a in normals {
                    let b = dot(&a, &ub);
                    eqs.push((a, b));
                }
                let fiber = self.domain.restrict(&[], &eqs);
                match self.vertex_sharpness(p, &fiber, k_bound, window)? {
                    Sharpness::Sharp => {}
                    Sharpness::AsymptoticallySharp => {
                        if verdict == Sharpness::Sharp {
                            verdict = Sharpness::AsymptoticallySharp;
                        }
                    }
                    Sharpness::Fails => return Ok(Sharpness::Fails),
                    Sharpness::Inconclusive => verdict = Sharpness::Inconclusive,
                }
            }
        }
        Ok(verdict)
    }

    fn vertex_sharpness(&self, p: Option<&str>, fiber: &Polyhedron, k_bound: u32, window: i64) -> Result<Sharpness> {
        for k in 1..=k_bound.max(1) {
            let kq = Q::from_integer(Int::from(k));
            let (pts, _) = window_points(&fiber.scale(&kq), window);
            for ku in pts {
                let u = scale(&(Q::one() / &kq), &ku);
                let e = self.evaluate(&u)?.scale(&kq);
                if section_with_order(&self.base, &e, p)?.is_some() {
                    return Ok(if k == 1 { Sharpness::Sharp } else { Sharpness::AsymptoticallySharp });
                }
            }
            // rational points u with kΨ(u) integral need not be in (1/k)M
            if k > 1 || fiber.find_lattice_point().is_none() {
                if let Some(u) = fiber.relint_point() {
                    let e = self.evaluate(&u)?.scale(&kq);
                    if section_with_order(&self.base, &e, p)?.is_some() {
                        return Ok(Sharpness::AsymptoticallySharp);
                    }
                }
            }
        }
        if matches!(self.base, Base::ProjectiveLine) {
            if let Some(d) = self.max_degree_over(fiber)? {
                if d.is_negative() {
                    return Ok(Sharpness::Fails);
                }
            }
        }
        Ok(Sharpness::Inconclusive)
    }
}

fn zero_hyp(domain: &Polyhedron) -> Polyhedron {
    domain.product(&Polyhedron::hull(1, &[vec![Q::zero()]], &[vec![-Q::one()]]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sharpness {
    Sharp,
    AsymptoticallySharp,
    Inconclusive,
    Fails,
}

impl fmt::Display for Sharpness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sharpness::Sharp => "sharp",
            Sharpness::AsymptoticallySharp => "asymptotically sharp",
            Sharpness::Inconclusive => "inconclusive",
            Sharpness::Fails => "fails",
        })
    }
}

impl fmt::Display for PLDivisorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "box {}", self.domain)?;
        for p in self.hyps.keys() {
            match self.pieces(p) {
                None => write!(f, "; {p}: inf")?,
                Some(ps) => {
                    let parts: Vec<String> =
                        ps.iter().map(|(v, b)| format!("<{},u>+{}", fmt_vec(v), crate::rat::fmt_q(b))).collect();
                    write!(f, "; {p}: min({})", parts.join(", "))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::base::ToricBase;
    use crate::rat::{q, qf, qv};

    fn up(a: Q) -> Polyhedron {
        Polyhedron::hull(1, &[vec![a]], &[qv(&[1])])
    }

    fn down(a: Q) -> Polyhedron {
        Polyhedron::hull(1, &[vec![a]], &[qv(&[-1])])
    }

    fn pd(base: &Base, tail: i64, cs: Vec<(&str, Polyhedron)>) -> PolyhedralDivisor {
        PolyhedralDivisor::new(base.clone(), Cone::new(1, &[qv(&[tail])]), cs).unwrap()
    }

    /// The contraction-free model of the projective plane over P¹.
    pub(crate) fn p2_cf() -> DivisorialFan {
        let b = Base::ProjectiveLine;
        DivisorialFan::new(
            b.clone(),
            vec![
                pd(&b, 1, vec![("inf", Polyhedron::empty(1))]),
                pd(&b, 1, vec![("inf", up(q(-1))), ("0", Polyhedron::empty(1))]),
                pd(&b, -1, vec![("inf", Polyhedron::empty(1))]),
                pd(&b, -1, vec![("inf", down(q(-1))), ("0", Polyhedron::empty(1))]),
            ],
        )
        .unwrap()
    }

    pub(crate) fn p2_non_cf() -> DivisorialFan {
        let b = Base::ProjectiveLine;
        DivisorialFan::new(
            b.clone(),
            vec![
                pd(&b, 1, vec![("inf", Polyhedron::empty(1))]),
                pd(&b, 1, vec![("inf", up(q(-1))), ("0", Polyhedron::empty(1))]),
                pd(&b, -1, vec![("inf", down(q(-1)))]),
            ],
        )
        .unwrap()
    }

    fn bl0_a2() -> Base {
        Base::Toric(
            ToricBase::new(
                2,
                vec![("D1".into(), qv(&[1, 0])), ("D2".into(), qv(&[0, 1])), ("E".into(), qv(&[1, 1]))],
                vec![vec![0, 2], vec![2, 1]],
            )
            .unwrap()
            .with_semiprojective(true),
        )
    }

    #[test]
    fn slices_and_rays_of_the_plane() {
        let s = p2_cf();
        assert!(s.is_contraction_free());
        let (rays, verts) = s.invariant_prime_divisors().unwrap();
        assert_eq!(rays, vec![qv(&[-1]), qv(&[1])]);
        assert_eq!(verts["inf"], vec![qv(&[-1])]);
        assert_eq!(verts["0"], vec![qv(&[0])]);
        assert_eq!(s.slice("inf").maximal_cells().len(), 2);
    }

    #[test]
    fn merged_member_is_not_contraction_free() {
        let s = p2_non_cf();
        assert!(!s.is_contraction_free());
        assert_eq!(s.ray_set().unwrap(), vec![qv(&[1])]);
        assert_eq!(p2_cf().ray_set().unwrap(), vec![qv(&[-1]), qv(&[1])]);
        assert_eq!(s.invariant_prime_divisors(), Err(Error::NotContractionFree));
        let m = s.contraction_free_model().unwrap();
        assert!(m.is_contraction_free());
        assert_eq!(m.slice("inf"), s.slice("inf"));
        assert_eq!(m.slice("0"), s.slice("0"));
        assert_eq!(m.members().len(), 4);
    }

    #[test]
    fn overlapping_slices_are_rejected() {
        let b = Base::ProjectiveLine;
        let r = DivisorialFan::new(
            b.clone(),
            vec![
                pd(&b, 1, vec![("0", up(q(0))), ("inf", Polyhedron::empty(1))]),
                pd(&b, 1, vec![("0", up(q(1))), ("1", Polyhedron::empty(1))]),
            ],
        );
        assert_eq!(r, Err(Error::NotAComplex("0".into())));
    }

    #[test]
    fn psi_zero_on_blown_up_plane() {
        let b = bl0_a2();
        let t = Cone::new(1, &[qv(&[1])]);
        let d1 = PolyhedralDivisor::new(b.clone(), t.clone(), vec![("E", up(q(1))), ("D2", Polyhedron::empty(1))]).unwrap();
        let d2 = PolyhedralDivisor::new(b.clone(), t.clone(), vec![("E", up(q(1))), ("D1", Polyhedron::empty(1))]).unwrap();
        let s = DivisorialFan::new(b.clone(), vec![d1, d2]).unwrap();
        assert!(s.is_contraction_free());
        let psi = TInvariantDivisor::zero(&s).unwrap().psi();
        let expected = PolyhedralDivisor::new(b.clone(), t, vec![("D1", up(q(0))), ("E", up(q(1))), ("D2", up(q(0)))]).unwrap();
        assert_eq!(psi.to_pdivisor().unwrap(), expected);
        let e = psi.evaluate(&qv(&[1])).unwrap();
        assert_eq!(e, QDivisor::from_finite(&[("E", q(1))]));
        let pos = b.positivity(&e).unwrap();
        assert!(pos.big && !pos.semiample);
    }

    #[test]
    fn principal_divisor_of_x_times_character() {
        let s = p2_cf();
        let f = RationalFunction::from_factors(0, &[("0", 1)]);
        let d = TInvariantDivisor::principal(&s, &f, &qv(&[2])).unwrap();
        assert_eq!(d.ray_coeff(&qv(&[1])), q(2));
        assert_eq!(d.ray_coeff(&qv(&[-1])), q(-2));
        assert_eq!(d.vertex_coeff("0", &qv(&[0])), q(1));
        assert_eq!(d.vertex_coeff("inf", &qv(&[-1])), q(-3));
        let g = f.inverse().unwrap();
        let e = TInvariantDivisor::principal(&s, &g, &qv(&[-2])).unwrap();
        assert!(d.plus(&e).is_zero());
        assert!(TInvariantDivisor::principal(&s, &RationalFunction::one(0), &qv(&[0])).unwrap().is_zero());
    }

    #[test]
    fn box_of_a_single_ray() {
        let b = Base::ProjectiveLine;
        let s = DivisorialFan::new(b.clone(), vec![pd(&b, 1, vec![("inf", Polyhedron::empty(1))])]).unwrap();
        let d = TInvariantDivisor::new(&s, vec![(qv(&[1]), q(1))], Vec::<(&str, QVec, Q)>::new()).unwrap();
        assert_eq!(d.box_polyhedron(), up(q(-1)));
    }

    #[test]
    fn sections_of_the_hyperplane_class() {
        // D_ρ1 on the plane has three sections
        let s = p2_cf();
        let d = TInvariantDivisor::new(&s, vec![(qv(&[1]), q(1))], Vec::<(&str, QVec, Q)>::new()).unwrap();
        let bx = d.box_polyhedron();
        let total: usize =
            bx.intersect(&Polyhedron::hull(1, &[qv(&[-5]), qv(&[5])], &[])).lattice_points().iter().map(|u| d.graded_sections(u, 8).unwrap().dim).sum();
        assert_eq!(total, 3);
        assert_eq!(d.graded_sections(&qv(&[-2]), 8), Err(Error::WeightOutsideBox));
    }

    #[test]
    fn support_function_of_a_principal_divisor() {
        let s = p2_cf();
        let f = RationalFunction::from_factors(0, &[("1", 1)]);
        let u = qv(&[3]);
        let d = TInvariantDivisor::principal(&s, &f, &u).unwrap();
        let h = d.support_functions().unwrap();
        for p in ["0", "inf", "1"] {
            for v in s.vertices(p) {
                assert_eq!(h.value(p, &v).unwrap(), -dot(&v, &u) - Q::from_integer(s.base().order_along(&f, p).unwrap()));
            }
            assert!(h.is_concave(p));
        }
        assert!(TInvariantDivisor::zero(&s).unwrap().support_functions().unwrap().pieces.values().all(|ps| ps.iter().all(|a| a.constant.is_zero() && a.slope.iter().all(|x| x.is_zero()))));
    }

    #[test]
    fn principal_divisors_are_free() {
        let s = p2_cf();
        let f = RationalFunction::from_factors(0, &[("0", 2), ("1", -1)]);
        let d = TInvariantDivisor::principal(&s, &f, &qv(&[1])).unwrap();
        let r = d.is_basepoint_free(4).unwrap();
        assert!(r.is_free(), "{r:?}");
        let zero = TInvariantDivisor::zero(&s).unwrap();
        assert!(zero.is_basepoint_free(4).unwrap().is_free());
    }

    #[test]
    fn hyperplane_class_is_free_and_its_negative_is_not() {
        let s = p2_cf();
        let d = TInvariantDivisor::new(&s, vec![(qv(&[1]), q(1))], Vec::<(&str, QVec, Q)>::new()).unwrap();
        assert!(d.is_basepoint_free(4).unwrap().is_free());
        let m = d.scale(&q(-1));
        assert!(!m.is_basepoint_free(4).unwrap().is_free());
    }

    #[test]
    fn sum_of_affine_maps() {
        let b = Base::ProjectiveLine;
        let dom = Polyhedron::hull(1, &[qv(&[0]), qv(&[1])], &[]);
        let a = PLDivisorMap::from_pieces(b.clone(), dom.clone(), vec![("0", Some(vec![(qv(&[1]), q(2))]))]).unwrap();
        let z = PLDivisorMap::from_pieces(b.clone(), Polyhedron::point(&qv(&[0])), Vec::<(&str, _)>::new()).unwrap();
        assert_eq!(a.sum(&z).unwrap(), a);
        let c = PLDivisorMap::from_pieces(b.clone(), dom.clone(), vec![("0", Some(vec![(qv(&[2]), q(-1))]))]).unwrap();
        let s = a.sum(&c).unwrap();
        assert_eq!(s.domain(), &Polyhedron::hull(1, &[qv(&[0]), qv(&[2])], &[]));
        // max over splittings of a concave sum
        assert_eq!(s.value("0", &qv(&[1])).unwrap(), Coef::Finite(q(3)));
        assert_eq!(s.value("0", &qv(&[2])).unwrap(), Coef::Finite(q(4)));
    }

    #[test]
    fn psi_of_sum_is_sum_of_psi_for_free_divisors() {
        let s = p2_cf();
        let d = TInvariantDivisor::new(&s, vec![(qv(&[1]), q(1))], Vec::<(&str, QVec, Q)>::new()).unwrap();
        let e = TInvariantDivisor::new(&s, Vec::new(), vec![("inf", qv(&[-1]), q(2))]).unwrap();
        assert!(e.is_basepoint_free(4).unwrap().is_free());
        assert_eq!(d.psi().sum(&e.psi()).unwrap(), d.plus(&e).psi());
    }

    #[test]
    fn lineality_and_vertices() {
        let b = Base::ProjectiveLine;
        let dom = Polyhedron::from_vrep(2, &[qv(&[0, 0])], &[qv(&[1, 0])], &[qv(&[0, 1])]);
        let m = PLDivisorMap::from_pieces(b, dom, vec![("0", Some(vec![(qv(&[0, 0]), q(0)), (qv(&[-1, 0]), q(1))]))]).unwrap();
        assert_eq!(m.lineality("0").len(), 1);
        let vs = m.vertices("0");
        assert_eq!(vs.len(), 2);
    }

    #[test]
    fn sharpness_cases() {
        let b = Base::ProjectiveLine;
        let cone = Polyhedron::cone(1, &[qv(&[1])]);
        let zero = PLDivisorMap::from_pieces(b.clone(), cone.clone(), Vec::<(&str, _)>::new()).unwrap();
        assert_eq!(zero.sharpness(12, 4).unwrap(), Sharpness::Sharp);
        let neg = PLDivisorMap::from_pieces(b.clone(), Polyhedron::point(&qv(&[0])), vec![("0", Some(vec![(qv(&[0]), q(-1))]))]).unwrap();
        assert_eq!(neg.sharpness(12, 4).unwrap(), Sharpness::Fails);
        let half = PLDivisorMap::from_pieces(b.clone(), Polyhedron::point(&qv(&[0])), vec![("0", Some(vec![(qv(&[0]), qf(1, 2))]))]).unwrap();
        assert_eq!(half.sharpness(12, 4).unwrap(), Sharpness::AsymptoticallySharp);
    }

    #[test]
    fn psi_of_free_divisor_is_sharp() {
        let s = p2_cf();
        let d = TInvariantDivisor::new(&s, vec![(qv(&[1]), q(1))], Vec::<(&str, QVec, Q)>::new()).unwrap();
        assert_eq!(d.psi().sharpness(12, 4).unwrap(), Sharpness::Sharp);
    }
}
