//! Base varieties and `ℚ ∪ {∞}`-divisors on them.
//!
//! Three kinds of base are modeled: the projective line, open subsets of it,
//! and toric varieties given by a fan. A toric base may carry extra prime
//! divisors that are not torus invariant, each described by the divisor of a
//! defining function `g`, that is `Div(g) = E + Σ o_ρ D_ρ`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{int_det, smith, solve_integer, IntMat};
use crate::linalg;
use crate::lp;
use crate::polyhedra::{chamber_complex, Cone, Polyhedron};
use crate::rat::{dot, fmt_q, parse_q, Int, QVec, Q};

/// A point of `P¹`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Finite(Q),
    Infinity,
}

impl Point {
    pub fn label(&self) -> String {
        match self {
            Point::Finite(a) => fmt_q(a),
            Point::Infinity => "inf".to_string(),
        }
    }

    pub fn parse(s: &str) -> Option<Point> {
        match s.trim() {
            "inf" | "∞" => Some(Point::Infinity),
            t => parse_q(t).map(Point::Finite),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A prime divisor of a toric base which is not torus invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraPrime {
    pub label: String,
    /// Defining equation, kept for reports.
    pub equation: String,
    /// Orders `o_ρ` of the defining function along the invariant primes.
    pub invariant_orders: BTreeMap<String, Int>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricBase {
    pub dim: usize,
    /// Labels with primitive ray generators.
    pub rays: Vec<(String, QVec)>,
    /// Maximal cones as lists of ray indices.
    pub cones: Vec<Vec<usize>>,
    pub extra: Vec<ExtraPrime>,
    /// Degree of each prime when `Pic = ℤ`.
    pub degrees: Option<BTreeMap<String, Q>>,
    /// Caller-asserted semiprojectivity of the whole variety.
    pub semiprojective: bool,
}

impl ToricBase {
    pub fn new(dim: usize, rays: Vec<(String, QVec)>, cones: Vec<Vec<usize>>) -> Result<Self> {
        for (l, r) in &rays {
            if r.len() != dim {
                return Err(Error::AmbientMismatch(dim, r.len()));
            }
            if crate::rat::primitive(r) != *r || crate::rat::is_zero_vec(r) {
                return Err(Error::Invalid(format!("ray {l} is not primitive")));
            }
        }
        let labels: BTreeSet<&String> = rays.iter().map(|(l, _)| l).collect();
        if labels.len() != rays.len() {
            return Err(Error::Invalid("duplicate ray label".into()));
        }
        for c in &cones {
            if c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::Invalid("cone refers to a missing ray".into()));
            }
            let gens: Vec<QVec> = c.iter().map(|&i| rays[i].1.clone()).collect();
            if !Cone::new(dim, &gens).is_pointed() {
                return Err(Error::Invalid("cone is not pointed".into()));
            }
        }
        let semiprojective = cones.len() <= 1;
        Ok(ToricBase { dim, rays, cones, extra: Vec::new(), degrees: None, semiprojective })
    }

    /// The point, as a toric variety of dimension zero.
    pub fn point() -> Self {
        ToricBase {
            dim: 0,
            rays: Vec::new(),
            cones: vec![Vec::new()],
            extra: Vec::new(),
            degrees: None,
            semiprojective: true,
        }
    }

    pub fn with_extra(mut self, e: ExtraPrime) -> Self {
        self.extra.push(e);
        self
    }

    pub fn with_degrees(mut self, d: BTreeMap<String, Q>) -> Self {
        self.degrees = Some(d);
        self
    }

    pub fn with_semiprojective(mut self, flag: bool) -> Self {
        self.semiprojective = flag;
        self
    }

    pub fn ray_index(&self, label: &str) -> Option<usize> {
        self.rays.iter().position(|(l, _)| l == label)
    }

    pub fn ray(&self, label: &str) -> Option<&QVec> {
        self.rays.iter().find(|(l, _)| l == label).map(|(_, r)| r)
    }

    pub fn extra_index(&self, label: &str) -> Option<usize> {
        self.extra.iter().position(|e| e.label == label)
    }

    pub fn cone(&self, i: usize) -> Cone {
        let gens: Vec<QVec> = self.cones[i].iter().map(|&j| self.rays[j].1.clone()).collect();
        Cone::new(self.dim, &gens)
    }

    /// Every maximal cone is generated by part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| {
            let m: IntMat = c.iter().map(|&i| self.rays[i].1.iter().map(|x| x.to_integer()).collect()).collect();
            if m.len() == self.dim {
                int_det(&m).abs().is_one()
            } else {
                let s = smith(&m, self.dim);
                s.diag.len() == c.len() && s.diag.iter().all(|d| d.is_one())
            }
        })
    }

    pub fn is_complete(&self) -> bool {
        let cells: Vec<Polyhedron> = (0..self.cones.len()).map(|i| self.cone(i).into_poly()).collect();
        crate::polyhedra::PolyhedralComplex::unchecked(self.dim, cells).is_complete()
    }

    /// Maximal cones of the subfan avoiding the given rays.
    pub fn subfan(&self, removed: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &self.cones {
            let cone = Cone::new(self.dim, &c.iter().map(|&i| self.rays[i].1.clone()).collect::<Vec<_>>());
            for f in cone.faces() {
                let ids: Vec<usize> =
                    c.iter().copied().filter(|&i| f.contains(&self.rays[i].1)).collect();
                if ids.iter().all(|i| !removed.contains(i)) {
                    out.insert(ids);
                }
            }
        }
        let all: Vec<Vec<usize>> = out.into_iter().collect();
        all.iter()
            .filter(|a| !all.iter().any(|b| b != *a && a.iter().all(|x| b.contains(x))))
            .cloned()
            .collect()
    }

    /// Whether the union of the given cones is convex.
    fn support_is_convex(&self, cones: &[Vec<usize>]) -> bool {
        let gens: Vec<Vec<QVec>> =
            cones.iter().map(|c| c.iter().map(|&i| self.rays[i].1.clone()).collect()).collect();
        let all: Vec<QVec> = gens.iter().flatten().cloned().collect();
        let hull = Polyhedron::cone(self.dim, &all);
        let cells: Vec<Polyhedron> = gens.iter().map(|g| Polyhedron::cone(self.dim, g)).collect();
        let mut pieces: Vec<Polyhedron> = cells.iter().flat_map(|c| c.faces()).collect();
        pieces.push(hull);
        let ch = chamber_complex(self.dim, &pieces);
        ch.maximal_cells()
            .iter()
            .all(|c| c.relint_point().is_some_and(|p| cells.iter().any(|x| x.contains(&p))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    ProjectiveLine,
    /// `P¹` minus a finite nonempty set of points.
    OpenInProjectiveLine(Vec<Point>),
    Toric(ToricBase),
}

/// A divisor coefficient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coef {
    Finite(Q),
    Infinity,
}

impl Coef {
    pub fn zero() -> Self {
        Coef::Finite(Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coef::Finite(x) if x.is_zero())
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            Coef::Finite(x) => Some(x),
            Coef::Infinity => None,
        }
    }

    pub fn add(&self, other: &Coef) -> Coef {
        match (self, other) {
            (Coef::Finite(a), Coef::Finite(b)) => Coef::Finite(a + b),
            _ => Coef::Infinity,
        }
    }

    /// Scaling by a nonnegative rational; `0·∞ = 0`.
    pub fn scale(&self, k: &Q) -> Coef {
        match self {
            Coef::Finite(a) => Coef::Finite(a * k),
            Coef::Infinity if k.is_zero() => Coef::zero(),
            Coef::Infinity => Coef::Infinity,
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Finite(x) => f.write_str(&fmt_q(x)),
            Coef::Infinity => f.write_str("inf"),
        }
    }
}

/// A Weil divisor with coefficients in `ℚ ∪ {∞}`; zero entries are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QDivisor(BTreeMap<String, Coef>);

impl QDivisor {
    pub fn new() -> Self {
        QDivisor(BTreeMap::new())
    }

    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, Coef)]) -> Self {
        let mut d = QDivisor::new();
        for (l, c) in pairs {
            d.add_term(l.as_ref(), c);
        }
        d
    }

    pub fn from_finite<S: AsRef<str>>(pairs: &[(S, Q)]) -> Self {
        let mut d = QDivisor::new();
        for (l, c) in pairs {
            d.add_term(l.as_ref(), &Coef::Finite(c.clone()));
        }
        d
    }

    pub fn get(&self, label: &str) -> Coef {
        self.0.get(label).cloned().unwrap_or_else(Coef::zero)
    }

    pub fn set(&mut self, label: &str, c: Coef) {
        if c.is_zero() {
            self.0.remove(label);
        } else {
            self.0.insert(label.to_string(), c);
        }
    }

    pub fn add_term(&mut self, label: &str, c: &Coef) {
        let v = self.get(label).add(c);
        self.set(label, v);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&String, &Coef)> {
        self.0.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn plus(&self, other: &QDivisor) -> QDivisor {
        let mut d = self.clone();
        for (l, c) in other.terms() {
            d.add_term(l, c);
        }
        d
    }

    /// Subtracts a divisor with finite coefficients.
    pub fn minus(&self, other: &QDivisor) -> QDivisor {
        let mut d = self.clone();
        for (l, c) in other.terms() {
            if let Coef::Finite(x) = c {
                d.add_term(l, &Coef::Finite(-x));
            }
        }
        d
    }

    pub fn scale(&self, k: &Q) -> QDivisor {
        let mut d = QDivisor::new();
        for (l, c) in self.terms() {
            d.set(l, c.scale(k));
        }
        d
    }

    pub fn has_infinity(&self) -> bool {
        self.0.values().any(|c| *c == Coef::Infinity)
    }

    pub fn is_integral(&self) -> bool {
        self.0.values().all(|c| c.finite().is_some_and(|x| x.is_integer()))
    }

    /// Coefficientwise `≥ 0`.
    pub fn is_effective(&self) -> bool {
        self.0.values().all(|c| c.finite().is_none_or(|x| !x.is_negative()))
    }

    /// Coefficientwise comparison `self ≤ other`.
    pub fn le(&self, other: &QDivisor) -> bool {
        let labels: BTreeSet<&String> = self.labels().chain(other.labels()).collect();
        labels.into_iter().all(|l| match (self.get(l), other.get(l)) {
            (_, Coef::Infinity) => true,
            (Coef::Infinity, _) => false,
            (Coef::Finite(a), Coef::Finite(b)) => a <= b,
        })
    }

    pub fn floor(&self) -> QDivisor {
        let mut d = QDivisor::new();
        for (l, c) in self.terms() {
            d.set(
                l,
                match c {
                    Coef::Finite(x) => Coef::Finite(x.floor()),
                    Coef::Infinity => Coef::Infinity,
                },
            );
        }
        d
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(l, c)| format!("{c}*{l}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `χ^m · ∏ g_j^{n_j}`.
///
/// On curves the character is empty and `g` ranges over the linear forms
/// `x − a`, keyed by the point label of `a`. On toric bases `g` ranges over
/// the defining functions of the extra primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalFunction {
    pub character: Vec<Int>,
    pub factors: BTreeMap<String, Int>,
    zero: bool,
}

impl RationalFunction {
    pub fn one(dim: usize) -> Self {
        RationalFunction { character: vec![Int::zero(); dim], factors: BTreeMap::new(), zero: false }
    }

    pub fn zero() -> Self {
        RationalFunction { character: Vec::new(), factors: BTreeMap::new(), zero: true }
    }

    pub fn character(m: Vec<Int>) -> Self {
        RationalFunction { character: m, factors: BTreeMap::new(), zero: false }
    }

    pub fn from_factors(dim: usize, factors: &[(&str, i64)]) -> Self {
        let mut f = RationalFunction::one(dim);
        for (l, n) in factors {
            f.mul_factor(l, &Int::from(*n));
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn mul_factor(&mut self, label: &str, n: &Int) {
        let e = self.factors.get(label).cloned().unwrap_or_else(Int::zero) + n;
        if e.is_zero() {
            self.factors.remove(label);
        } else {
            self.factors.insert(label.to_string(), e);
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        if self.zero || other.zero {
            return RationalFunction::zero();
        }
        let n = self.character.len().max(other.character.len());
        let get = |v: &Vec<Int>, i: usize| v.get(i).cloned().unwrap_or_else(Int::zero);
        let mut f = RationalFunction::character((0..n).map(|i| get(&self.character, i) + get(&other.character, i)).collect());
        f.factors = self.factors.clone();
        for (l, e) in &other.factors {
            f.mul_factor(l, e);
        }
        f
    }

    pub fn inverse(&self) -> Result<RationalFunction> {
        if self.zero {
            return Err(Error::ZeroFunction);
        }
        Ok(RationalFunction {
            character: self.character.iter().map(|x| -x).collect(),
            factors: self.factors.iter().map(|(l, e)| (l.clone(), -e)).collect(),
            zero: false,
        })
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if self.character.iter().any(|x| !x.is_zero()) {
            let m: Vec<String> = self.character.iter().map(|x| x.to_string()).collect();
            parts.push(format!("chi^({})", m.join(",")));
        }
        for (l, e) in &self.factors {
            let base = match Point::parse(l) {
                Some(Point::Finite(a)) if a.is_zero() => "x".to_string(),
                Some(Point::Finite(a)) if a.is_negative() => format!("(x+{})", fmt_q(&-a)),
                Some(Point::Finite(a)) => format!("(x-{})", fmt_q(&a)),
                _ => format!("g[{l}]"),
            };
            if e.is_one() {
                parts.push(base);
            } else {
                parts.push(format!("{base}^{e}"));
            }
        }
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join("*"))
    }
}

/// A basis of `L(D)`, possibly truncated to a search window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sections {
    pub dim: usize,
    pub basis: Vec<RationalFunction>,
    /// The space is infinite-dimensional and only a window was enumerated.
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Positivity {
    pub qcartier: bool,
    pub semiample: bool,
    pub big: bool,
}

impl Positivity {
    pub fn all() -> Self {
        Positivity { qcartier: true, semiample: true, big: true }
    }
}

impl Base {
    pub fn is_curve(&self) -> bool {
        !matches!(self, Base::Toric(_))
    }

    pub fn is_projective_line(&self) -> bool {
        matches!(self, Base::ProjectiveLine)
    }

    pub fn toric(&self) -> Option<&ToricBase> {
        match self {
            Base::Toric(t) => Some(t),
            _ => None,
        }
    }

    /// Rank of the character lattice of a toric base, zero on curves.
    pub fn character_rank(&self) -> usize {
        self.toric().map_or(0, |t| t.dim)
    }

    /// Checks that a label names a prime divisor of this base.
    pub fn check_prime(&self, label: &str) -> Result<()> {
        let ok = match self {
            Base::ProjectiveLine => Point::parse(label).is_some(),
            Base::OpenInProjectiveLine(removed) => {
                Point::parse(label).is_some_and(|p| !removed.contains(&p))
            }
            Base::Toric(t) => t.ray_index(label).is_some() || t.extra_index(label).is_some(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnknownPrime(label.to_string()))
        }
    }

    /// Canonical spelling of a prime label (`"2/4"` becomes `"1/2"` on curves).
    pub fn canonical_label(&self, label: &str) -> Result<String> {
        self.check_prime(label)?;
        Ok(match self {
            Base::Toric(_) => label.to_string(),
            _ => Point::parse(label).expect("checked").label(),
        })
    }

    pub fn degree(&self, d: &QDivisor) -> Result<Coef> {
        let degs: BTreeMap<String, Q> = match self {
            Base::ProjectiveLine => {
                let mut s = Q::zero();
                for (l, c) in d.terms() {
                    self.check_prime(l)?;
                    match c {
                        Coef::Finite(x) => s += x,
                        Coef::Infinity => return Ok(Coef::Infinity),
                    }
                }
                return Ok(Coef::Finite(s));
            }
            Base::OpenInProjectiveLine(_) => return Err(Error::NoDegreeMap),
            Base::Toric(t) => t.degrees.clone().ok_or(Error::NoDegreeMap)?,
        };
        let mut s = Q::zero();
        for (l, c) in d.terms() {
            let w = degs.get(l).ok_or_else(|| Error::UnknownPrime(l.clone()))?;
            match c {
                Coef::Finite(x) => s += x * w,
                Coef::Infinity if w.is_zero() => {}
                Coef::Infinity => return Ok(Coef::Infinity),
            }
        }
        Ok(Coef::Finite(s))
    }

    /// Degree of a prime divisor under the declared degree map.
    pub fn prime_degree(&self, label: &str) -> Result<Q> {
        match self {
            Base::ProjectiveLine => {
                self.check_prime(label)?;
                Ok(Q::one())
            }
            Base::OpenInProjectiveLine(_) => Err(Error::NoDegreeMap),
            Base::Toric(t) => {
                let degs = t.degrees.as_ref().ok_or(Error::NoDegreeMap)?;
                degs.get(label).cloned().ok_or_else(|| Error::UnknownPrime(label.to_string()))
            }
        }
    }

    pub fn order_along(&self, f: &RationalFunction, prime: &str) -> Result<Int> {
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        self.check_prime(prime)?;
        match self {
            Base::ProjectiveLine | Base::OpenInProjectiveLine(_) => {
                let p = Point::parse(prime).expect("checked");
                match p {
                    Point::Infinity => Ok(-f.factors.values().fold(Int::zero(), |a, b| a + b)),
                    Point::Finite(_) => Ok(f.factors.get(&p.label()).cloned().unwrap_or_else(Int::zero)),
                }
            }
            Base::Toric(t) => {
                if let Some(j) = t.extra_index(prime) {
                    return Ok(f.factors.get(&t.extra[j].label).cloned().unwrap_or_else(Int::zero));
                }
                let v = t.ray(prime).expect("checked");
                let m: QVec = (0..t.dim)
                    .map(|i| Q::from_integer(f.character.get(i).cloned().unwrap_or_else(Int::zero)))
                    .collect();
                let mut o = dot(v, &m).to_integer();
                for (l, n) in &f.factors {
                    let j = t.extra_index(l).ok_or_else(|| Error::UnknownPrime(l.clone()))?;
                    if let Some(a) = t.extra[j].invariant_orders.get(prime) {
                        o += n * a;
                    }
                }
                Ok(o)
            }
        }
    }

    /// `Div(f)` as a divisor on this base.
    pub fn divisor_of(&self, f: &RationalFunction) -> Result<QDivisor> {
        if f.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let labels: Vec<String> = match self {
            Base::ProjectiveLine | Base::OpenInProjectiveLine(_) => {
                let mut ls: Vec<String> = f.factors.keys().cloned().collect();
                ls.push("inf".to_string());
                ls.into_iter().filter(|l| self.check_prime(l).is_ok()).collect()
            }
            Base::Toric(t) => {
                t.rays.iter().map(|(l, _)| l.clone()).chain(t.extra.iter().map(|e| e.label.clone())).collect()
            }
        };
        let mut d = QDivisor::new();
        for l in labels {
            let o = self.order_along(f, &l)?;
            d.set(&l, Coef::Finite(Q::from_integer(o)));
        }
        Ok(d)
    }

    /// A basis of `L(D)`.
    ///
    /// Infinite coefficients and removed points are replaced by `bound`, and
    /// on toric bases unbounded section polytopes are cut by the box
    /// `[-bound, bound]ⁿ`; `truncated` records when either happened.
    pub fn global_sections(&self, d: &QDivisor, bound: i64) -> Result<Sections> {
        match self {
            Base::ProjectiveLine | Base::OpenInProjectiveLine(_) => self.curve_sections(d, bound),
            Base::Toric(t) => toric_sections(t, d, bound),
        }
    }

    fn curve_sections(&self, d: &QDivisor, bound: i64) -> Result<Sections> {
        let mut truncated = false;
        let mut coeffs: BTreeMap<Point, Int> = BTreeMap::new();
        for (l, c) in d.terms() {
            self.check_prime(l)?;
            let p = Point::parse(l).expect("checked");
            let v = match c {
                Coef::Finite(x) => crate::rat::floor(x),
                Coef::Infinity => {
                    truncated = true;
                    Int::from(bound)
                }
            };
            coeffs.insert(p, v);
        }
        if let Base::OpenInProjectiveLine(removed) = self {
            for p in removed {
                truncated = true;
                coeffs.insert(p.clone(), Int::from(bound));
            }
        }
        let deg: Int = coeffs.values().fold(Int::zero(), |a, b| a + b);
        if deg.is_negative() {
            return Ok(Sections { dim: 0, basis: Vec::new(), truncated });
        }
        let mut h = RationalFunction::one(0);
        for (p, c) in &coeffs {
            if let Point::Finite(_) = p {
                h.mul_factor(&p.label(), &-c);
            }
        }
        let n: usize = deg.try_into().map_err(|_| Error::SearchBoundExceeded)?;
        let mut basis = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut f = h.clone();
            f.mul_factor("0", &Int::from(j));
            basis.push(f);
        }
        Ok(Sections { dim: n + 1, basis, truncated })
    }

    /// Whether an integral divisor is principal, with a function `f` such that `Div(f) = D`.
    pub fn is_principal(&self, d: &QDivisor) -> Result<Option<RationalFunction>> {
        if !d.is_integral() {
            return Err(Error::NonIntegral);
        }
        for l in d.labels() {
            self.check_prime(l)?;
        }
        let int = |c: Coef| c.finite().expect("integral").to_integer();
        match self {
            Base::ProjectiveLine => {
                if !int(self.degree(d)?).is_zero() {
                    return Ok(None);
                }
                let mut f = RationalFunction::one(0);
                for (l, c) in d.terms() {
                    if Point::parse(l) != Some(Point::Infinity) {
                        f.mul_factor(&Point::parse(l).expect("checked").label(), &int(c.clone()));
                    }
                }
                Ok(Some(f))
            }
            Base::OpenInProjectiveLine(removed) => {
                let mut f = RationalFunction::one(0);
                let mut total = Int::zero();
                for (l, c) in d.terms() {
                    if Point::parse(l) != Some(Point::Infinity) {
                        f.mul_factor(&Point::parse(l).expect("checked").label(), &int(c.clone()));
                        total += int(c.clone());
                    }
                }
                if removed.contains(&Point::Infinity) {
                    return Ok(Some(f));
                }
                // balance the order at infinity with a removed finite point
                let target = int(d.get("inf"));
                let b = removed.iter().find(|p| **p != Point::Infinity).expect("nonempty");
                f.mul_factor(&b.label(), &(-total - target));
                Ok(Some(f))
            }
            Base::Toric(t) => {
                let mut rest = d.clone();
                let mut f = RationalFunction::one(t.dim);
                for e in &t.extra {
                    let n = int(d.get(&e.label));
                    if n.is_zero() {
                        continue;
                    }
                    f.mul_factor(&e.label, &n);
                    let mut g = QDivisor::new();
                    g.set(&e.label, Coef::Finite(Q::one()));
                    for (l, o) in &e.invariant_orders {
                        g.set(l, Coef::Finite(Q::from_integer(o.clone())));
                    }
                    rest = rest.minus(&g.scale(&Q::from_integer(n)));
                }
                let a: IntMat =
                    t.rays.iter().map(|(_, v)| v.iter().map(|x| x.to_integer()).collect()).collect();
                let b: Vec<Int> = t.rays.iter().map(|(l, _)| int(rest.get(l))).collect();
                if t.dim == 0 {
                    return Ok(if b.iter().all(|x| x.is_zero()) { Some(f) } else { None });
                }
                Ok(solve_integer(&a, t.dim, &b).map(|m| f.mul(&RationalFunction::character(m))))
            }
        }
    }

    /// `Q`-Cartier, semiample and big flags of the restriction to the locus.
    pub fn positivity(&self, d: &QDivisor) -> Result<Positivity> {
        for l in d.labels() {
            self.check_prime(l)?;
        }
        match self {
            Base::ProjectiveLine => match self.degree(d)? {
                Coef::Infinity => Ok(Positivity::all()),
                Coef::Finite(g) => Ok(Positivity {
                    qcartier: true,
                    semiample: !g.is_negative(),
                    big: g.is_positive(),
                }),
            },
            Base::OpenInProjectiveLine(_) => Ok(Positivity::all()),
            Base::Toric(t) => toric_positivity(t, d),
        }
    }

    /// Whether `loc(D)` is semiprojective.
    pub fn locus_semiprojective(&self, d: &QDivisor) -> Result<bool> {
        match self {
            Base::ProjectiveLine | Base::OpenInProjectiveLine(_) => Ok(true),
            Base::Toric(t) => {
                let (removed, extra_inf) = infinite_primes(t, d);
                if extra_inf {
                    return Err(Error::UnsupportedBase("infinite coefficient at a non-invariant prime".into()));
                }
                if removed.is_empty() {
                    return Ok(t.semiprojective);
                }
                let sub = t.subfan(&removed);
                Ok(t.semiprojective && t.support_is_convex(&sub))
            }
        }
    }

    /// Whether the locus is affine.
    pub fn locus_affine(&self, d: &QDivisor) -> bool {
        match self {
            Base::ProjectiveLine => d.has_infinity(),
            Base::OpenInProjectiveLine(_) => true,
            Base::Toric(t) => {
                let (removed, extra_inf) = infinite_primes(t, d);
                if extra_inf {
                    return false;
                }
                t.subfan(&removed).len() == 1
            }
        }
    }

    pub fn is_smooth(&self) -> bool {
        match self {
            Base::Toric(t) => t.is_smooth(),
            _ => true,
        }
    }
}

fn infinite_primes(t: &ToricBase, d: &QDivisor) -> (BTreeSet<usize>, bool) {
    let mut removed = BTreeSet::new();
    let mut extra = false;
    for (l, c) in d.terms() {
        if *c == Coef::Infinity {
            match t.ray_index(l) {
                Some(i) => {
                    removed.insert(i);
                }
                None => extra = true,
            }
        }
    }
    (removed, extra)
}

/// Replaces the extra primes by invariant divisors in the same `ℚ`-class.
fn invariant_representative(t: &ToricBase, d: &QDivisor) -> Result<(QDivisor, BTreeMap<String, Q>)> {
    let mut rest = d.clone();
    let mut shifts = BTreeMap::new();
    for e in &t.extra {
        let c = d.get(&e.label);
        let c = match c {
            Coef::Finite(x) => x,
            Coef::Infinity => {
                return Err(Error::UnsupportedBase("infinite coefficient at a non-invariant prime".into()))
            }
        };
        if c.is_zero() {
            continue;
        }
        rest.set(&e.label, Coef::zero());
        for (l, o) in &e.invariant_orders {
            rest.add_term(l, &Coef::Finite(-(&c * Q::from_integer(o.clone()))));
        }
        shifts.insert(e.label.clone(), c);
    }
    Ok((rest, shifts))
}

fn toric_sections(t: &ToricBase, d: &QDivisor, bound: i64) -> Result<Sections> {
    let mut truncated = false;
    let mut fl = QDivisor::new();
    for (l, c) in d.terms() {
        t.ray_index(l).or(t.extra_index(l)).ok_or_else(|| Error::UnknownPrime(l.clone()))?;
        let v = match c {
            Coef::Finite(x) => x.floor(),
            Coef::Infinity => {
                truncated = true;
                Q::from_integer(Int::from(bound))
            }
        };
        fl.set(l, Coef::Finite(v));
    }
    let (inv, shifts) = invariant_representative(t, &fl)?;
    let mut g = RationalFunction::one(t.dim);
    for (l, c) in &shifts {
        g.mul_factor(l, &c.to_integer());
    }
    if t.dim == 0 {
        return Ok(Sections { dim: 1, basis: vec![g], truncated });
    }
    let ineqs: Vec<(QVec, Q)> = t
        .rays
        .iter()
        .map(|(l, v)| (v.clone(), -inv.get(l).finite().cloned().unwrap_or_else(Q::zero)))
        .collect();
    let p = Polyhedron::from_hrep(t.dim, &ineqs, &[]);
    let p = if p.is_bounded() || p.is_empty() {
        p
    } else {
        truncated = true;
        let b = Q::from_integer(Int::from(bound));
        let mut cut = Vec::new();
        for i in 0..t.dim {
            let e = crate::rat::unit(t.dim, i);
            cut.push((e.clone(), -b.clone()));
            cut.push((crate::rat::neg(&e), -b.clone()));
        }
        p.restrict(&cut, &[])
    };
    let basis: Vec<RationalFunction> = p
        .lattice_points()
        .into_iter()
        .map(|m| g.mul(&RationalFunction::character(m.iter().map(|x| x.to_integer()).collect())))
        .collect();
    Ok(Sections { dim: basis.len(), basis, truncated })
}

fn toric_positivity(t: &ToricBase, d: &QDivisor) -> Result<Positivity> {
    let (removed, extra_inf) = infinite_primes(t, d);
    if extra_inf {
        return Err(Error::UnsupportedBase("infinite coefficient at a non-invariant prime".into()));
    }
    let mut finite = d.clone();
    for &i in &removed {
        finite.set(&t.rays[i].0, Coef::zero());
    }
    let (inv, _) = invariant_representative(t, &finite)?;
    let cones = if removed.is_empty() { t.cones.clone() } else { t.subfan(&removed) };
    let live: BTreeSet<usize> = cones.iter().flatten().copied().collect();
    let coef = |i: usize| inv.get(&t.rays[i].0).finite().cloned().unwrap_or_else(Q::zero);
    let all_ineqs: Vec<(QVec, Q)> = live.iter().map(|&i| (t.rays[i].1.clone(), -coef(i))).collect();
    let mut qcartier = true;
    let mut semiample = true;
    for c in &cones {
        let rows: Vec<QVec> = c.iter().map(|&i| t.rays[i].1.clone()).collect();
        let rhs: QVec = c.iter().map(|&i| -coef(i)).collect();
        if linalg::solve(&rows, &rhs, t.dim).is_none() {
            qcartier = false;
            semiample = false;
            continue;
        }
        let eqs: Vec<(QVec, Q)> = rows.into_iter().zip(rhs).collect();
        if lp::feasible_point(&all_ineqs, &eqs, t.dim).is_none() {
            semiample = false;
        }
    }
    let big = if t.dim == 0 { true } else { Polyhedron::from_hrep(t.dim, &all_ineqs, &[]).is_full_dim() };
    Ok(Positivity { qcartier, semiample, big })
}
