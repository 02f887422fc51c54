//! JSON mirrors of the domain types and conversions in both directions.
//!
//! Rationals are strings `"p/q"`, `∞` is `"inf"` and an empty coefficient is
//! `"empty"`. Integer matrices are plain JSON numbers.

use std::collections::BTreeMap;
use std::fmt;

use pdiv::base::{Base, Coef, ExtraPrime, Point, QDivisor, ToricBase};
use pdiv::deform::DeformationInput;
use pdiv::lattice::LatticeMap;
use pdiv::pdivisor::{PolyhedralDivisor, ProperReport};
use pdiv::polyhedra::{Cone, Polyhedron};
use pdiv::rat::{fmt_q, parse_q};
use pdiv::tvariety::{DivisorialFan, TInvariantDivisor};
use pdiv::upgrade::InvariantPDivisorOnFan;
use pdiv::{Int, QVec, Q};
use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

/// A rational number serialized as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(&self.0))
    }
}

struct RatVisitor;

impl<'de> Visitor<'de> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational number such as \"3\" or \"-1/2\"")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
        parse_q(v).map(Rat).ok_or_else(|| E::custom(format!("malformed rational {v:?}")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
        Ok(Rat(Q::from_integer(Int::from(v))))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
        Ok(Rat(Q::from_integer(Int::from(v))))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        d.deserialize_any(RatVisitor)
    }
}

/// A coefficient in `ℚ ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefJ(pub Coef);

impl Serialize for CoefJ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for CoefJ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<CoefJ, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = CoefJ;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational number or \"inf\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<CoefJ, E> {
                if v == "inf" {
                    return Ok(CoefJ(Coef::Infinity));
                }
                RatVisitor.visit_str(v).map(|r| CoefJ(Coef::Finite(r.0)))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<CoefJ, E> {
                Ok(CoefJ(Coef::Finite(Q::from_integer(Int::from(v)))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<CoefJ, E> {
                Ok(CoefJ(Coef::Finite(Q::from_integer(Int::from(v)))))
            }
        }
        d.deserialize_any(V)
    }
}

pub type VecJ = Vec<Rat>;

pub fn vec_j(v: &[Q]) -> VecJ {
    v.iter().cloned().map(Rat).collect()
}

pub fn vec_q(v: &[Rat]) -> QVec {
    v.iter().map(|r| r.0.clone()).collect()
}

fn vecs_q(vs: &[VecJ]) -> Vec<QVec> {
    vs.iter().map(|v| vec_q(v)).collect()
}

fn vecs_j(vs: &[QVec]) -> Vec<VecJ> {
    vs.iter().map(|v| vec_j(v)).collect()
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HullJ {
    pub vertices: Vec<VecJ>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rays: Vec<VecJ>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<VecJ>,
}

/// A polyhedron, or `"empty"`.
#[derive(Clone, Debug)]
pub enum PolyJ {
    Empty,
    Hull(HullJ),
}

impl Serialize for PolyJ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PolyJ::Empty => s.serialize_str("empty"),
            PolyJ::Hull(h) => h.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for PolyJ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<PolyJ, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = PolyJ;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"empty\" or an object with vertices, rays and lineality")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<PolyJ, E> {
                match v {
                    "empty" => Ok(PolyJ::Empty),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<PolyJ, A::Error> {
                HullJ::deserialize(de::value::MapAccessDeserializer::new(map)).map(PolyJ::Hull)
            }
        }
        d.deserialize_any(V)
    }
}

fn check_dim(dim: usize, vs: &[QVec], what: &str) -> Result<(), CliError> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(CliError::object(format!("{what} has length {} but the dimension is {dim}", v.len()))),
        None => Ok(()),
    }
}

impl PolyJ {
    pub fn from_poly(p: &Polyhedron) -> PolyJ {
        if p.is_empty() {
            return PolyJ::Empty;
        }
        PolyJ::Hull(HullJ { vertices: vecs_j(p.vertices()), rays: vecs_j(p.rays()), lineality: vecs_j(p.lineality()) })
    }

    pub fn to_poly(&self, dim: usize) -> Result<Polyhedron, CliError> {
        match self {
            PolyJ::Empty => Ok(Polyhedron::empty(dim)),
            PolyJ::Hull(h) => {
                let (v, r, l) = (vecs_q(&h.vertices), vecs_q(&h.rays), vecs_q(&h.lineality));
                check_dim(dim, &v, "vertex")?;
                check_dim(dim, &r, "ray")?;
                check_dim(dim, &l, "lineality vector")?;
                if v.is_empty() {
                    return Err(CliError::object("a polyhedron needs a vertex; write \"empty\" for ∅".into()));
                }
                Ok(Polyhedron::from_vrep(dim, &v, &r, &l))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeJ {
    pub rays: Vec<VecJ>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<VecJ>,
}

impl ConeJ {
    pub fn from_cone(c: &Cone) -> ConeJ {
        ConeJ { rays: vecs_j(c.rays()), lineality: vecs_j(c.lineality()) }
    }

    pub fn to_cone(&self, dim: usize) -> Result<Cone, CliError> {
        let (r, l) = (vecs_q(&self.rays), vecs_q(&self.lineality));
        check_dim(dim, &r, "ray")?;
        check_dim(dim, &l, "lineality vector")?;
        Ok(Cone::with_lineality(dim, &r, &l))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayJ {
    pub label: String,
    pub ray: VecJ,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtraJ {
    pub label: String,
    pub equation: String,
    pub orders: BTreeMap<String, i64>,
}

/// `{"type": "P1"}`, `{"type": "open-P1", "removed": [...]}` or a toric base.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseJ {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub removed: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<RayJ>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cones: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra: Option<Vec<ExtraJ>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<BTreeMap<String, Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semiprojective: Option<bool>,
}

impl BaseJ {
    pub fn from_base(b: &Base) -> BaseJ {
        match b {
            Base::ProjectiveLine => BaseJ { kind: "P1".into(), ..Default::default() },
            Base::OpenInProjectiveLine(pts) => BaseJ {
                kind: "open-P1".into(),
                removed: Some(pts.iter().map(Point::label).collect()),
                ..Default::default()
            },
            Base::Toric(t) => BaseJ::from_toric(t),
        }
    }

    pub fn from_toric(t: &ToricBase) -> BaseJ {
        BaseJ {
            kind: "toric".into(),
            dim: Some(t.dim),
            rays: Some(t.rays.iter().map(|(l, r)| RayJ { label: l.clone(), ray: vec_j(r) }).collect()),
            cones: Some(t.cones.clone()),
            extra: Some(
                t.extra
                    .iter()
                    .map(|e| ExtraJ {
                        label: e.label.clone(),
                        equation: e.equation.clone(),
                        orders: e.invariant_orders.iter().map(|(l, o)| (l.clone(), int_to_i64(o))).collect(),
                    })
                    .collect(),
            ),
            degrees: t.degrees.as_ref().map(|d| d.iter().map(|(l, x)| (l.clone(), Rat(x.clone()))).collect()),
            semiprojective: Some(t.semiprojective),
            ..Default::default()
        }
    }

    pub fn to_base(&self) -> Result<Base, CliError> {
        let toric_only = self.dim.is_some()
            || self.rays.is_some()
            || self.cones.is_some()
            || self.extra.is_some()
            || self.degrees.is_some()
            || self.semiprojective.is_some();
        match self.kind.as_str() {
            "P1" if self.removed.is_none() && !toric_only => Ok(Base::ProjectiveLine),
            "open-P1" if !toric_only => {
                let removed = self.removed.as_ref().ok_or_else(|| CliError::object("open-P1 needs `removed`".into()))?;
                let mut pts = Vec::new();
                for s in removed {
                    pts.push(Point::parse(s).ok_or_else(|| CliError::object(format!("{s:?} is not a point of P1")))?);
                }
                pts.sort();
                pts.dedup();
                if pts.is_empty() {
                    return Err(CliError::object("open-P1 removes at least one point".into()));
                }
                Ok(Base::OpenInProjectiveLine(pts))
            }
            "toric" if self.removed.is_none() => Ok(Base::Toric(self.to_toric()?)),
            k => Err(CliError::object(format!("unknown or malformed base of type {k:?}"))),
        }
    }

    pub fn to_toric(&self) -> Result<ToricBase, CliError> {
        let dim = self.dim.ok_or_else(|| CliError::object("toric base needs `dim`".into()))?;
        let rays: Vec<(String, QVec)> =
            self.rays.iter().flatten().map(|r| (r.label.clone(), vec_q(&r.ray))).collect();
        let cones = self.cones.clone().ok_or_else(|| CliError::object("toric base needs `cones`".into()))?;
        let mut t = ToricBase::new(dim, rays, cones)?;
        for e in self.extra.iter().flatten() {
            t = t.with_extra(ExtraPrime {
                label: e.label.clone(),
                equation: e.equation.clone(),
                invariant_orders: e.orders.iter().map(|(l, o)| (l.clone(), Int::from(*o))).collect(),
            });
        }
        if let Some(d) = &self.degrees {
            t = t.with_degrees(d.iter().map(|(l, x)| (l.clone(), x.0.clone())).collect());
        }
        if let Some(s) = self.semiprojective {
            t = t.with_semiprojective(s);
        }
        Ok(t)
    }
}

pub fn int_to_i64(x: &Int) -> i64 {
    i64::try_from(x).expect("integer entry fits in 64 bits")
}

pub fn map_rows(m: &LatticeMap) -> Vec<Vec<i64>> {
    m.matrix.iter().map(|row| row.iter().map(int_to_i64).collect()).collect()
}

/// A lattice map given by its rows; `source` is needed when there are no rows.
pub fn rows_map(rows: &[Vec<i64>], source: Option<usize>) -> Result<LatticeMap, CliError> {
    let n = rows.first().map(Vec::len).or(source).ok_or_else(|| CliError::object("matrix has no rows".into()))?;
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::object("matrix rows differ in length".into()));
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Ok(LatticeMap::from_i64(n, &refs))
}

fn coeffs_j(d: &PolyhedralDivisor) -> BTreeMap<String, PolyJ> {
    d.coeffs().map(|(l, p)| (l.clone(), PolyJ::from_poly(p))).collect()
}

fn coeffs_q(cs: &BTreeMap<String, PolyJ>, dim: usize) -> Result<Vec<(String, Polyhedron)>, CliError> {
    cs.iter().map(|(l, p)| Ok((l.clone(), p.to_poly(dim)?))).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PDivisorJ {
    pub base: BaseJ,
    pub dim: usize,
    pub tail: ConeJ,
    pub coefficients: BTreeMap<String, PolyJ>,
}

impl PDivisorJ {
    pub fn from_pdivisor(d: &PolyhedralDivisor) -> PDivisorJ {
        PDivisorJ {
            base: BaseJ::from_base(d.base()),
            dim: d.rank(),
            tail: ConeJ::from_cone(d.tail()),
            coefficients: coeffs_j(d),
        }
    }

    pub fn to_pdivisor(&self) -> Result<PolyhedralDivisor, CliError> {
        let tail = self.tail.to_cone(self.dim)?;
        Ok(PolyhedralDivisor::new(self.base.to_base()?, tail, coeffs_q(&self.coefficients, self.dim)?)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberJ {
    pub tail: ConeJ,
    pub coefficients: BTreeMap<String, PolyJ>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJ {
    pub base: BaseJ,
    pub dim: usize,
    pub members: Vec<MemberJ>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub semicomplete: bool,
}

impl FanJ {
    pub fn from_fan(s: &DivisorialFan) -> FanJ {
        FanJ {
            base: BaseJ::from_base(s.base()),
            dim: s.rank(),
            members: s
                .members()
                .iter()
                .map(|m| MemberJ { tail: ConeJ::from_cone(m.tail()), coefficients: coeffs_j(m) })
                .collect(),
            semicomplete: s.semicomplete(),
        }
    }

    pub fn to_fan(&self) -> Result<DivisorialFan, CliError> {
        let base = self.base.to_base()?;
        let members = self
            .members
            .iter()
            .map(|m| {
                let tail = m.tail.to_cone(self.dim)?;
                Ok(PolyhedralDivisor::new(base.clone(), tail, coeffs_q(&m.coefficients, self.dim)?)?)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(DivisorialFan::new(base, members)?.with_semicomplete(self.semicomplete))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayCoefJ<C> {
    pub ray: VecJ,
    pub coefficient: C,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexCoefJ<C> {
    pub prime: String,
    pub vertex: VecJ,
    pub coefficient: C,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvPDivisorJ {
    pub fan: FanJ,
    pub dim: usize,
    pub tail: ConeJ,
    pub rays: Vec<RayCoefJ<PolyJ>>,
    pub vertices: Vec<VertexCoefJ<PolyJ>>,
}

impl InvPDivisorJ {
    pub fn from_divisor(d: &InvariantPDivisorOnFan) -> InvPDivisorJ {
        let fan = d.fan();
        let tail = d.tail().poly();
        let rays = d
            .rays()
            .iter()
            .map(|r| (r, d.ray_coeff(r)))
            .filter(|(_, p)| p != tail)
            .map(|(r, p)| RayCoefJ { ray: vec_j(r), coefficient: PolyJ::from_poly(&p) })
            .collect();
        let mut vertices = Vec::new();
        for p in fan.marked_primes() {
            for v in fan.vertices(&p) {
                let c = d.vertex_coeff(&p, &v);
                if c != *tail {
                    vertices.push(VertexCoefJ { prime: p.clone(), vertex: vec_j(&v), coefficient: PolyJ::from_poly(&c) });
                }
            }
        }
        InvPDivisorJ { fan: FanJ::from_fan(fan), dim: d.rank(), tail: ConeJ::from_cone(d.tail()), rays, vertices }
    }

    pub fn to_divisor(&self) -> Result<InvariantPDivisorOnFan, CliError> {
        let fan = self.fan.to_fan()?;
        let tail = self.tail.to_cone(self.dim)?;
        let rays = self
            .rays
            .iter()
            .map(|r| Ok((vec_q(&r.ray), r.coefficient.to_poly(self.dim)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        let verts = self
            .vertices
            .iter()
            .map(|v| Ok((v.prime.clone(), vec_q(&v.vertex), v.coefficient.to_poly(self.dim)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(InvariantPDivisorOnFan::new(fan, tail, rays, verts)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvDivisorJ {
    pub fan: FanJ,
    pub rays: Vec<RayCoefJ<Rat>>,
    pub vertices: Vec<VertexCoefJ<Rat>>,
}

impl InvDivisorJ {
    pub fn from_divisor(d: &TInvariantDivisor) -> InvDivisorJ {
        InvDivisorJ {
            fan: FanJ::from_fan(d.fan()),
            rays: d.ray_coeffs().iter().map(|(r, c)| RayCoefJ { ray: vec_j(r), coefficient: Rat(c.clone()) }).collect(),
            vertices: d
                .vertex_coeffs()
                .iter()
                .flat_map(|(p, m)| {
                    m.iter().map(move |(v, c)| VertexCoefJ {
                        prime: p.clone(),
                        vertex: vec_j(v),
                        coefficient: Rat(c.clone()),
                    })
                })
                .collect(),
        }
    }

    pub fn to_divisor(&self) -> Result<TInvariantDivisor, CliError> {
        let fan = self.fan.to_fan()?;
        let rays = self.rays.iter().map(|r| (vec_q(&r.ray), r.coefficient.0.clone())).collect();
        let verts: Vec<(String, QVec, Q)> =
            self.vertices.iter().map(|v| (v.prime.clone(), vec_q(&v.vertex), v.coefficient.0.clone())).collect();
        Ok(TInvariantDivisor::new(&fan, rays, verts)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationJ {
    /// Dimension of `N ⊕ ℚ`.
    pub dim: usize,
    pub delta: ConeJ,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub parts: Vec<PolyJ>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<u32>>,
}

impl DeformationJ {
    pub fn from_input(din: &DeformationInput) -> DeformationJ {
        let mixed = din.is_mixed();
        DeformationJ {
            dim: din.delta().dim(),
            delta: ConeJ::from_cone(din.delta()),
            k: (!mixed).then(|| din.k()),
            parts: din.parts().iter().map(PolyJ::from_poly).collect(),
            multiplicities: mixed.then(|| {
                (1..=din.parameters()).map(|i| u32::try_from(&din.multiplicity(i).to_integer()).unwrap_or(0)).collect()
            }),
        }
    }

    pub fn to_input(&self) -> Result<DeformationInput, CliError> {
        if self.dim == 0 {
            return Err(CliError::object("deformation needs dim ≥ 1".into()));
        }
        let delta = self.delta.to_cone(self.dim)?;
        let parts = self.parts.iter().map(|p| p.to_poly(self.dim - 1)).collect::<Result<Vec<_>, _>>()?;
        match (&self.k, &self.multiplicities) {
            (Some(k), None) => Ok(DeformationInput::new(delta, *k, parts)?),
            (None, Some(m)) => Ok(DeformationInput::mixed(delta, parts, m.clone())?),
            _ => Err(CliError::object("give exactly one of `k` and `multiplicities`".into())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricDowngradeJ {
    pub dim: usize,
    pub generators: Vec<VecJ>,
    /// Rows of `N̄ ↪ Ñ`.
    pub sub: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DowngradeJ {
    pub divisor: PDivisorJ,
    /// Rows of `pr: Ñ → N`.
    pub pr: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marks: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypothesesJ {
    pub complete: bool,
    pub q_factorial: bool,
    pub cl_torsion_free: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoxJ {
    pub fan: FanJ,
    pub primes: Vec<String>,
    pub hypotheses: HypothesesJ,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivot_order: Option<Vec<usize>>,
}

pub fn qdivisor_j(d: &QDivisor) -> BTreeMap<String, CoefJ> {
    d.terms().map(|(l, c)| (l.clone(), CoefJ(c.clone()))).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProperJ {
    pub proper: bool,
    pub qcartier: bool,
    pub semiample: bool,
    pub big: bool,
    pub loc_semiprojective: bool,
    pub fulldim_weightcone: bool,
}

impl ProperJ {
    pub fn from_report(r: &ProperReport) -> ProperJ {
        ProperJ {
            proper: r.is_proper(),
            qcartier: r.qcartier,
            semiample: r.semiample,
            big: r.big,
            loc_semiprojective: r.loc_semiprojective,
            fulldim_weightcone: r.fulldim_weightcone,
        }
    }
}
