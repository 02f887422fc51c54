//! JSON documents for `pdiv` objects and the command runner behind the `pdiv` binary.
//!
//! A document is `{"schema_version", "kind", "provenance", "payload"}`.
//! Emitted documents are canonical: keys sorted, rationals reduced, two-space
//! indentation and a trailing newline.

pub mod format;

use std::fmt;
use std::io::Write;
use std::path::Path;

use pdiv::base::Coef;
use pdiv::cox::{cox_correct, cox_sequence, CoxHypotheses};
use pdiv::deform::{check_admissible, deformation_upgrade, Admissibility, DeformationInput};
use pdiv::downgrade::{downgrade, downgrade_with_marks, DowngradeContext};
use pdiv::lattice::{LatticeMap, SplitOptions};
use pdiv::pdivisor::{toric_downgrade, PolyhedralDivisor};
use pdiv::rat::parse_q;
use pdiv::tvariety::{Basepoints, DivisorialFan, Sharpness, TInvariantDivisor};
use pdiv::upgrade::{correct_pic_z, upgrade, InvariantPDivisorOnFan};
use pdiv::{QVec, Q};
use serde::de::{self, DeserializeOwned, IgnoredAny, MapAccess, Visitor};
use serde::{Deserialize, Deserializer};
use serde_json::{json, Value};

use format::*;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error at line {line}, column {column}: {message}")]
    Schema { line: usize, column: usize, message: String },
    #[error("schema version {found:?} is not supported (expected {expected:?})")]
    VersionMismatch { found: String, expected: String },
    #[error("invalid object: {0}")]
    Object(String),
    #[error("{0}")]
    Math(#[from] pdiv::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn object(message: String) -> Self {
        CliError::Object(message)
    }

    fn from_json(e: serde_json::Error) -> Self {
        CliError::Schema { line: e.line(), column: e.column(), message: strip_position(&e.to_string()) }
    }
}

fn strip_position(s: &str) -> String {
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s.to_string(),
    }
}

/// The object carried by a document.
#[derive(Clone, Debug)]
pub enum Object {
    PDivisor(PolyhedralDivisor),
    DivisorialFan(DivisorialFan),
    InvariantPDivisor(InvariantPDivisorOnFan),
    InvariantDivisor(TInvariantDivisor),
    Deformation(DeformationInput),
    ToricDowngradeInput { generators: Vec<QVec>, sub: LatticeMap },
    DowngradeInput { divisor: PolyhedralDivisor, pr: LatticeMap, marks: Option<Vec<String>> },
    CoxInput { fan: DivisorialFan, primes: Vec<String>, hypotheses: CoxHypotheses, pivot_order: Option<Vec<usize>> },
    Report(Value),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::PDivisor(_) => "pdivisor",
            Object::DivisorialFan(_) => "divisorial-fan",
            Object::InvariantPDivisor(_) => "invariant-pdivisor",
            Object::InvariantDivisor(_) => "invariant-divisor",
            Object::Deformation(_) => "deformation",
            Object::ToricDowngradeInput { .. } => "toric-downgrade-input",
            Object::DowngradeInput { .. } => "downgrade-input",
            Object::CoxInput { .. } => "cox-input",
            Object::Report(_) => "report",
        }
    }

    pub fn payload(&self) -> Value {
        let v = match self {
            Object::PDivisor(d) => serde_json::to_value(PDivisorJ::from_pdivisor(d)),
            Object::DivisorialFan(s) => serde_json::to_value(FanJ::from_fan(s)),
            Object::InvariantPDivisor(d) => serde_json::to_value(InvPDivisorJ::from_divisor(d)),
            Object::InvariantDivisor(d) => serde_json::to_value(InvDivisorJ::from_divisor(d)),
            Object::Deformation(d) => serde_json::to_value(DeformationJ::from_input(d)),
            Object::ToricDowngradeInput { generators, sub } => serde_json::to_value(ToricDowngradeJ {
                dim: sub.target,
                generators: generators.iter().map(|g| vec_j(g)).collect(),
                sub: map_rows(sub),
            }),
            Object::DowngradeInput { divisor, pr, marks } => serde_json::to_value(DowngradeJ {
                divisor: PDivisorJ::from_pdivisor(divisor),
                pr: map_rows(pr),
                marks: marks.clone(),
            }),
            Object::CoxInput { fan, primes, hypotheses, pivot_order } => serde_json::to_value(CoxJ {
                fan: FanJ::from_fan(fan),
                primes: primes.clone(),
                hypotheses: HypothesesJ {
                    complete: hypotheses.complete,
                    q_factorial: hypotheses.q_factorial,
                    cl_torsion_free: hypotheses.cl_torsion_free,
                },
                pivot_order: pivot_order.clone(),
            }),
            Object::Report(v) => Ok(v.clone()),
        };
        v.expect("payloads serialize to JSON")
    }
}

#[derive(Clone, Debug)]
pub struct Document {
    pub provenance: String,
    pub object: Object,
}

impl Document {
    pub fn new(provenance: impl Into<String>, object: Object) -> Self {
        Document { provenance: provenance.into(), object }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "kind": self.object.kind(),
            "provenance": self.provenance,
            "payload": self.object.payload(),
        })
    }

    pub fn report(&self) -> Option<&Value> {
        match &self.object {
            Object::Report(v) => Some(v),
            _ => None,
        }
    }
}

/// Canonical bytes of a document.
pub fn emit(doc: &Document) -> Vec<u8> {
    canonical_bytes(&doc.to_value())
}

/// Canonical bytes of any JSON value.
pub fn canonical_bytes(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("values serialize");
    out.push(b'\n');
    out
}

/// Payload before conversion to domain objects.
enum RawPayload {
    PDivisor(PDivisorJ),
    Fan(FanJ),
    InvPDivisor(InvPDivisorJ),
    InvDivisor(InvDivisorJ),
    Deformation(DeformationJ),
    ToricDowngrade(ToricDowngradeJ),
    Downgrade(DowngradeJ),
    Cox(CoxJ),
    Report(Value),
}

fn raw_from<'de, A: MapAccess<'de>>(kind: &str, map: &mut A) -> Result<RawPayload, A::Error> {
    Ok(match kind {
        "pdivisor" => RawPayload::PDivisor(map.next_value()?),
        "divisorial-fan" => RawPayload::Fan(map.next_value()?),
        "invariant-pdivisor" => RawPayload::InvPDivisor(map.next_value()?),
        "invariant-divisor" => RawPayload::InvDivisor(map.next_value()?),
        "deformation" => RawPayload::Deformation(map.next_value()?),
        "toric-downgrade-input" => RawPayload::ToricDowngrade(map.next_value()?),
        "downgrade-input" => RawPayload::Downgrade(map.next_value()?),
        "cox-input" => RawPayload::Cox(map.next_value()?),
        "report" => RawPayload::Report(map.next_value()?),
        k => return Err(de::Error::custom(format!("unknown kind {k:?}"))),
    })
}

fn raw_from_value(kind: &str, v: Value) -> serde_json::Result<RawPayload> {
    fn f<T: DeserializeOwned>(v: Value) -> serde_json::Result<T> {
        serde_json::from_value(v)
    }
    Ok(match kind {
        "pdivisor" => RawPayload::PDivisor(f(v)?),
        "divisorial-fan" => RawPayload::Fan(f(v)?),
        "invariant-pdivisor" => RawPayload::InvPDivisor(f(v)?),
        "invariant-divisor" => RawPayload::InvDivisor(f(v)?),
        "deformation" => RawPayload::Deformation(f(v)?),
        "toric-downgrade-input" => RawPayload::ToricDowngrade(f(v)?),
        "downgrade-input" => RawPayload::Downgrade(f(v)?),
        "cox-input" => RawPayload::Cox(f(v)?),
        "report" => RawPayload::Report(v),
        k => return Err(de::Error::custom(format!("unknown kind {k:?}"))),
    })
}

struct RawDocument {
    provenance: String,
    payload: RawPayload,
}

impl<'de> Deserialize<'de> for RawDocument {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RawDocument;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a document with schema_version, kind, provenance and payload")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<RawDocument, A::Error> {
                let mut kind: Option<String> = None;
                let mut provenance: Option<String> = None;
                let mut payload: Option<RawPayload> = None;
                let mut early: Option<Value> = None;
                let mut version = false;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "schema_version" => {
                            map.next_value::<IgnoredAny>()?;
                            version = true;
                        }
                        "kind" => kind = Some(map.next_value()?),
                        "provenance" => provenance = Some(map.next_value()?),
                        "payload" if payload.is_some() || early.is_some() => {
                            return Err(de::Error::duplicate_field("payload"))
                        }
                        "payload" => match &kind {
                            Some(k) => payload = Some(raw_from(k, &mut map)?),
                            None => early = Some(map.next_value()?),
                        },
                        other => {
                            return Err(de::Error::unknown_field(other, &["schema_version", "kind", "provenance", "payload"]))
                        }
                    }
                }
                let kind = kind.ok_or_else(|| de::Error::missing_field("kind"))?;
                if !version {
                    return Err(de::Error::missing_field("schema_version"));
                }
                let provenance = provenance.ok_or_else(|| de::Error::missing_field("provenance"))?;
                if provenance.trim().is_empty() {
                    return Err(de::Error::custom("provenance must not be empty"));
                }
                let payload = match (payload, early) {
                    (Some(p), _) => p,
                    (None, Some(v)) => raw_from_value(&kind, v).map_err(de::Error::custom)?,
                    (None, None) => return Err(de::Error::missing_field("payload")),
                };
                Ok(RawDocument { provenance, payload })
            }
        }
        d.deserialize_map(V)
    }
}

/// Parses a document from text.
pub fn parse_str(text: &str) -> Result<Document, CliError> {
    let v: Value = serde_json::from_str(text).map_err(CliError::from_json)?;
    match v.get("schema_version") {
        Some(Value::String(s)) if s == SCHEMA_VERSION => {}
        Some(Value::String(s)) => {
            return Err(CliError::VersionMismatch { found: s.clone(), expected: SCHEMA_VERSION.into() })
        }
        Some(other) => {
            return Err(CliError::VersionMismatch { found: other.to_string(), expected: SCHEMA_VERSION.into() })
        }
        None => {}
    }
    let raw: RawDocument = serde_json::from_str(text).map_err(CliError::from_json)?;
    let object = match raw.payload {
        RawPayload::PDivisor(p) => Object::PDivisor(p.to_pdivisor()?),
        RawPayload::Fan(f) => Object::DivisorialFan(f.to_fan()?),
        RawPayload::InvPDivisor(d) => Object::InvariantPDivisor(d.to_divisor()?),
        RawPayload::InvDivisor(d) => Object::InvariantDivisor(d.to_divisor()?),
        RawPayload::Deformation(d) => Object::Deformation(d.to_input()?),
        RawPayload::ToricDowngrade(t) => {
            let generators: Vec<QVec> = t.generators.iter().map(|g| vec_q(g)).collect();
            if generators.iter().any(|g| g.len() != t.dim) || t.sub.len() != t.dim {
                return Err(CliError::object(format!("generators and sub must live in dimension {}", t.dim)));
            }
            Object::ToricDowngradeInput { generators, sub: rows_map(&t.sub, None)? }
        }
        RawPayload::Downgrade(d) => {
            let divisor = d.divisor.to_pdivisor()?;
            let pr = rows_map(&d.pr, Some(divisor.rank()))?;
            if pr.source != divisor.rank() {
                return Err(CliError::object("pr must be defined on the lattice of the divisor".into()));
            }
            Object::DowngradeInput { divisor, pr, marks: d.marks }
        }
        RawPayload::Cox(c) => Object::CoxInput {
            fan: c.fan.to_fan()?,
            primes: c.primes,
            hypotheses: CoxHypotheses {
                complete: c.hypotheses.complete,
                q_factorial: c.hypotheses.q_factorial,
                cl_torsion_free: c.hypotheses.cl_torsion_free,
            },
            pivot_order: c.pivot_order,
        },
        RawPayload::Report(v) => Object::Report(v),
    };
    Ok(Document { provenance: raw.provenance, object })
}

pub fn parse_file(path: &Path) -> Result<Document, CliError> {
    parse_str(&std::fs::read_to_string(path)?)
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| CliError::Usage(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    Ok(result?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Command {
    Eval,
    Proper,
    Sections,
    Bpf,
    Upgrade,
    Correct,
    Downgrade,
    ToricDowngrade,
    Cox,
    DeformUpgrade,
    Refine,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Proper => "proper",
            Command::Sections => "sections",
            Command::Bpf => "bpf",
            Command::Upgrade => "upgrade",
            Command::Correct => "correct",
            Command::Downgrade => "downgrade",
            Command::ToricDowngrade => "toric-downgrade",
            Command::Cox => "cox",
            Command::DeformUpgrade => "deform-upgrade",
            Command::Refine => "refine",
        }
    }
}

pub const DEFAULT_K_BOUND: u32 = 12;
pub const DEFAULT_WINDOW: i64 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub k_bound: u32,
    pub window: i64,
    pub weight: Option<QVec>,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { k_bound: DEFAULT_K_BOUND, window: DEFAULT_WINDOW, weight: None }
    }
}

/// Parses `6`, `1,-2` or `1/2,3`.
pub fn parse_weight(s: &str) -> Result<QVec, CliError> {
    s.split(',')
        .map(|t| parse_q(t).ok_or_else(|| CliError::Usage(format!("malformed weight entry {:?}", t.trim()))))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Computed,
    HypothesisViolation,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Computed => 0,
            Status::HypothesisViolation => 2,
            Status::Inconclusive => 3,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Computed => "computed",
            Status::HypothesisViolation => "hypothesis-violation",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// A finished run: the exit code and the report document.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub report: Document,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

struct Finding {
    status: Status,
    summary: String,
    result: Value,
}

impl Finding {
    fn ok(summary: impl Into<String>, result: Value) -> Self {
        Finding { status: Status::Computed, summary: summary.into(), result }
    }

    fn verdict(good: bool, yes: &str, no: &str, result: Value) -> Self {
        let status = if good { Status::Computed } else { Status::HypothesisViolation };
        Finding { status, summary: (if good { yes } else { no }).into(), result }
    }
}

fn wrong_kind(cmd: Command, doc: &Document, expected: &str) -> CliError {
    CliError::Usage(format!("`{}` expects {expected}, got a {} document", cmd.name(), doc.object.kind()))
}

fn need_weight(cmd: Command, flags: &Flags, rank: usize) -> Result<QVec, CliError> {
    let w = flags.weight.clone().ok_or_else(|| CliError::Usage(format!("`{}` needs --weight", cmd.name())))?;
    if w.len() != rank {
        return Err(CliError::Usage(format!("weight has {} entries but the rank is {rank}", w.len())));
    }
    Ok(w)
}

fn qvec_json(v: &[Q]) -> Value {
    serde_json::to_value(vec_j(v)).expect("vectors serialize")
}

fn to_json<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("payloads serialize")
}

fn pdivisor_json(d: &PolyhedralDivisor) -> Value {
    to_json(&PDivisorJ::from_pdivisor(d))
}

/// Runs `cmd` on `input` and builds the report.
pub fn run(cmd: Command, flags: &Flags, input: &Document) -> Result<Outcome, CliError> {
    let finding = match cmd {
        Command::Eval => eval(cmd, flags, input)?,
        Command::Proper => match &input.object {
            Object::PDivisor(d) => {
                let r = d.is_proper()?;
                Finding::verdict(r.is_proper(), "proper", "not proper", json!({ "report": to_json(&ProperJ::from_report(&r)) }))
            }
            _ => return Err(wrong_kind(cmd, input, "a pdivisor")),
        },
        Command::Sections => sections(cmd, flags, input)?,
        Command::Bpf => match &input.object {
            Object::InvariantDivisor(d) => match d.is_basepoint_free(flags.window)? {
                Basepoints::Free(ws) => {
                    let ws: Vec<Value> = ws
                        .iter()
                        .map(|w| {
                            json!({"member": w.member, "point": w.point, "weight": qvec_json(&w.u), "section": w.section.to_string()})
                        })
                        .collect();
                    Finding::ok("basepoint free", json!({ "basepoint_free": true, "witnesses": ws }))
                }
                Basepoints::NotFree { member, point } => Finding {
                    status: Status::HypothesisViolation,
                    summary: format!("no witness for member {member} over {point} within the window"),
                    result: json!({ "basepoint_free": false, "member": member, "point": point }),
                },
            },
            _ => return Err(wrong_kind(cmd, input, "an invariant-divisor")),
        },
        Command::Upgrade => match &input.object {
            Object::InvariantPDivisor(d) => {
                let up = upgrade(d)?;
                let result = json!({
                    "divisor": pdivisor_json(&up.divisor),
                    "report": to_json(&ProperJ::from_report(&up.report)),
                    "contraction_free": up.contraction_free,
                    "smooth_base": up.smooth_base,
                });
                Finding::verdict(up.report.is_proper(), "proper", "not proper", result)
            }
            _ => return Err(wrong_kind(cmd, input, "an invariant-pdivisor")),
        },
        Command::Correct => {
            let d = match &input.object {
                Object::PDivisor(d) => d.clone(),
                Object::InvariantPDivisor(d) => upgrade(d)?.divisor,
                _ => return Err(wrong_kind(cmd, input, "a pdivisor or an invariant-pdivisor")),
            };
            let (out, r) = correct_pic_z(&d)?;
            let result = json!({ "divisor": pdivisor_json(&out), "report": to_json(&ProperJ::from_report(&r)) });
            Finding::verdict(r.is_proper(), "proper", "not proper", result)
        }
        Command::Downgrade => match &input.object {
            Object::DowngradeInput { divisor, pr, marks } => {
                let ctx = DowngradeContext::new(pr.clone())?;
                let out = match marks {
                    Some(m) => downgrade_with_marks(divisor, &ctx, m)?,
                    None => downgrade(divisor, &ctx)?,
                };
                let result = json!({
                    "divisor": to_json(&InvPDivisorJ::from_divisor(&out.divisor)),
                    "weights": out.weights.iter().map(|w| qvec_json(w)).collect::<Vec<_>>(),
                    "marks": out.marks,
                    "report": to_json(&ProperJ::from_report(&out.report)),
                });
                Finding::verdict(out.report.is_proper(), "downgraded", "downgraded; the upgrade of the result is not proper", result)
            }
            _ => return Err(wrong_kind(cmd, input, "a downgrade-input")),
        },
        Command::ToricDowngrade => match &input.object {
            Object::ToricDowngradeInput { generators, sub } => {
                let out = toric_downgrade(generators, sub)?;
                Finding::ok(
                    "downgraded",
                    json!({
                        "base": to_json(&BaseJ::from_toric(&out.base)),
                        "divisor": pdivisor_json(&out.divisor),
                        "projection": map_rows(&out.projection),
                        "retraction": map_rows(&out.retraction),
                    }),
                )
            }
            _ => return Err(wrong_kind(cmd, input, "a toric-downgrade-input")),
        },
        Command::Cox => match &input.object {
            Object::CoxInput { fan, primes, hypotheses, pivot_order } => {
                let opts = match pivot_order {
                    Some(p) => SplitOptions { pivot_order: Some(p.clone()), canonical: false },
                    None => SplitOptions::canonical(),
                };
                let cd = cox_sequence(fan, primes, *hypotheses, &opts)?;
                let (d, r) = cox_correct(&cd)?;
                let held = hypotheses.complete && hypotheses.q_factorial && hypotheses.cl_torsion_free;
                let result = json!({
                    "divisor": pdivisor_json(&d),
                    "report": to_json(&ProperJ::from_report(&r)),
                    "class_rank": cd.class_rank(),
                    "hypotheses_hold": held,
                });
                let no = if held { "not proper" } else { "hypotheses on X are not all asserted" };
                Finding::verdict(held && r.is_proper(), "proper", no, result)
            }
            _ => return Err(wrong_kind(cmd, input, "a cox-input")),
        },
        Command::DeformUpgrade => match &input.object {
            Object::Deformation(din) => deform(din)?,
            _ => return Err(wrong_kind(cmd, input, "a deformation")),
        },
        Command::Refine => match &input.object {
            Object::InvariantDivisor(d) => {
                let psi = d.psi();
                let s = psi.sharpness(flags.k_bound, flags.window)?;
                let status = match s {
                    Sharpness::Sharp | Sharpness::AsymptoticallySharp => Status::Computed,
                    Sharpness::Fails => Status::HypothesisViolation,
                    Sharpness::Inconclusive => Status::Inconclusive,
                };
                Finding { status, summary: s.to_string(), result: json!({ "sharpness": s.to_string(), "psi": psi.to_string() }) }
            }
            _ => return Err(wrong_kind(cmd, input, "an invariant-divisor")),
        },
    };
    let mut flag_record = json!({ "k_bound": flags.k_bound, "window": flags.window });
    if let Some(w) = &flags.weight {
        flag_record["weight"] = qvec_json(w);
    }
    let report = json!({
        "command": cmd.name(),
        "flags": flag_record,
        "status": finding.status.name(),
        "exit_code": finding.status.exit_code(),
        "summary": finding.summary,
        "result": finding.result,
    });
    let provenance = format!("computed by `pdiv {}` from: {}", cmd.name(), input.provenance);
    Ok(Outcome { status: finding.status, report: Document::new(provenance, Object::Report(report)) })
}

fn eval(cmd: Command, flags: &Flags, input: &Document) -> Result<Finding, CliError> {
    match &input.object {
        Object::PDivisor(d) => {
            let u = need_weight(cmd, flags, d.rank())?;
            let e = d.evaluate(&u)?;
            let mut full = qdivisor_j(&e);
            for (l, _) in d.coeffs() {
                full.entry(l.clone()).or_insert(CoefJ(Coef::zero()));
            }
            Ok(Finding::ok(e.to_string(), json!({ "divisor": to_json(&full) })))
        }
        Object::InvariantPDivisor(d) => {
            let u = need_weight(cmd, flags, d.rank())?;
            let e = d.evaluate(&u)?;
            Ok(Finding::ok("evaluated", json!({ "divisor": to_json(&InvDivisorJ::from_divisor(&e)) })))
        }
        _ => Err(wrong_kind(cmd, input, "a pdivisor or an invariant-pdivisor")),
    }
}

fn sections(cmd: Command, flags: &Flags, input: &Document) -> Result<Finding, CliError> {
    let s = match &input.object {
        Object::PDivisor(d) => {
            let u = need_weight(cmd, flags, d.rank())?;
            d.base().global_sections(&d.evaluate(&u)?, flags.window)?
        }
        Object::InvariantDivisor(d) => {
            let u = need_weight(cmd, flags, d.fan().rank())?;
            match d.graded_sections(&u, flags.window) {
                Err(pdiv::Error::WeightOutsideBox) => {
                    return Ok(Finding::ok(
                        "0 sections; the weight lies outside the box",
                        json!({ "dimension": 0, "basis": [], "truncated": false, "in_box": false }),
                    ))
                }
                s => s?,
            }
        }
        _ => return Err(wrong_kind(cmd, input, "a pdivisor or an invariant-divisor")),
    };
    let result = json!({
        "dimension": s.dim,
        "basis": s.basis.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "truncated": s.truncated,
    });
    if s.truncated {
        Ok(Finding {
            status: Status::Inconclusive,
            summary: format!("at least {} sections; the space exceeds the window", s.dim),
            result,
        })
    } else {
        Ok(Finding::ok(format!("{} sections", s.dim), result))
    }
}

fn deform(din: &DeformationInput) -> Result<Finding, CliError> {
    let adm = check_admissible(din);
    let witness = match &adm {
        Admissibility::Admissible => None,
        Admissibility::NotLattice(i) => Some(json!({ "not_lattice": i })),
        Admissibility::LatticeFreeFaces { weight, summands } => {
            Some(json!({ "weight": qvec_json(weight), "lattice_free_summands": summands }))
        }
    };
    if let Some(w) = witness {
        return Ok(Finding {
            status: Status::HypothesisViolation,
            summary: "decomposition is not admissible".into(),
            result: json!({ "admissible": false, "witness": w }),
        });
    }
    let up = deformation_upgrade(din)?;
    let result = json!({
        "admissible": true,
        "divisor": pdivisor_json(&up.divisor),
        "report": to_json(&ProperJ::from_report(&up.report)),
        "base_primes": up.family.labels,
    });
    Ok(Finding::ok(format!("total space over a base with {} parameter(s)", din.parameters()), result))
}

/// Plain-text rendering of a report: one `path: value` line per leaf.
pub fn render_text(doc: &Document) -> String {
    let mut out = String::new();
    out.push_str(&format!("provenance: {}\n", doc.provenance));
    let v = doc.object.payload();
    flatten("", &v, &mut out);
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object()) => {
            let parts: Vec<String> = xs.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        x => out.push_str(&format!("{prefix}: {}\n", scalar(x))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("({})", xs.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        x => x.to_string(),
    }
}

