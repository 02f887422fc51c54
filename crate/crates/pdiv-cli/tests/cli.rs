use std::path::{Path, PathBuf};
use std::process::Command as Proc;

use pdiv::base::{Base, QDivisor, ToricBase};
use pdiv::deform::{check_admissible, deformation_upgrade};
use pdiv::pdivisor::PolyhedralDivisor;
use pdiv::polyhedra::{Cone, Polyhedron};
use pdiv::rat::{q, qv};
use pdiv_cli::{emit, parse_file, parse_str, run, CliError, Command, Flags, Object};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn fixtures() -> Vec<PathBuf> {
    let mut out = Vec::new();
    for dir in [fixture(""), fixture("golden")] {
        for e in std::fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "json") {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

/// Compares with a stored file; `PDIV_BLESS=1` rewrites it instead.
fn check_golden(path: &Path, bytes: &[u8]) {
    if std::env::var_os("PDIV_BLESS").is_some() {
        std::fs::write(path, bytes).unwrap();
        return;
    }
    let stored = std::fs::read(path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert!(stored == bytes, "{} differs:\n{}", path.display(), String::from_utf8_lossy(bytes));
}

fn pdiv(args: &[&str]) -> (i32, String, String) {
    let out = Proc::new(env!("CARGO_BIN_EXE_pdiv")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn report(stdout: &str) -> Value {
    let doc = parse_str(stdout).unwrap();
    doc.report().unwrap().clone()
}

#[test]
fn fixtures_are_canonical() {
    for p in fixtures() {
        let doc = parse_file(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        check_golden(&p, &emit(&doc));
    }
}

#[test]
fn emit_then_parse_is_stable() {
    for p in fixtures() {
        let once = emit(&parse_file(&p).unwrap());
        let twice = emit(&parse_str(std::str::from_utf8(&once).unwrap()).unwrap());
        assert_eq!(once, twice, "{}", p.display());
    }
}

#[test]
fn every_fixture_has_a_provenance() {
    for p in fixtures() {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        let prov = v["provenance"].as_str().unwrap();
        assert!(prov.len() > 20, "{}", p.display());
    }
}

#[test]
fn zero_denominator_is_a_schema_error() {
    let text = std::fs::read_to_string(fixture("c3_like.json")).unwrap().replace("\"1/3\"", "\"1/0\"");
    let line = text.lines().position(|l| l.contains("1/0")).unwrap() + 1;
    match parse_str(&text) {
        Err(CliError::Schema { line: l, column, message }) => {
            assert_eq!(l, line);
            assert!(column > 0);
            assert!(message.contains("1/0"), "{message}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_fields_and_versions_are_rejected() {
    let text = std::fs::read_to_string(fixture("a1_deformation.json")).unwrap();
    let bumped = text.replace("\"schema_version\": \"1\"", "\"schema_version\": \"2\"");
    assert!(matches!(parse_str(&bumped), Err(CliError::VersionMismatch { .. })));
    let extra = text.replace("\"k\": 2", "\"k\": 2,\n    \"kk\": 3");
    assert!(matches!(parse_str(&extra), Err(CliError::Schema { .. })));
    let bad_kind = text.replace("\"deformation\"", "\"deformations\"");
    assert!(matches!(parse_str(&bad_kind), Err(CliError::Schema { .. })));
}

#[test]
fn payload_before_kind_still_parses() {
    let text = std::fs::read_to_string(fixture("a1_deformation.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let reordered = format!(
        "{{\"payload\": {}, \"provenance\": {}, \"kind\": \"deformation\", \"schema_version\": \"1\"}}",
        v["payload"], v["provenance"]
    );
    assert_eq!(emit(&parse_str(&reordered).unwrap()), text.as_bytes());
}

#[test]
fn downgrade_example_parses_to_the_documented_divisor() {
    let doc = parse_file(&fixture("downgrade_with_difficulties.json")).unwrap();
    let Object::PDivisor(d) = doc.object else { panic!("wrong kind") };
    let a2 = ToricBase::new(2, vec![("Dx".into(), qv(&[1, 0])), ("Dy".into(), qv(&[0, 1]))], vec![vec![0, 1]])
        .unwrap()
        .with_semiprojective(true);
    let seg = |a: &[i64], b: &[i64]| Polyhedron::hull(2, &[qv(a), qv(b)], &[]);
    let expected = PolyhedralDivisor::new(
        Base::Toric(a2),
        Cone::zero(2),
        vec![("Dx", seg(&[0, 0], &[0, 1])), ("Dy", seg(&[0, 0], &[1, 1]))],
    )
    .unwrap();
    assert_eq!(d, expected);
    assert!(d.is_proper().unwrap().is_proper());
}

#[test]
fn eval_at_six_matches_the_evaluation() {
    let path = fixture("c3_like.json");
    let (code, out, _) = pdiv(&["eval", path.to_str().unwrap(), "--weight", "6"]);
    assert_eq!(code, 0);
    let r = report(&out);
    let Object::PDivisor(d) = parse_file(&path).unwrap().object else { panic!() };
    let oracle = d.evaluate(&[q(6)]).unwrap();
    assert_eq!(oracle, QDivisor::from_finite(&[("D1", q(3)), ("D2", q(2))]));
    let got = &r["result"]["divisor"];
    assert_eq!(got["D1"], "3");
    assert_eq!(got["D2"], "2");
    assert_eq!(got["E"], "0");
    check_golden(&fixture("golden/c3_like_eval_6.json"), out.as_bytes());
}

#[test]
fn upgrade_of_the_non_contraction_free_plane_is_not_proper() {
    let path = fixture("p2_non_contraction_free.json");
    let (code, out, _) = pdiv(&["upgrade", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let r = report(&out);
    assert_eq!(r["summary"], "not proper");
    assert_eq!(r["result"]["report"]["semiample"], false);
    check_golden(&fixture("golden/p2_non_contraction_free_upgrade.json"), out.as_bytes());

    let good = fixture("p2_contraction_free.json");
    let (code, up, _) = pdiv(&["upgrade", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (code, fixed, _) = pdiv(&["correct", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report(&up)["result"]["divisor"], report(&fixed)["result"]["divisor"]);
}

#[test]
fn deform_upgrade_of_a1_matches_the_golden_report() {
    let path = fixture("a1_deformation.json");
    let (code, out, err) = pdiv(&["deform-upgrade", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    check_golden(&fixture("golden/a1_deform_upgrade.json"), out.as_bytes());
    let Object::Deformation(din) = parse_file(&path).unwrap().object else { panic!() };
    assert!(check_admissible(&din).is_admissible());
    let up = deformation_upgrade(&din).unwrap();
    assert_eq!(report(&out)["result"]["divisor"], serde_json::to_value(pdiv_cli::format::PDivisorJ::from_pdivisor(&up.divisor)).unwrap());
}

#[test]
fn toric_downgrade_golden() {
    let path = fixture("downgrade_with_difficulties_toric.json");
    let (code, out, _) = pdiv(&["toric-downgrade", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = report(&out);
    let coeffs = &r["result"]["divisor"]["coefficients"];
    assert_eq!(coeffs["D4"], serde_json::json!({"vertices": [["1"]]}));
    assert_eq!(coeffs["D5"], serde_json::json!({"vertices": [["0"], ["1"]]}));
    check_golden(&fixture("golden/downgrade_with_difficulties_toric.json"), out.as_bytes());
}

#[test]
fn exit_codes() {
    let hyp = fixture("p2_hyperplane.json");
    let neg = fixture("p2_negative_hyperplane.json");
    let c3 = fixture("c3_like.json");
    assert_eq!(pdiv(&["bpf", hyp.to_str().unwrap(), "--window", "4"]).0, 0);
    assert_eq!(pdiv(&["bpf", neg.to_str().unwrap(), "--window", "4"]).0, 2);
    assert_eq!(pdiv(&["refine", hyp.to_str().unwrap(), "--window", "4"]).0, 0);
    assert_eq!(pdiv(&["sections", hyp.to_str().unwrap(), "--weight", "0"]).0, 0);
    assert_eq!(pdiv(&["downgrade", fixture("ruled_downgrade.json").to_str().unwrap()]).0, 0);
    assert_eq!(pdiv(&["cox", fixture("quadric_cox.json").to_str().unwrap()]).0, 0);
    // ill-formed inputs and misuse
    assert_eq!(pdiv(&["eval", c3.to_str().unwrap()]).0, 1);
    assert_eq!(pdiv(&["eval", c3.to_str().unwrap(), "--weight", "1,2"]).0, 1);
    assert_eq!(pdiv(&["upgrade", c3.to_str().unwrap()]).0, 1);
    assert_eq!(pdiv(&["eval", "/nonexistent.json"]).0, 1);
    assert_eq!(pdiv(&["frobnicate", c3.to_str().unwrap()]).0, 1);
}

#[test]
fn sections_of_the_hyperplane_class() {
    let hyp = fixture("p2_hyperplane.json");
    let total: u64 = (-1..=1)
        .map(|u| {
            let (code, out, _) = pdiv(&["sections", hyp.to_str().unwrap(), "--weight", &u.to_string()]);
            assert_eq!(code, 0);
            report(&out)["result"]["dimension"].as_u64().unwrap()
        })
        .sum();
    assert_eq!(total, 3);
}

#[test]
fn reports_are_deterministic_and_written_atomically() {
    let dir = std::env::temp_dir().join(format!("pdiv-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let a1 = fixture("a1_deformation.json");
    let (code, stdout, _) = pdiv(&["deform-upgrade", a1.to_str().unwrap()]);
    assert_eq!(code, 0);
    for _ in 0..2 {
        assert_eq!(pdiv(&["deform-upgrade", a1.to_str().unwrap(), "-o", out.to_str().unwrap()]).0, 0);
        assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout);
    }
    let leftovers: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(leftovers.len(), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_format_lists_the_result() {
    let c3 = fixture("c3_like.json");
    let (code, out, _) = pdiv(&["eval", c3.to_str().unwrap(), "--weight", "-6", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("result.divisor.E: -1"), "{out}");
    assert!(out.contains("flags.k_bound: 12"), "{out}");
}

#[test]
fn run_records_flag_defaults() {
    let doc = parse_file(&fixture("p2_hyperplane.json")).unwrap();
    let o = run(Command::Refine, &Flags::default(), &doc).unwrap();
    let r = o.report.report().unwrap();
    assert_eq!(r["flags"]["k_bound"], 12);
    assert_eq!(r["flags"]["window"], 6);
    assert!(o.report.provenance.starts_with("computed by `pdiv refine` from: "));
}
