use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

use rzeta::validate::validate_report;

fn write_instance(body: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

fn rzeta(args: &[&str], body: &str) -> (Output, NamedTempFile) {
    let file = write_instance(body);
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rzeta"));
    cmd.args(args).arg(file.path()).env_remove("TZ_MAX_DIM");
    (cmd.output().unwrap(), file)
}

fn stdout(args: &[&str], body: &str) -> String {
    let (out, _f) = rzeta(args, body);
    assert!(out.status.success(), "{args:?} {body}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str], body: &str) -> Value {
    serde_json::from_str(&stdout(args, body)).unwrap()
}

fn strs(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

const PADIC_A4: &str = r#"{"kind":"padic","p":3,"matrix":[["4"]]}"#;
const PAIR_23: &str = r#"{"kind":"abelian_pair","A":[["2"]],"B":[["3"]]}"#;
const HEISENBERG_2I: &str = r#"{"kind":"nilpotent","layers":[{"A":[["2","0"],["0","2"]]},{"A":[["4"]]}]}"#;
const TORSION_T: &str = r#"{"kind":"torsion","components":[{"p":2,"S":[[0,1]]}]}"#;
const TWO_PLACE: &str = r#"{"kind":"torsion","components":[{"p":2,"S":[[0,1],[1,1]]}]}"#;
const PADIC_2I: &str = r#"{"kind":"padic","p":2,"matrix":[["2","0"],["0","2"]]}"#;
const PADIC_A3: &str = r#"{"kind":"padic","p":3,"matrix":[["3"]]}"#;
const XI_2_S3: &str = r#"{"kind":"rational_xi","components":[{"xi":"2","S":[3]}]}"#;
const NOT_TAME: &str = r#"{"kind":"abelian_pair","A":[["2"]],"B":[["-2"]]}"#;

#[test]
fn rnum_rows_csv() {
    assert_eq!(stdout(&["rnum", "--max-n", "3", "--format", "csv"], PADIC_A4), "n,R_n\n1,3\n2,3\n3,9\n");
    assert_eq!(stdout(&["rnum", "--max-n", "3", "--format", "csv"], PAIR_23), "n,R_n\n1,1\n2,5\n3,19\n");
    let heis = stdout(&["rnum", "--max-n", "1", "--format", "csv"], HEISENBERG_2I);
    assert_eq!(heis, "n,R_n\n1,3\n");
}

#[test]
fn rnum_writes_inf() {
    let csv = stdout(&["rnum", "--max-n", "4", "--format", "csv"], NOT_TAME);
    assert_eq!(csv, "n,R_n\n1,4\n2,inf\n3,16\n4,inf\n");
    let body = json(&["rnum", "--max-n", "2"], NOT_TAME);
    assert_eq!(body["sequence"][1]["R_n"], "inf");
    assert_eq!(body["sequence"][1]["n"], "2");
}

#[test]
fn zeta_closed_forms() {
    for (body, num, den) in [
        (PAIR_23, vec!["1", "-2"], vec!["1", "-3"]),
        (TORSION_T, vec!["1"], vec!["1", "-2"]),
        (PADIC_2I, vec!["1"], vec!["1", "-1"]),
    ] {
        let v = json(&["zeta"], body);
        assert_eq!(strs(&v["zeta"]["num"]), num, "{body}");
        assert_eq!(strs(&v["zeta"]["den"]), den, "{body}");
        assert_eq!(v["reconstruction"]["outcome"], "rational");
        assert_eq!(v["terms"], "32");
    }
}

#[test]
fn classify_examples() {
    let v = json(&["classify"], TWO_PLACE);
    assert_eq!(v["verdict"], "natural_boundary");
    assert_eq!(v["certificate"]["type"], "torsion_witness");
    assert_eq!(strs(&v["certificate"]["place"]["coeffs"]), ["1", "1"]);

    let v = json(&["classify"], PADIC_A3);
    assert_eq!(v["verdict"], "rational");
    assert_eq!(strs(&v["zeta"]["num"]), ["1"]);
    assert_eq!(strs(&v["zeta"]["den"]), ["1", "-1"]);

    let v = json(&["classify"], XI_2_S3);
    assert_eq!(v["verdict"], "natural_boundary");
    assert_eq!(v["certificate"]["prime"], "3");
}

#[test]
fn key_order_is_fixed() {
    let v = json(&["classify"], PAIR_23);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["kind", "verdict", "provenance", "rule", "zeta", "proof_window", "evidence", "notes"]
    );
}

#[test]
fn reports_round_trip() {
    let cases = [PADIC_A4, PAIR_23, HEISENBERG_2I, TORSION_T, TWO_PLACE, PADIC_2I, PADIC_A3, XI_2_S3];
    for body in cases {
        for cmd in ["rnum", "zeta", "classify"] {
            let text = stdout(&[cmd], body);
            validate_report(&text).unwrap_or_else(|e| panic!("{cmd} {body}: {e}"));
            let (out, _f) = rzeta(&["check"], &text);
            assert!(out.status.success(), "{cmd} {body}: {}", String::from_utf8_lossy(&out.stderr));
        }
    }
}

#[test]
fn tampered_reports_are_rejected() {
    let text = stdout(&["classify"], PAIR_23);
    let forged = text.replacen("\"-3\"", "\"-4\"", 1);
    assert_ne!(forged, text);
    let (out, _f) = rzeta(&["check"], &forged);
    assert_eq!(out.status.code(), Some(3));

    let text = stdout(&["classify"], TWO_PLACE);
    let forged = text.replacen("\"1/4\"", "\"1/8\"", 1);
    let (out, _f) = rzeta(&["check"], &forged);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    for body in [PADIC_A4, TWO_PLACE, HEISENBERG_2I] {
        for cmd in ["rnum", "zeta", "classify"] {
            assert_eq!(stdout(&[cmd], body), stdout(&[cmd], body));
        }
    }
}

#[test]
fn exit_codes() {
    let (out, _f) = rzeta(&["classify"], NOT_TAME);
    assert_eq!(out.status.code(), Some(4));
    let body: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body["verdict"], "not_tame");
    assert_eq!(body["n"], "2");
    let (out, _f) = rzeta(&["zeta"], NOT_TAME);
    assert_eq!(out.status.code(), Some(4));

    for broken in [r#"{"kind":"padic""#, r#"{"kind":"cubic"}"#, r#"{"kind":"padic","p":3,"matrix":[["x"]]}"#] {
        let (out, _f) = rzeta(&["rnum"], broken);
        assert_eq!(out.status.code(), Some(2), "{broken}");
    }
    for invalid in [
        r#"{"kind":"padic","p":4,"matrix":[["4"]]}"#,
        r#"{"kind":"padic","p":3,"matrix":[["1/3"]]}"#,
        r#"{"kind":"abelian_pair","A":[["1","2"]],"B":[["1"]]}"#,
        r#"{"kind":"torsion","components":[{"p":2,"S":[[1,1,1,1]]}]}"#,
        r#"{"kind":"rational_xi","components":[{"xi":"-1","S":[]}]}"#,
    ] {
        let (out, _f) = rzeta(&["rnum"], invalid);
        assert_eq!(out.status.code(), Some(3), "{invalid}");
    }
}

#[test]
fn dimension_cap() {
    let file = write_instance(PADIC_2I);
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_rzeta"))
            .args(["rnum", "--max-n", "2"])
            .arg(file.path())
            .env("TZ_MAX_DIM", cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").status.code(), Some(3));
    assert!(run("2").status.success());
    assert_eq!(run("two").status.code(), Some(2));
}

#[test]
fn flags_override_file_options() {
    let body = r#"{"kind":"abelian_pair","A":[["2"]],"B":[["3"]],"options":{"max_n":2}}"#;
    assert_eq!(stdout(&["rnum", "--format", "csv"], body), "n,R_n\n1,1\n2,5\n");
    assert_eq!(stdout(&["rnum", "--format", "csv", "--max-n", "1"], body), "n,R_n\n1,1\n");
    let v = json(&["zeta", "--window", "12"], PAIR_23);
    assert_eq!(v["terms"], "12");
    assert_eq!(v["series"].as_array().unwrap().len(), 12);
}

#[test]
fn samples_flag_sets_certificate_width() {
    let v = json(&["classify", "--samples", "3"], PADIC_A4);
    let checks = v["certificate"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    for c in checks {
        assert_eq!(c["k"].as_array().unwrap().len(), 3);
        assert_eq!(c["value"], "9");
    }
    assert_eq!(strs(&v["evidence"]["sequence"])[..3], ["3", "3", "9"]);
}
