use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use equiwitt::wittgroup::TheoremReport;
use tempfile::TempDir;

const C2: &str = r#"{"degree": 2, "gens": [[1, 0]]}"#;
const S3: &str = r#"{"degree": 3, "gens": [[1, 0, 2], [1, 2, 0]]}"#;
const Q8: &str = r#"{"degree": 8, "gens": [[1, 4, 3, 6, 5, 0, 7, 2], [2, 7, 4, 1, 6, 3, 0, 5]]}"#;
const S8: &str = r#"{"degree": 8, "gens": [[1, 2, 3, 4, 5, 6, 7, 0], [1, 0, 2, 3, 4, 5, 6, 7]]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equiwitt"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn simples_of_s3() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "s3.json", S3);
    let out = run(&["simples", "--group", p(&g), "--e", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("trivial"));
    assert!(text.contains("orthogonal"));
    assert!(text.contains("s = 2"));
}

#[test]
fn modulus_selects_the_field() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "s3.json", S3);
    assert!(
        run(&["simples", "--group", p(&g), "--e", "2", "--modulus", "7"])
            .status
            .success()
    );
    assert_eq!(
        run(&["simples", "--group", p(&g), "--e", "2", "--modulus", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn malformed_group_exits_2() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.json", r#"{"degree": 3, "gens": [[0, 0, 1]]}"#);
    assert_eq!(
        run(&["simples", "--group", p(&g), "--e", "1"])
            .status
            .code(),
        Some(2)
    );
    let g = write(&dir, "junk.json", "not json");
    assert_eq!(
        run(&["witt", "--group", p(&g), "--e", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn oversized_group_exits_3() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "s8.json", S8);
    assert_eq!(
        run(&["simples", "--group", p(&g), "--e", "1"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn witt_report_for_c2() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "c2.json", C2);
    let js = dir.path().join("out.json");
    let out = run(&[
        "witt",
        "--group",
        p(&g),
        "--e",
        "1",
        "--samples",
        "5",
        "--json",
        p(&js),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("rank 2 = s(1) + t(1), PASS"));
    let report: TheoremReport = serde_json::from_str(&fs::read_to_string(&js).unwrap()).unwrap();
    assert_eq!(report.rank, 2);
    assert_eq!(report.generators, vec!["N", "Rtau:1:+"]);
    assert!(report.passed());
}

#[test]
fn witt_rank_of_q8() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "q8.json", Q8);
    let out = run(&[
        "witt",
        "--group",
        p(&g),
        "--e",
        "1",
        "--samples",
        "3",
        "--seed",
        "99",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("rank 3 = s(1) + t(2), PASS"));
}

fn form_json(rep_mats: &str, upper: &str) -> String {
    format!(
        r#"{{"group": {C2}, "field": {{"e": 1}}, "rep_mats": {rep_mats}, "upper": {upper}, "label": "test"}}"#
    )
}

#[test]
fn class_of_r_minus() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "rminus.json",
        &form_json("[[[1, 1], [0, 1]]]", "[[1, 1], [0, 1]]"),
    );
    let js = dir.path().join("class.json");
    let out = run(&["class", "--form", p(&f), "--json", p(&js)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("c0 = [], a = 1, d = [1]"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&js).unwrap()).unwrap();
    assert_eq!(v["coords"]["a"], 1);
    assert_eq!(v["representative"]["upper"].as_array().unwrap().len(), 2);
}

#[test]
fn class_of_metabolic_form() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "h.json",
        &form_json("[[[1, 0], [0, 1]]]", "[[0, 1], [0, 0]]"),
    );
    let out = run(&["class", "--form", p(&f), "--trace"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("c0 = [], a = 0, d = [0]"));
    assert!(text.contains("dim 0 after 1 reduction steps"));
    assert!(text.contains("\"steps\""));
}

#[test]
fn invalid_forms_exit_5() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "noninv.json",
        &form_json("[[[1, 1], [0, 1]]]", "[[1, 1], [0, 0]]"),
    );
    let out = run(&["class", "--form", p(&f)]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("witness"));
    let f = write(
        &dir,
        "degen.json",
        &form_json("[[[1, 0], [0, 1]]]", "[[1, 0], [0, 1]]"),
    );
    assert_eq!(run(&["class", "--form", p(&f)]).status.code(), Some(5));
}
