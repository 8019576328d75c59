use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ztk_core::testkit::load_negative_dir;

const CORPUS: &[&str] =
    &["prelude", "pathover", "trunc", "int", "torsor", "circle_rec", "circle_ind"];

fn ztk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ztk"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("run ztk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn with_corpus<'a>(head: &[&'a str]) -> Vec<&'a str> {
    head.iter().copied().chain(CORPUS.iter().copied()).collect()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ztk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn check_prints_per_definition_lines_and_a_summary() {
    let o = ztk(&["check", "prelude", "pathover", "--trunc-mode", "jne"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "OK   concat"), "{out}");
    assert_eq!(out.lines().last(), Some("89 definitions OK"));
}

#[test]
fn global_flags_go_before_or_after_the_command() {
    let a = ztk(&["--trunc-mode", "jde", "check", "prelude"]);
    let b = ztk(&["check", "prelude", "--trunc-mode", "jde"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = with_corpus(&["check"]);
    let a = ztk(&args);
    let b = ztk(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn successful_json_check_prints_nothing() {
    let o = ztk(&["check", "--json", "prelude"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
}

#[test]
fn parse_error_is_exit_two_with_a_json_diagnostic() {
    let f = scratch("bad.ht", "def f : Nat :=\n");
    let o = ztk(&["check", "--json", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let line = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["code"], "parse/unexpected-eof");
    assert_eq!(v["line"], 2);
    assert_eq!(v["col"], 1);
    for k in ["file", "line", "col", "definition", "code", "severity", "message"] {
        assert!(v.get(k).is_some(), "missing {k}");
    }
}

#[test]
fn type_error_is_exit_one_and_names_the_definition() {
    let f = scratch("mismatch.ht", "def ok : Nat := zeroN\ndef bad : Nat := zZero\n");
    let o = ztk(&["check", f.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("OK   ok"));
    assert!(out.contains("FAIL bad"));
    assert!(out.contains("expected (normal form): Nat"), "{out}");
    assert!(out.ends_with("1 definitions OK, 1 failed\n"), "{out}");
}

#[test]
fn usage_errors_are_exit_three() {
    assert_eq!(code(&ztk(&[])), 3);
    assert_eq!(code(&ztk(&["check"])), 3);
    assert_eq!(code(&ztk(&["check", "--trunc-mode", "maybe", "prelude"])), 3);
    assert_eq!(code(&ztk(&["frobnicate"])), 3);
    assert_eq!(code(&ztk(&["check", "/nonexistent/file.ht"])), 3);
    assert_eq!(code(&ztk(&["audit", "no_such_name", "prelude"])), 3);
    assert_eq!(code(&ztk(&["normalize", "Nat", "prelude"])), 3);
    assert_eq!(code(&ztk(&["--help"])), 0);
}

#[test]
fn timeout_is_exit_four() {
    let o = ztk(&["check", "--timeout", "0", "prelude"]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("cli/timeout"));
}

#[test]
fn normalize_two_plus_two() {
    let o = ztk(&["normalize", "two_plus_two"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "zPos (succN (succN (succN zeroN)))\n");
    let o = ztk(&["normalize", "--json", "two_plus_two", "prelude", "pathover", "trunc", "int"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["normal_form"], "zPos (succN (succN (succN zeroN)))");
}

#[test]
fn audit_circle_recursion_json() {
    let o = ztk(&with_corpus(&["audit", "circle_recursion", "--json"]));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "{\"axioms\":[\"funext\",\"squash\",\"univalence\"]}\n");
}

#[test]
fn audit_text_lists_sorted_axioms() {
    let o = ztk(&["audit", "Z_sym_recursion", "prelude", "pathover", "trunc", "int"]);
    assert_eq!(stdout(&o), "funext\n");
    let o = ztk(&["audit", "succZ_isEquiv", "prelude", "pathover", "trunc", "int"]);
    assert_eq!(stdout(&o), "no axioms\n");
}

#[test]
fn report_over_the_full_corpus() {
    let o = ztk(&with_corpus(&["report", "manifest"]));
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("62/62 items checked, 0 flagged\n"), "{}", stdout(&o));
}

#[test]
fn report_json_schema() {
    let o = ztk(&["report", "--json", "manifest", "prelude", "pathover", "trunc", "int"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let items = v["items"].as_array().unwrap();
    assert_eq!(items.len(), 62);
    for k in ["name", "tier", "status", "axioms", "ms"] {
        assert!(items[0].get(k).is_some(), "missing {k}");
    }
    let row = |n: &str| items.iter().find(|i| i["name"] == n).unwrap().clone();
    assert_eq!(row("Z_sym_recursion")["status"], "checked");
    assert_eq!(row("circle_induction")["status"], "missing");
    // Rows for files that were not given are missing, not flagged.
    assert_eq!(code(&o), 0);
}

#[test]
fn bad_manifest_is_a_parse_error() {
    let m = scratch("bad_manifest.toml", "[[item]]\nname = \"x\"\n");
    let o = ztk(&["report", m.to_str().unwrap(), "prelude"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn jde_extras_need_jde() {
    let mut args = with_corpus(&["check", "--trunc-mode", "jde"]);
    args.push("jde_extras");
    let o = ztk(&args);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    args[2] = "jne";
    let o = ztk(&args);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL truncInd_beta"));
}

#[test]
fn circle_induction_before_pathovers_is_rejected() {
    let o = ztk(&["check", "--json", "prelude", "circle_ind"]);
    assert_eq!(code(&o), 2);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(v["code"], "parse/unbound-global");
    assert_eq!(v["file"], "circle_ind");
}

fn negative_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/negative")
}

#[test]
fn negative_corpus_exit_codes() {
    let cases = load_negative_dir(&negative_dir()).unwrap();
    assert!(cases.len() >= 20);
    for case in cases {
        let mode = case.mode();
        let mut args: Vec<String> = vec!["check".into(), "--json".into()];
        args.push("--trunc-mode".into());
        args.push(format!("{mode:?}").to_lowercase());
        args.extend(case.expect.requires.iter().cloned());
        args.push(case.path.display().to_string());
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = ztk(&refs);
        let want = if case.expect.code.starts_with("parse/") { 2 } else { 1 };
        assert_eq!(code(&o), want, "{}", case.name);
        let last = stdout(&o).lines().last().unwrap_or_default().to_string();
        let v: serde_json::Value = serde_json::from_str(&last).unwrap();
        assert_eq!(v["code"], case.expect.code.as_str(), "{}", case.name);
        assert_eq!(v["line"], case.expect.line, "{}", case.name);
        assert_eq!(v["col"], case.expect.col, "{}", case.name);
    }
}
