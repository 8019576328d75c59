use std::path::Path;

use ztk_core::checker::TruncMode;
use ztk_core::corpus::load_builtin;
use ztk_core::testkit::load_negative_dir;

fn negative_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/negative"))
}

#[test]
fn every_negative_case_is_rejected_as_documented() {
    let cases = load_negative_dir(negative_dir()).unwrap();
    assert!(cases.len() >= 20, "only {} cases", cases.len());
    let failures: Vec<String> = cases.iter().filter_map(|c| c.verify().err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn negative_cases_cover_parse_and_check_errors() {
    let cases = load_negative_dir(negative_dir()).unwrap();
    let parse = cases.iter().filter(|c| c.expect.code.starts_with("parse/")).count();
    let check = cases.iter().filter(|c| c.expect.code.starts_with("check/")).count();
    assert!(parse >= 5 && check >= 10, "parse {parse}, check {check}");
}

#[test]
fn trunc_ind_beta_is_accepted_in_jde() {
    let case = load_negative_dir(negative_dir())
        .unwrap()
        .into_iter()
        .find(|c| c.name == "trunc_ind_beta_jne")
        .unwrap();
    let mut trace = load_builtin(TruncMode::Jde, &[]);
    trace.load_source(&case.source, "trunc_ind_beta.ht", None);
    assert!(trace.is_ok());
}

#[test]
fn circle_induction_needs_pathovers_loaded_first() {
    let trace = load_builtin(TruncMode::Jne, &["prelude", "circle_ind"]);
    let err = trace.error.expect("circle_ind must not load without its dependencies");
    let d = err.first();
    assert_eq!(d.code, "parse/unbound-global");
    assert_eq!(d.file, "circle_ind.ht");
}
