//! The command line and the gallery, end to end.

use std::process::Command;

use cind::json::{JsonOutcome, JsonTable};
use cind::{gallery, run_text};
use cind_core::{Bounds, Status};

fn cind(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cind")).args(args).env_remove("CIND_BUDGET").output().expect("cind runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn every_fixture_holds() {
    for name in gallery::names() {
        let outcome = run_text(gallery::get(name).unwrap(), &Bounds::default()).unwrap();
        assert_eq!(outcome.status(), Status::Holds, "{}", name);
        assert!(!outcome.checks.is_empty(), "{} checks nothing", name);
    }
}

#[test]
fn gallery_lists_and_prints_fixtures() {
    let (code, out, _) = cind(&["gallery"]);
    assert_eq!(code, 0);
    let listed: Vec<&str> = out.lines().collect();
    assert_eq!(listed, gallery::names().collect::<Vec<_>>());
    let (code, out, _) = cind(&["gallery", "truth_monoid", "--print"]);
    assert_eq!(code, 0);
    assert_eq!(out, gallery::get("truth_monoid").unwrap());
}

#[test]
fn gallery_json_matches_the_library_run() {
    let (code, out, _) = cind(&["gallery", "nat_as_lists", "--json"]);
    assert_eq!(code, 0);
    let parsed: JsonOutcome = serde_json::from_str(&out).unwrap();
    let direct = run_text(gallery::get("nat_as_lists").unwrap(), &Bounds::default()).unwrap();
    assert_eq!(parsed, JsonOutcome::from(&direct));
}

#[test]
fn table_prints_every_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("min.cind");
    std::fs::write(&path, "coalg N = nat_counter(2)\nalg A = nat(2)\nmeasure low = solve(N, A, A)\n").unwrap();
    let file = path.display().to_string();
    let (code, out, err) = cind(&["table", &file, "low"]);
    assert_eq!(code, 0, "{}", err);
    let table: JsonTable = serde_json::from_str(&out).unwrap();
    assert_eq!(table.measuring, "low");
    assert_eq!(table.rows.len(), 9);
    let row = table.rows.iter().find(|r| r.coalgebra_state == "2" && r.input == "(e (e #b))").unwrap();
    assert_eq!(row.output, "(e (e #b))");
    let row = table.rows.iter().find(|r| r.coalgebra_state == "1" && r.input == "(e (e #b))").unwrap();
    assert_eq!(row.output, "(e #b)");
    let (code, _, _) = cind(&["table", &file, "nothing"]);
    assert_eq!(code, 2);
}

#[test]
fn script_errors_name_the_file_and_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cind");
    std::fs::write(&path, "monoid U = builtin triv\nfunctor F = shape(V, 1)\n").unwrap();
    let (code, _, err) = cind(&["check", &path.display().to_string()]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.cind:2:1") && err.contains("`V`"), "{}", err);
}

#[test]
fn demo_prune_rejects_malformed_terms() {
    let (code, _, err) = cind(&["demo", "prune", "--shape", "(0 #b", "--tree", "#b"]);
    assert_eq!(code, 2, "{}", err);
}
