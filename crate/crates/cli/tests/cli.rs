use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chromacay"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn claim<'a>(r: &'a Value, op: &str) -> &'a Value {
    r["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["operation"] == op)
        .map(|c| &c["value"])
        .unwrap_or_else(|| panic!("no claim {op}"))
}

#[test]
fn chi_of_z8() {
    let r = report(&["chi", "--group", "Z/8", "--set", "1,4"]);
    assert_eq!(claim(&r, "chromatic_number"), 3);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["set"], serde_json::json!(["(1)", "(7)", "(4)"]));
}

#[test]
fn pi1_of_z9() {
    let r = report(&["pi1", "--group", "Z/9", "--set", "1,2"]);
    assert_eq!(claim(&r, "pi1_invariants")["invariants"]["free_rank"], 2);
}

#[test]
fn wind_on_triangle() {
    let r = report(&[
        "wind",
        "--group",
        "Z/3",
        "--set",
        "1",
        "--walk",
        "0,1,2,0",
        "--coloring",
        "0,1,2",
    ]);
    assert_eq!(claim(&r, "winding_number"), 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["chi", "--group", "Z/0"]).status.code(), Some(2));
    assert_eq!(
        run(&["chi", "--group", "Z/8", "--set", "1,4", "--no-symmetrize"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "payan", "--m", "9"]).status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_3() {
    // Dense 64-vertex cube-like graph; a zero budget cannot finish the search.
    let out = run(&[
        "chi",
        "--group",
        "Z/2 x Z/2 x Z/2 x Z/2 x Z/2 x Z/2",
        "--set",
        "(1,1,1,0,0,1);(1,1,1,0,1,0);(0,1,1,1,0,0);(1,0,0,1,0,1);(0,0,0,1,0,0);(0,0,0,0,0,1);(0,1,1,1,1,1);(1,1,0,0,0,0);(0,0,1,0,0,0);(0,0,1,0,1,1);(1,0,0,0,0,1);(0,1,0,1,0,0);(0,1,0,0,0,0);(1,0,1,0,1,1);(0,0,0,0,1,0);(1,0,0,0,1,0);(1,0,0,0,1,1);(0,1,1,0,1,1);(1,1,1,0,1,1);(1,0,1,0,0,0);(1,1,0,1,1,1);(0,1,0,1,1,0)",
        "--budget-ms",
        "0",
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(claim(&r, "chromatic_number"), "unknown");
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "winding", "--sequences", "20", "--seed", "5"];
    let a = run(&args).stdout;
    let b = run(&[&args[..], &["--jobs", "1"]].concat()).stdout;
    assert_eq!(a, b);
}

#[test]
fn cayley_dimacs_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.col");
    let out = run(&[
        "cayley",
        "--group",
        "Z/5",
        "--set",
        "1",
        "--format",
        "dimacs",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("p edge 5 5"), "{text}");
}

#[test]
fn search_resumes_from_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = dir.path().join("ledger.ndjson");
    let l = ledger.to_str().unwrap();
    let first = report(&[
        "search",
        "--m",
        "3",
        "--target",
        "3",
        "--ledger",
        l,
        "--max-subsets",
        "4",
    ]);
    assert_eq!(claim(&first, "search.processed"), 4);
    let second = report(&["search", "--m", "3", "--target", "3", "--ledger", l]);
    assert_eq!(claim(&second, "search.complete"), true);
    assert_eq!(claim(&second, "search.ledger_covered"), "128");
    assert_eq!(
        claim(&second, "search.start"),
        claim(&first, "search.cursor")
    );

    std::fs::write(&ledger, "garbage\n").unwrap();
    assert_eq!(
        run(&["search", "--m", "3", "--ledger", l]).status.code(),
        Some(2)
    );
}

#[test]
fn example54_and_group() {
    let r = report(&["example54", "--from", "9", "--to", "10"]);
    assert_eq!(r["status"], "ok");
    let g = report(&["group", "--group", "Z/4 x Z/6"]);
    assert_eq!(
        claim(&g, "group-core")["invariant_factors"]["torsion"],
        serde_json::json!([2, 12])
    );
}
