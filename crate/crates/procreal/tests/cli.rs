//! End-to-end runs of the command line, one per exit code and subcommand.

use std::path::{Path, PathBuf};

use procreal::cli::run;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("procreal").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Writes `contents` to a file private to this test process.
fn file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("procreal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn corpus(name: &str) -> String {
    format!("{}/corpus/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn equal_terms_exit_zero() {
    let p = file("eq-p.ccs", "{a}.({b}.0 + {c}.0)");
    let q = file("eq-q.ccs", "{a}.({c}.0 + {b}.0) | 0");
    let (code, out, _) = run_cli(&["equiv", s(&p), s(&q)]);
    assert_eq!((code, out.as_str()), (0, "equal\n"));
}

#[test]
fn branching_difference_exits_one_with_witness() {
    let p = file("br-p.ccs", "{a}.({b}.0 + {c}.0)");
    let q = file("br-q.ccs", "{a}.{b}.0 + {a}.{c}.0");
    let (code, out, _) = run_cli(&["equiv", s(&p), s(&q)]);
    assert_eq!(code, 1);
    assert_eq!(out, "distinguished: after [{a}] only the right term refuses {{c}}\n");

    let (code, out, _) = run_cli(&["--format", "json", "equiv", s(&p), s(&q)]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "distinguished");
    assert_eq!(v["detail"]["trace"], serde_json::json!(["{a}"]));
    assert_eq!(v["detail"]["side"], "right");

    let (code, _, _) = run_cli(&["equiv", "--mode", "weak-bisim", s(&p), s(&q)]);
    assert_eq!(code, 1);
}

#[test]
fn lts_exports() {
    let p = file("lts.ccs", "{a}.{b}.0 + {c}.{}.0");
    let (code, out, _) = run_cli(&["--format", "json", "lts", s(&p)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["states"].as_array().unwrap().len(), 4);
    assert_eq!(v["complete"], true);
    let (code, out, _) = run_cli(&["--format", "dot", "lts", s(&p)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"), "{out}");
}

#[test]
fn exhausted_budget_exits_two() {
    let p = file("grow.ccs", "rec X. {a}.(X | {b}.0)");
    let (code, _, _) = run_cli(&["--max-states", "10", "lts", s(&p)]);
    assert_eq!(code, 2);
    let (code, out, _) = run_cli(&["--max-states", "10", "--depth", "30", "failures", s(&p)]);
    assert_eq!((code, out.as_str()), (2, "unknown: state budget exhausted\n"));
}

#[test]
fn failures_listing() {
    let p = file("loop.ccs", "rec X. {a}.X");
    let (code, out, _) = run_cli(&["--depth", "2", "failures", s(&p)]);
    assert_eq!(code, 0);
    assert_eq!(out, "[] accepts {{a}}\n[{a}] accepts {{a}}\n[{a}, {a}] accepts {{a}}\n");
}

#[test]
fn orthogonality() {
    let p = file("perp-p.ccs", "{a}.0");
    let q = file("perp-q.ccs", "{~a}.0");
    let d = file("perp-d.ccs", "rec X. {}.X");
    assert_eq!(run_cli(&["perp", s(&p), s(&q)]).0, 0);
    assert_eq!(run_cli(&["perp", s(&p), s(&d)]).0, 1);
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(run_cli(&["frobnicate"]).0, 3);
    assert_eq!(run_cli(&[]).0, 3);
    let p = file("usage.ccs", "0");
    assert_eq!(run_cli(&["--max-states", "0", "lts", s(&p)]).0, 3);
    assert_eq!(run_cli(&["equiv", s(&p)]).0, 3);
    let (code, out, _) = run_cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-cut"));
}

#[test]
fn bad_input_exits_four() {
    let (code, _, err) = run_cli(&["lts", "/nonexistent/procreal/term.ccs"]);
    assert_eq!(code, 4);
    assert!(err.starts_with("error: /nonexistent/procreal/term.ccs"), "{err}");
    let bad = file("bad.ccs", "{a}.(");
    assert_eq!(run_cli(&["lts", s(&bad)]).0, 4);
    let unguarded = file("unguarded.ccs", "rec X. X");
    assert_eq!(run_cli(&["lts", s(&unguarded)]).0, 4);
    let proof = file("bad-proof.json", r#"{"rule": "axiom", "formula": "a", "colour": 1}"#);
    assert_eq!(run_cli(&["extract", s(&proof)]).0, 4);
    let p = file("ok.ccs", "0");
    let types = file("types.json", r#"{"atoms": {}}"#);
    assert_eq!(run_cli(&["check-type", s(&p), "--types", s(&types), "--type", "a *"]).0, 4);
}

#[test]
fn runtime_renaming_failure_exits_five() {
    // The renaming is applied afresh at each unfolding, so the second step
    // performs `b` under a map defined only on `a`.
    let p = file("engine.ccs", "rec X. {a}.(X[map(a->b)])");
    let (code, _, err) = run_cli(&["lts", s(&p)]);
    assert_eq!(code, 5);
    assert!(err.contains("outside the renaming domain"), "{err}");
}

#[test]
fn extract_and_verify_corpus_proofs() {
    let out_path = std::env::temp_dir().join(format!("procreal-cli-{}-realizer.ccs", std::process::id()));
    let (code, out, _) = run_cli(&["extract", &corpus("self-a"), "-o", s(&out_path)]);
    assert_eq!((code, out.as_str()), (0, ""));
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(!written.trim().is_empty());
    let _ = std::fs::remove_file(&out_path);

    let (code, out, _) = run_cli(&["verify-cut", &corpus("self-tensor")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("step 1"), "{out}");
    let (code, out, _) = run_cli(&["--format", "json", "verify-cut", &corpus("commute-par")]);
    assert_eq!(code, 0, "{out}");
    let _: serde_json::Value = serde_json::from_str(&out).unwrap();
}

#[test]
fn type_membership() {
    let types = file(
        "atoms.json",
        r#"{"atoms": {"a": {"alphabet": ["a"], "pos": [["{a}.0", "{a}.0 + {a}.0"]], "neg": [["{~a}.0"]]}}}"#,
    );
    let member = file("member.ccs", "{a}.0 + {a}.0");
    let (code, out, _) = run_cli(&["check-type", s(&member), "--types", s(&types), "--type", "a"]);
    assert_eq!((code, out.as_str()), (0, "member: class 0\n"));
    let (code, _, _) = run_cli(&["check-type", s(&member), "--types", s(&types), "--type", "~a"]);
    assert_eq!(code, 1);
    let counter = file("counter.ccs", "{~a}.0");
    let (code, _, _) = run_cli(&["check-type", s(&counter), "--types", s(&types), "--type", "a", "--negative"]);
    assert_eq!(code, 0);
}

#[test]
fn exercises_pass() {
    let (code, out, _) = run_cli(&["exercises", "--trials", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("product"), "{out}");
}

#[test]
fn value_passing_is_expanded() {
    let p = file("values.ccs", "in s(x). out t(x). 0");
    let q = file("values-sum.ccs", "{s_0}.{~t_0}.0 + {s_1}.{~t_1}.0");
    assert_eq!(run_cli(&["equiv", s(&p), s(&q)]).0, 0);
    assert_eq!(run_cli(&["--values", "0,1,2", "equiv", s(&p), s(&q)]).0, 1);
}
