//! End-to-end behavior of the `lefdisc` binary: exact output lines, exit
//! codes, determinism, and machine-report fidelity.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lefdisc_core::catalog;
use lefdisc_core::gca;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lefdisc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn emit(dir: &Path, key: &str) -> PathBuf {
    let path = dir.join(format!("{key}.ring"));
    let entry = catalog::get(key).expect("known key");
    std::fs::write(&path, gca::emit_ring(&entry.ring)).unwrap();
    path
}

#[test]
fn disc_all_prints_canonical_lines() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = emit(dir.path(), "f1");
    let out = run(&["disc", f1.to_str().unwrap(), "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("δ_1 = 1 (vacuous)"), "{text}");
    assert!(text.contains("δ_2 = t0^2 - t1^2"), "{text}");
}

#[test]
fn disc_single_level() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = emit(dir.path(), "p2");
    let out = run(&["disc", p2.to_str().unwrap(), "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("δ_2 = t0^2"));
    // out-of-range level is malformed input
    let out = run(&["disc", p2.to_str().unwrap(), "--k", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_reports_failure_level_and_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = emit(dir.path(), "f1");
    let out = run(&["check", f1.to_str().unwrap(), "--eta", "1,1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("k=2: FAIL"), "{text}");

    let out = run(&["check", f1.to_str().unwrap(), "--eta", "1,0"]);
    assert_eq!(out.status.code(), Some(0));

    // rational coordinates are accepted
    let out = run(&["check", f1.to_str().unwrap(), "--eta", "1,1/2"]);
    assert_eq!(out.status.code(), Some(0));

    // malformed coordinates are input errors
    let out = run(&["check", f1.to_str().unwrap(), "--eta", "1,zebra"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check", f1.to_str().unwrap(), "--eta", "1,0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_accepts_every_catalog_emission() {
    let dir = tempfile::tempdir().unwrap();
    for key in catalog::keys() {
        let path = dir.path().join(format!("{key}.ring"));
        let out = run(&["catalog", "emit", key, "-o", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "emit {key}");
        let out = run(&["validate", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "validate {key}");
        assert!(stdout(&out).contains("is valid"));
    }
}

#[test]
fn validate_lists_broken_identities() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = catalog::get("f1").unwrap().ring;
    let mut doc = gca::ring_to_document(&f1);
    let entry = doc
        .products
        .iter_mut()
        .find(|p| p.a == (0, 0) && p.b == (2, 0))
        .unwrap();
    entry.result[0].0 = serde_json::from_str("2").unwrap();
    let path = dir.path().join("broken.ring");
    std::fs::write(&path, doc.to_json()).unwrap();

    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("associativity fails"), "{text}");
    assert!(text.contains("unit law fails"), "{text}");
}

#[test]
fn unreadable_and_unparsable_inputs_exit_two() {
    let out = run(&["validate", "/nonexistent/no.ring"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbage.ring");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["disc", path.to_str().unwrap(), "--all"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["catalog", "emit", "nope", "-o", "/tmp/x.ring"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hopf_void_levels_are_not_errors() {
    let dir = tempfile::tempdir().unwrap();
    let hopf = emit(dir.path(), "hopf");
    let out = run(&["disc", hopf.to_str().unwrap(), "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("δ_1 = 0 (void)"), "{text}");
    assert!(text.contains("δ_2 = 0 (void)"), "{text}");

    let out = run(&["search", hopf.to_str().unwrap(), "--height", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("void"));
}

#[test]
fn ray_and_search_output() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = emit(dir.path(), "f1");
    let out = run(&["ray", f1.to_str().unwrap(), "--alpha", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("type 2, multiplicity 1"));

    let out = run(&["ray", f1.to_str().unwrap(), "--alpha", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("L-negligible"));

    let out = run(&["search", f1.to_str().unwrap(), "--height", "2"]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "(1,1) (type 2, multiplicity 1)");
    assert_eq!(lines[1], "(1,-1) (type 2, multiplicity 1)");
}

#[test]
fn geom_and_cross_exit_codes() {
    let out = run(&[
        "geom",
        "--n",
        "4",
        "--dim-s",
        "3",
        "--dim-phi-s",
        "2",
        "--length",
        "1",
        "--strata",
        "2:0",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = run(&[
        "geom",
        "--n",
        "4",
        "--dim-s",
        "3",
        "--dim-phi-s",
        "2",
        "--strata",
        "2:1",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let p2 = emit(dir.path(), "p2");
    let out = run(&[
        "cross",
        p2.to_str().unwrap(),
        "--ray",
        "1",
        "--n",
        "2",
        "--dim-s",
        "2",
        "--dim-phi-s",
        "0",
        "--length",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("prediction: type 2, multiplicity >= 2"),
        "{text}"
    );
    assert!(text.contains("observed multiplicity at k=2: 2"), "{text}");
    assert!(text.contains("length bound m >= l - 1: ok"), "{text}");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let torus2 = emit(dir.path(), "torus2");
    for args in [
        vec!["disc", torus2.to_str().unwrap(), "--all"],
        vec!["search", torus2.to_str().unwrap(), "--height", "2"],
        vec![
            "disc",
            torus2.to_str().unwrap(),
            "--all",
            "--format",
            "json",
        ],
        vec!["catalog", "list"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn json_report_reparses_to_the_in_memory_report() {
    use clap::Parser;
    let dir = tempfile::tempdir().unwrap();
    let f1 = emit(dir.path(), "f1");
    let f1s = f1.to_str().unwrap();

    for args in [
        vec!["lefdisc", "disc", f1s, "--all"],
        vec!["lefdisc", "check", f1s, "--eta", "1,1"],
        vec!["lefdisc", "ray", f1s, "--alpha", "1,1"],
        vec!["lefdisc", "search", f1s, "--height", "2"],
        vec!["lefdisc", "catalog", "list"],
    ] {
        let cli = lefdisc::Cli::parse_from(&args);
        let (report, _text) = lefdisc::execute(&cli).expect("valid invocation");

        let mut bin_args: Vec<&str> = args[1..].to_vec();
        bin_args.extend(["--format", "json"]);
        let out = run(&bin_args);
        let parsed: lefdisc::Report = serde_json::from_str(&stdout(&out)).expect("report parses");
        assert_eq!(parsed, report, "{args:?}");
        assert_eq!(out.status.code(), Some(report.exit_code()));
    }
}

#[test]
fn emitted_documents_are_canonical() {
    // emit -> load -> emit is the identity on bytes
    for key in ["p3", "torus2", "hopf"] {
        let entry = catalog::get(key).unwrap();
        let first = gca::emit_ring(&entry.ring);
        let reloaded = gca::load_ring(&first).unwrap();
        assert_eq!(gca::emit_ring(&reloaded), first, "{key}");
    }
}
