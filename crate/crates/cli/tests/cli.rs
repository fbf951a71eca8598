//! End-to-end tests against the compiled binary: output shapes, golden
//! files, determinism, cache transparency, exit codes, env overrides.

use std::path::Path;
use std::process::Command;

fn run_env(args: &[&str], envs: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quivertors"));
    cmd.args(args)
        .env_remove("QUIVERTORS_PRIME")
        .env_remove("QUIVERTORS_BUDGET_HOM")
        .env_remove("QUIVERTORS_BUDGET_SCAN")
        .env_remove("QUIVERTORS_GOLDEN_DIR");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

#[test]
fn tors_a2_reports_five_classes() {
    let (code, out, _) = run(&["tors", "--builtin", "a2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("5 torsion classes"), "got: {out}");
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn hasse_dot_matches_the_golden_files() {
    for builtin in ["a2", "a3", "d4"] {
        let (code, out, _) = run(&["hasse", "--builtin", builtin, "--format", "dot"]);
        assert_eq!(code, 0);
        assert_eq!(out, golden(&format!("hasse-{builtin}.dot")), "{builtin} drifted");
    }
    let a2 = golden("hasse-a2.dot");
    let nodes = a2.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();
    assert_eq!(nodes, 5, "five nodes");
    assert_eq!(a2.matches(" -> ").count(), 5, "five cover edges");
}

#[test]
fn theorem_c_json_matches_the_golden_file() {
    let (code, out, _) = run(&["kronecker", "verify-theorem-c", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("theorem-c.json"));
}

#[test]
fn bless_regenerates_identical_goldens() {
    let dir = tempfile::tempdir().unwrap();
    let dir_str = dir.path().to_str().unwrap();
    for builtin in ["a2", "a3"] {
        let (code, out, _) = run_env(
            &["hasse", "--builtin", builtin, "--bless"],
            &[("QUIVERTORS_GOLDEN_DIR", dir_str)],
        );
        assert_eq!(code, 0);
        assert_eq!(out, format!("blessed hasse-{builtin}.dot\n"));
        let fresh = std::fs::read_to_string(dir.path().join(format!("hasse-{builtin}.dot"))).unwrap();
        assert_eq!(fresh, golden(&format!("hasse-{builtin}.dot")));
    }
    let (code, _, err) = run_env(
        &["indecs", "--bless"],
        &[("QUIVERTORS_GOLDEN_DIR", dir_str)],
    );
    assert_eq!(code, 2, "no golden for indecs: {err}");
}

#[test]
fn verify_euler_passes_on_a3() {
    let (code, out, _) = run(&["verify", "euler", "--builtin", "a3"]);
    assert_eq!(code, 0);
    assert!(out.contains("suite euler: pass"), "got: {out}");
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        vec!["wide", "--builtin", "a3", "--format", "json"],
        vec!["hasse", "--builtin", "a3", "--format", "json"],
        vec!["kronecker", "catalog"],
    ] {
        let (c1, o1, _) = run(&args);
        let (c2, o2, _) = run(&args);
        assert_eq!(c1, 0);
        assert_eq!(c1, c2);
        assert_eq!(o1, o2, "nondeterministic output for {args:?}");
    }
}

#[test]
fn cache_round_trip_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let dir_str = dir.path().to_str().unwrap();
    let (code, plain, _) = run(&["tors", "--builtin", "a3"]);
    assert_eq!(code, 0);
    let (code, cold, _) = run(&["tors", "--builtin", "a3", "--cache-dir", dir_str]);
    assert_eq!(code, 0);
    let cache_file = dir.path().join("universe-a3-p5.json");
    assert!(cache_file.exists(), "cache file written");
    let (code, warm, _) = run(&["tors", "--builtin", "a3", "--cache-dir", dir_str]);
    assert_eq!(code, 0);
    assert_eq!(plain, cold);
    assert_eq!(plain, warm);

    // A corrupt cache entry is rebuilt, not trusted.
    std::fs::write(&cache_file, "not json").unwrap();
    let (code, recovered, _) = run(&["tors", "--builtin", "a3", "--cache-dir", dir_str]);
    assert_eq!(code, 0);
    assert_eq!(plain, recovered);
    let rewritten = std::fs::read_to_string(&cache_file).unwrap();
    assert!(rewritten.starts_with('{'), "cache file was repaired");

    // A stale lock file parks the writer but never corrupts the run.
    std::fs::write(&cache_file, "not json").unwrap();
    std::fs::write(dir.path().join("universe-a3-p5.json.lock"), "").unwrap();
    let (code, locked, _) = run(&["tors", "--builtin", "a3", "--cache-dir", dir_str]);
    assert_eq!(code, 0);
    assert_eq!(plain, locked);
}

#[test]
fn exit_codes_distinguish_failure_classes() {
    let (code, _, err) = run(&["indecs", "--builtin", "e8"]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid input"), "got: {err}");

    let (code, _, err) = run(&["tors", "--builtin", "a3", "--budget-scan", "32"]);
    assert_eq!(code, 3);
    assert!(err.contains("budget exceeded"), "got: {err}");

    let (code, out, err) = run(&["tube", "3", "6"]);
    assert_eq!(code, 4, "rank-3 counterexamples are a falsified shape claim");
    assert!(out.contains("violation"), "report printed before exit: {out}");
    assert!(err.contains("invariant violation"), "got: {err}");

    let (code, _, err) = run(&["alpha", "root[1,1]", "--builtin", "a2"]);
    assert_eq!(code, 2, "not a torsion class: {err}");

    let (code, _, err) = run(&["indecs", "--format", "dot"]);
    assert_eq!(code, 2);
    assert!(err.contains("dot output"), "got: {err}");

    let (code, _, err) = run(&["verify", "nonsense"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown suite"), "got: {err}");
}

#[test]
fn env_overrides_apply_with_flag_precedence() {
    let (code, out, _) = run_env(&["indecs", "--builtin", "a2"], &[("QUIVERTORS_PRIME", "3")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("3 indecomposables (a2, p=3)"), "got: {out}");

    let (code, out, _) = run_env(
        &["indecs", "--builtin", "a2", "--prime", "5"],
        &[("QUIVERTORS_PRIME", "4")],
    );
    assert_eq!(code, 0, "flag wins over a bad env value");
    assert!(out.contains("p=5"));

    let (code, _, err) = run_env(&["indecs"], &[("QUIVERTORS_BUDGET_HOM", "0")]);
    assert_eq!(code, 2);
    assert!(err.contains("budgets must be positive"), "got: {err}");
}

#[test]
fn ringel_point_set_checks_pass() {
    let (code, out, _) = run(&["kronecker", "ringel", "--set", "0,1,3"]);
    assert_eq!(code, 0);
    assert!(out.contains("all checks pass"), "got: {out}");
    assert!(out.contains("isomorphic to pre(3): yes"));
}

#[test]
fn tube_2_4_reports_no_violations() {
    let (code, out, _) = run(&["tube", "2", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("6 wide subcategories, 0 violations"), "got: {out}");
}

#[test]
fn alpha_accepts_none_and_all() {
    let (code, out, _) = run(&["alpha", "none", "--builtin", "a2"]);
    assert_eq!(code, 0);
    assert!(out.contains("alpha: {}"), "got: {out}");
    let (code, out, _) = run(&["alpha", "all", "--builtin", "a2"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("alpha: {root[0,1], root[1,0], root[1,1]}"),
        "the whole category is wide: {out}"
    );
}

#[test]
fn wide_json_parses_and_counts() {
    let (code, out, _) = run(&["wide", "--builtin", "a3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(v["count"], 14);
    assert_eq!(v["wides"].as_array().unwrap().len(), 14);
}

#[test]
fn catalog_json_flag_matches_format_json() {
    let (c1, o1, _) = run(&["kronecker", "catalog", "--json"]);
    let (c2, o2, _) = run(&["kronecker", "catalog", "--format", "json"]);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(o1, o2);
}

#[test]
fn output_flag_writes_the_artifact_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.dot");
    let (code, out, _) = run(&[
        "hasse",
        "--builtin",
        "a2",
        "--format",
        "dot",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty(), "artifact goes to the file, not stdout");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("hasse-a2.dot"));
}

#[test]
fn custom_quiver_file_loads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2rev.json");
    std::fs::write(
        &path,
        r#"{"vertices": ["1", "2"], "arrows": [{"name": "a1", "src": 1, "tgt": 0}]}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["tors", "--quiver", path.to_str().unwrap()]);
    assert_eq!(code, 0, "opposite orientation of a2: {out}");
    assert!(out.starts_with("5 torsion classes"), "got: {out}");
}
