use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn arbor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arbor")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", &format!("{name}.json")].iter().collect();
    p.display().to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("json output")
}

fn codes(o: &Output) -> Vec<String> {
    json(o)["trees"].as_array().unwrap().iter().map(|t| t["code"].as_str().unwrap().to_string()).collect()
}

fn sizes(o: &Output) -> Vec<Vec<u64>> {
    json(o)["trees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["sizes"].as_array().unwrap().iter().map(|s| s.as_u64().unwrap()).collect())
        .collect()
}

// enumerate

#[test]
fn exact_height_one_lists_the_corollas() {
    let o = arbor(&["enumerate", "--pattern", "gamma", "--height", "1", "--width", "3", "--exact", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(sizes(&o), vec![vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1]]);
    let auts: Vec<_> = json(&o)["trees"].as_array().unwrap().iter().map(|t| t["automorphisms"].clone()).collect();
    assert_eq!(auts, ["1", "1", "2", "6"]);
}

#[test]
fn terminal_pattern_gives_the_simplices() {
    for pattern in ["terminal", "delta"] {
        let o = arbor(&["enumerate", "--pattern", pattern, "--height", "2", "--format", "json"]);
        assert_eq!(code(&o), 0);
        assert_eq!(sizes(&o), vec![vec![1], vec![1, 1], vec![1, 1, 1]]);
    }
}

#[test]
fn height_zero_is_eta_only() {
    let o = arbor(&["enumerate", "--height", "0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(sizes(&o), vec![vec![1]]);
}

#[test]
fn enumeration_without_exact_includes_lower_trees() {
    let exact = arbor(&["enumerate", "--height", "2", "--width", "2", "--exact", "--format", "json"]);
    let all = arbor(&["enumerate", "--height", "2", "--width", "2", "--format", "json"]);
    let (exact, all) = (codes(&exact), codes(&all));
    assert!(exact.iter().all(|c| all.contains(c)));
    assert!(all.len() > exact.len());
}

#[test]
fn bounds_beyond_the_supported_window_exit_2() {
    let o = arbor(&["enumerate", "--height", "9"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("bound"));
}

#[test]
fn unknown_flags_exit_2() {
    assert_eq!(code(&arbor(&["enumerate", "--pattern", "cubes"])), 2);
    assert_eq!(code(&arbor(&["frobnicate"])), 2);
}

// check-segal

#[test]
fn ass_fixture_is_segal() {
    let o = arbor(&["check-segal", "--operad", &fixture("ass")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("Segal on the window"));
}

#[test]
fn every_fixture_file_is_segal() {
    for name in ["com", "ass", "free-binary", "two-colour", "free-monoid"] {
        let o = arbor(&["check-segal", "--operad", &fixture(name), "--height", "2", "--width", "2"]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
}

#[test]
fn corrupted_nerve_exits_1_with_a_witness() {
    let o = arbor(&["check-segal", "--operad", "com", "--corrupt", "duplicate:0", "--corrupt-at", "c:2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness at"));
    let o =
        arbor(&["check-segal", "--operad", "com", "--corrupt", "remove:0", "--corrupt-at", "c:2", "--format", "json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["passed"], false);
}

#[test]
fn empty_window_passes_vacuously() {
    let o = arbor(&["check-segal", "--operad", "com", "--height", "0", "--width", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("vacuous"));
}

#[test]
fn non_associative_spec_exits_2_naming_the_triple() {
    let dir = tempfile::tempdir().unwrap();
    let mut spec: Value = serde_json::from_str(&std::fs::read_to_string(fixture("ass")).unwrap()).unwrap();
    for g in spec["gamma"].as_array_mut().unwrap() {
        if g["outer"] == "w01" && g["slot"] == 0 && g["inner"] == "w01" {
            g["result"] = "w021".into();
        }
    }
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, spec.to_string()).unwrap();
    let o = arbor(&["check-segal", "--operad", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("associativity"), "{}", stderr(&o));
    assert!(stderr(&o).contains("(\"w01\", \"w01\""), "{}", stderr(&o));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let truncated = dir.path().join("t.json");
    std::fs::write(&truncated, "{\"colors\":").unwrap();
    assert_eq!(code(&arbor(&["check-segal", "--operad", truncated.to_str().unwrap()])), 2);
    assert_eq!(code(&arbor(&["check-segal", "--operad", "no-such-operad"])), 2);
    assert_eq!(code(&arbor(&["check-segal"])), 2);
    assert_eq!(code(&arbor(&["check-segal", "--operad", "com", "--corrupt", "remove:0"])), 2);
    assert_eq!(code(&arbor(&["envelope", "--operad", "com", "--object", "c:x"])), 2);
    assert_eq!(code(&arbor(&["envelope", "--operad", "com", "--cap", "0"])), 2);
}

#[test]
fn tabulated_presheaf_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("com.json");
    let o = arbor(&["export", "--what", "presheaf", "--operad", "com", "--height", "2", "--width", "2"]);
    assert_eq!(code(&o), 0);
    std::fs::write(&file, &o.stdout).unwrap();
    let o = arbor(&["check-segal", "--presheaf", file.to_str().unwrap(), "--height", "2", "--width", "2"]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn parallel_check_prints_the_same_bytes() {
    let one = arbor(&["check-segal", "--operad", "two-colour", "--format", "json"]);
    let four = arbor(&["check-segal", "--operad", "two-colour", "--format", "json", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
}

// envelope

#[test]
fn corolla_envelope_shows_the_raw_coproduct() {
    let o = arbor(&["envelope", "--operad", &fixture("com"), "--object", "c:1", "--cap", "3"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("classes"));
    assert!(out.contains("raw coproduct"));
    let o = arbor(&["envelope", "--operad", "com", "--object", "c:1", "--cap", "3", "--format", "json"]);
    let v = json(&o);
    assert!(v["corolla_formula"]["raw_coproduct"].as_u64().unwrap() > 0);
    assert!(v["envelope"]["classes"].as_array().is_some());
}

#[test]
fn envelope_reports_echo_the_config_and_stabilization() {
    let o =
        arbor(&["envelope", "--operad", "com", "--object", "eta", "--cap", "3", "--exclude-empty", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["config"]["cap"], 3);
    assert_eq!(v["config"]["exclude_empty"], true);
    assert_eq!(v["config"]["strict"], true);
    assert!(v["envelope"]["stabilized"].is_boolean());
    let o = arbor(&["envelope", "--pattern", "terminal", "--include-empty", "--no-strict", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["config"]["exclude_empty"], false);
    assert_eq!(v["config"]["strict"], false);
}

#[test]
fn nerves_have_no_transport_along_non_plus_maps() {
    let o = arbor(&["envelope", "--operad", "com", "--no-strict"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not a plus-map"));
}

#[test]
fn terminal_envelope_at_eta() {
    let o = arbor(&["envelope", "--pattern", "terminal", "--object", "eta", "--cap", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["envelope"]["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn forest_objects_load_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("c2.json");
    let o = arbor(&["export", "--object", "c:2", "--format", "json", "--out", tree.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let at = format!("@{}", tree.display());
    let a = arbor(&["envelope", "--operad", "com", "--object", &at, "--cap", "2", "--format", "json"]);
    let b = arbor(&["envelope", "--operad", "com", "--object", "c:2", "--cap", "2", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(json(&a)["envelope"], json(&b)["envelope"]);
}

// verify

#[test]
fn factorization_suite_passes() {
    let o = arbor(&["verify", "--suite", "factorization", "--pattern", "gamma", "--size", "3", "--height", "1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn oracle_suite_passes() {
    let o = arbor(&["verify", "--suite", "oracle", "--height", "2", "--width", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["report"]["passed"], true);
    assert_eq!(v["config"]["height"], 2);
}

#[test]
fn adjunction_suite_passes_on_com() {
    let o = arbor(&["verify", "--suite", "adjunction", "--operad", "com"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn small_suites_pass() {
    for suite in ["counts", "automorphisms", "segal"] {
        let o = arbor(&["verify", "--suite", suite, "--size", "3", "--height", "1", "--width", "2"]);
        assert_eq!(code(&o), 0, "{suite}: {}", stdout(&o));
    }
}

#[test]
fn verify_without_a_suite_exits_2() {
    assert_eq!(code(&arbor(&["verify"])), 2);
    assert_eq!(code(&arbor(&["verify", "--suite", "factorization", "--pattern", "terminal"])), 2);
}

#[test]
fn fuzz_is_reproducible_per_seed() {
    let run = |seed: &str| arbor(&["verify", "--suite", "fuzz", "--seed", seed, "--format", "json"]);
    let (a, b) = (run("7"), run("7"));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["config"]["seed"], 7);
}

// export

fn dot_counts(dot: &str) -> (usize, usize) {
    (dot.matches("shape=circle").count(), dot.matches("->").count())
}

#[test]
fn corolla_dot_has_one_vertex_and_three_edges() {
    let o = arbor(&["export", "--what", "tree", "--object", "c:2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(dot_counts(&stdout(&o)), (1, 3));
}

#[test]
fn eta_dot_has_no_vertex_and_one_edge() {
    let o = arbor(&["export", "--what", "tree", "--object", "eta"]);
    assert_eq!(dot_counts(&stdout(&o)), (0, 1));
}

#[test]
fn slice_export_is_a_digraph() {
    let o = arbor(&["export", "--what", "slice", "--object", "eta", "--cap", "2"]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("->"));
}

#[test]
fn exports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 4] = [
        &["export", "--what", "envelope", "--operad", "ass", "--object", "c:2", "--cap", "2"],
        &["export", "--what", "presheaf", "--operad", "two-colour"],
        &["export", "--what", "slice", "--object", "c:1", "--cap", "2"],
        &["enumerate", "--height", "3", "--width", "2", "--format", "json"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let paths: Vec<PathBuf> = (0..2).map(|k| dir.path().join(format!("{i}-{k}"))).collect();
        for p in &paths {
            let mut a = args.to_vec();
            a.extend(["--out", p.to_str().unwrap()]);
            let o = arbor(&a);
            assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        }
        let read = |p: &Path| std::fs::read(p).unwrap();
        assert_eq!(read(&paths[0]), read(&paths[1]), "{args:?}");
        assert!(!read(&paths[0]).is_empty());
    }
}

#[test]
fn unwritable_output_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("x.dot");
    let o = arbor(&["export", "--object", "eta", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("i/o error"));
}

#[test]
fn operad_export_matches_the_fixture_file() {
    let o = arbor(&["export", "--what", "operad", "--operad", "two-colour"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("two-colour")).unwrap());
}
