use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use maxcut_cli::results::{strip_volatile, ResultsDocument, RESULTS_SCHEMA};

fn k5() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/k5.gset")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("maxcut").chain(args.iter().copied());
    let code = maxcut_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn generate(dir: &Path, family: &str, n: &str, count: &str) {
    let out = dir.join(format!("{family}{n}"));
    let (code, _, err) = run(&[
        "generate", "--family", family, "--n", n, "--seed", "3", "--count", count,
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn oracle_on_k5() {
    let (code, out, _) = run(&["oracle", "--instance", k5().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "6\n");
}

#[test]
fn forward_greedy_output_is_deterministic() {
    let k5 = k5();
    let args = ["solve", "--solver", "fg", "--instance", k5.to_str().unwrap()];
    let first = run(&args);
    assert_eq!(first.0, 0);
    assert_eq!(first, run(&args));
    let mut lines = first.1.lines();
    assert_eq!(lines.next(), Some("6"));
    assert_eq!(lines.next().map(str::len), Some(5));
}

#[test]
fn solve_writes_assignment_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.txt");
    let (code, out, _) = run(&[
        "solve", "--solver", "ts", "--episodes", "3", "--instance", k5().to_str().unwrap(),
        "--assignment-out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "6\n");
    let side = maxcut_core::io::parse_assignment(&fs::read_to_string(path).unwrap()).unwrap();
    let graph = maxcut_core::io::parse_gset(&fs::read_to_string(k5()).unwrap()).unwrap();
    assert_eq!(maxcut_core::cut_value(&graph, &side).unwrap(), 6);
}

#[test]
fn single_solver_self_normalized_ratios_are_one() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "er", "25", "4");
    let results = dir.path().join("results.json");
    let pattern = format!("{}/*/*.gset", dir.path().display());
    let (code, _, err) = run(&[
        "benchmark", "--solvers", "rg", "--instances", &pattern, "--episodes", "5",
        "--out", results.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let doc = ResultsDocument::from_json(&fs::read_to_string(&results).unwrap()).unwrap();
    assert_eq!(doc.records.len(), 4);
    assert!(doc.records.iter().all(|r| r.ratio == Some(1.0)));
}

#[test]
fn results_validate_against_published_schema() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "er", "20", "2");
    generate(dir.path(), "ba", "20", "2");
    let policy = dir.path().join("policy.json");
    let (code, _, err) = run(&[
        "train-softtabu", "--family", "er", "--n", "15", "--episodes", "20", "--validation-graphs", "3",
        "--out", policy.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let results = dir.path().join("results.json");
    let pattern = format!("{}/*/*.gset", dir.path().display());
    let (code, _, err) = run(&[
        "benchmark", "--solvers", "fg,rg,ts,eo,softtabu", "--policy", policy.to_str().unwrap(),
        "--instances", &pattern, "--episodes", "3", "--out", results.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");

    let schema: serde_json::Value = serde_json::from_str(RESULTS_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&results).unwrap()).unwrap();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");

    let mut broken = doc.clone();
    broken["schema_version"] = "maxcut-results/0".into();
    assert!(!validator.is_valid(&broken));
    assert!(ResultsDocument::from_json(&broken.to_string()).is_err());

    let mut tampered = doc.clone();
    tampered["records"][0]["ratio"] = 0.5.into();
    assert!(ResultsDocument::from_json(&tampered.to_string()).is_err());
}

#[test]
fn report_is_a_pure_function_of_results() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "er", "20", "3");
    generate(dir.path(), "ws", "20", "3");
    let results = dir.path().join("results.json");
    let pattern = format!("{}/*/*.gset", dir.path().display());
    let (code, _, _) = run(&[
        "benchmark", "--solvers", "fg,ts", "--instances", &pattern, "--episodes", "3",
        "--out", results.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let path = results.to_str().unwrap();
    let csv = run(&["report", "--results", path, "--format", "csv"]);
    assert_eq!(csv, run(&["report", "--results", path, "--format", "csv"]));
    let lines: Vec<&str> = csv.1.lines().collect();
    assert_eq!(lines[0], "distribution,FG mean,FG std,TS(tenure=20) mean,TS(tenure=20) std");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("er20,") && lines[2].starts_with("ws20,"));

    let md = run(&["report", "--results", path, "--format", "md"]).1;
    assert!(md.starts_with("| Graph | FG | TS(tenure=20) |\n|---|---|---|\n"));
    assert!(md.contains("**"));
}

#[test]
fn benchmark_twice_matches_modulo_volatile_fields() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "er", "20", "3");
    let pattern = format!("{}/*/*.gset", dir.path().display());
    let docs: Vec<serde_json::Value> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("r{i}.json"));
            let (code, _, _) = run(&[
                "benchmark", "--solvers", "rg,ts,eo", "--instances", &pattern, "--episodes", "4",
                "--seed", "11", "--out", out.to_str().unwrap(),
            ]);
            assert_eq!(code, 0);
            let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
            strip_volatile(&mut v);
            v
        })
        .collect();
    assert_eq!(docs[0], docs[1]);
}

#[test]
fn registry_round_trip_and_missing_entries() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "er", "18", "2");
    let pattern = format!("{}/*/*.gset", dir.path().display());
    let reg = dir.path().join("reg.tsv");
    let out = dir.path().join("r.json");
    let (code, _, _) = run(&[
        "benchmark", "--solvers", "ts", "--instances", &pattern, "--episodes", "3",
        "--out", out.to_str().unwrap(), "--registry-out", reg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, _, err) = run(&[
        "benchmark", "--solvers", "fg", "--instances", &pattern, "--registry", reg.to_str().unwrap(),
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let doc = ResultsDocument::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(doc.records.iter().all(|r| r.ratio.unwrap() <= 1.0));

    let partial = dir.path().join("partial.tsv");
    let first_line = fs::read_to_string(&reg).unwrap().lines().next().unwrap().to_string();
    fs::write(&partial, format!("{first_line}\n")).unwrap();
    let (code, _, err) = run(&[
        "benchmark", "--solvers", "fg", "--instances", &pattern, "--registry", partial.to_str().unwrap(),
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("no best-known value"), "{err}");
    let (code, _, _) = run(&[
        "benchmark", "--solvers", "fg", "--instances", &pattern, "--registry", partial.to_str().unwrap(),
        "--best-found", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
}

#[test]
fn tune_prints_one_row_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "er", "20", "2");
    let pattern = format!("{}/*/*.gset", dir.path().display());
    let (code, out, err) = run(&[
        "tune", "--solver", "ts", "--grid", "5:25:10", "--validation", &pattern, "--episodes", "2",
    ]);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1 + 3 + 1, "{out}");
    assert!(lines[4].starts_with("best "));
    let (code, _, _) = run(&["tune", "--solver", "fg", "--validation", &pattern]);
    assert_eq!(code, 2);
}

#[test]
fn generate_writes_parseable_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ba30");
    let (code, stdout, _) = run(&[
        "generate", "--family", "ba", "--n", "30", "--weights", "unweighted", "--count", "3",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 3);
    let files: Vec<_> = fs::read_dir(dir.path().join("ba30")).unwrap().collect();
    assert_eq!(files.len(), 3);
    for f in files {
        let g = maxcut_core::io::parse_gset(&fs::read_to_string(f.unwrap().path()).unwrap()).unwrap();
        assert_eq!(g.n(), 30);
        assert_eq!(g.edge_count(), (30 - 4) * 4);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["oracle", "--bogus"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["solve", "--solver", "softtabu", "--instance", k5().to_str().unwrap()]).0, 2);
    assert_eq!(run(&["solve", "--solver", "ts", "--tau", "x", "--instance", "k5"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gset");
    fs::write(&bad, "3 2\n1 2 1\n1 9 1\n").unwrap();
    let (code, _, err) = run(&["oracle", "--instance", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    // Too large for exhaustive search: the command itself fails.
    let big = dir.path().join("big.gset");
    fs::write(&big, "30 1\n1 2 1\n").unwrap();
    assert_eq!(run(&["oracle", "--instance", big.to_str().unwrap()]).0, 1);
}

#[test]
fn binary_reports_exit_status() {
    let bin = env!("CARGO_BIN_EXE_maxcut");
    let ok = Command::new(bin).args(["oracle", "--instance"]).arg(k5()).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "6\n");
    let bad = Command::new(bin).args(["oracle", "--nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
