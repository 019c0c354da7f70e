use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

const GOLDEN_SHA256: &str = "1bd101cb22228521d40949dbf41466e44a8a77f63879bd7ee37aeb447df95af4";

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn ccpoint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccpoint")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find_map(|l| l.strip_prefix(key)).unwrap_or_else(|| panic!("no {key:?} in {text}")).trim()
}

#[test]
fn solve_golden_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.json");
    let trace = dir.path().join("trace.csv");
    let o = ccpoint(&[
        "solve", "--builtin", "example-2.10", "--x0", "2", "--y0", "3", "--tol", "1e-10",
        "--out", out.to_str().unwrap(), "--trace", trace.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s: f64 = field(&stdout(&o), "strong point:").split_whitespace().next().unwrap().parse().unwrap();
    assert!(s.abs() < 3e-10);

    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["iterations_used"], 25);
    assert_eq!(doc["k"]["quality"], "declared");
    assert_eq!(doc["assumptions"]["complete_space"], true);
    let csv = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(csv.lines().count(), 27);
    assert!(csv.starts_with("n,x_n,y_n,gx_n,gy_n,gap,residual_x,residual_y,diagonal_bound,pair_bound\n"));
}

#[test]
fn check_g_coupling_holds() {
    let o = ccpoint(&["check", "g-coupling", "--builtin", "example-2.10", "--samples", "1000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "verdict:"), "holds-on-samples");
    assert_eq!(field(&text, "seed:"), "7");
}

#[test]
fn violated_check_exits_with_one() {
    // The plain inequality holds with 1/5 and no smaller constant.
    let o = ccpoint(&["check", "banach-coupling", "--builtin", "example-2.10", "--k", "0.15", "--samples", "2000", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(field(&stdout(&o), "verdict:"), "violated");
    assert!(stderr(&o).contains("banach coupling violated"));
    let o = ccpoint(&["check", "cyclic", "--builtin", "example-2.10", "--samples", "200", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn estimate_k_in_range() {
    let o = ccpoint(&["estimate-k", "--builtin", "example-2.10", "--samples", "10000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let k: f64 = field(&stdout(&o), "k_hat:").parse().unwrap();
    assert!((0.399..=0.4 + 1e-9).contains(&k), "{k}");
}

#[test]
fn artifacts_are_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut docs = Vec::new();
    for threads in ["1", "4"] {
        let out = dir.path().join(format!("report-{threads}.json"));
        let o = ccpoint(&[
            "--threads", threads, "check", "banach-coupling", "--builtin", "example-2.10", "--k", "0.15",
            "--samples", "3000", "--seed", "5", "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(1), "k = 0.15 is below the true 1/5");
        docs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(docs[0], docs[1]);
    let doc: serde_json::Value = serde_json::from_slice(&docs[0]).unwrap();
    assert_eq!(doc["seed"], 5);
    assert!(!doc["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn solve_documents_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        ccpoint(&["solve", "--builtin", "diagonal-2d", "--out", out.to_str().unwrap()]);
        std::fs::read(out).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn bounds_replay_flags_understated_k() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let t = trace.to_str().unwrap();
    assert_eq!(ccpoint(&["solve", "--builtin", "example-2.10", "--trace", t]).status.code(), Some(0));
    assert_eq!(ccpoint(&["bounds", "--builtin", "example-2.10", "--trace", t]).status.code(), Some(0));
    let o = ccpoint(&["bounds", "--builtin", "example-2.10", "--trace", t, "--k", "0.1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("exceeds"));
}

#[test]
fn oracle_lists_pairs_and_canonical_form() {
    let dir = tempfile::tempdir().unwrap();
    let canon = dir.path().join("canon.toml");
    let o = ccpoint(&["oracle", "--problem", data("grid3.toml").to_str().unwrap(), "--canonical", canon.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(field(&text, "coincidence pairs:"), "4");
    assert_eq!(field(&text, "strong points:"), "[0, 1]");
    let canon = std::fs::read_to_string(canon).unwrap();
    assert!(canon.contains("a = [0, 1, 2]"), "{canon}");
}

#[test]
fn oracle_rejects_continuous_problems() {
    let o = ccpoint(&["oracle", "--builtin", "example-2.10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn finite_problem_solves_to_an_oracle_pair() {
    let o = ccpoint(&["solve", "--problem", data("grid3.toml").to_str().unwrap(), "--x0", "2", "--y0", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let pair = (field(&text, "a:"), field(&text, "b:"));
    assert!([("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")].contains(&pair), "{pair:?}");
}

#[test]
fn export_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("example.toml");
    assert_eq!(ccpoint(&["export-example", "--out", out.to_str().unwrap()]).status.code(), Some(0));
    let bytes = std::fs::read(&out).unwrap();
    assert_eq!(bytes, std::fs::read(data("scaled_average.toml")).unwrap());
    assert_eq!(format!("{:x}", Sha256::digest(&bytes)), GOLDEN_SHA256);

    let o = ccpoint(&["solve", "--problem", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "iterations:"), "25");
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn input_errors_exit_with_two_and_explain() {
    let dir = tempfile::tempdir().unwrap();
    let golden = std::fs::read_to_string(data("scaled_average.toml")).unwrap();

    let bad_k = write(dir.path(), "k.toml", &golden.replace("k = 0.4", "k = 1.2"));
    let o = ccpoint(&["solve", "--problem", bad_k.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("k = 1.2 outside (0,1)"), "{}", stderr(&o));

    let typo = write(dir.path(), "typo.toml", &golden.replace("m = 0.5", "m = \"half\""));
    let o = ccpoint(&["solve", "--problem", typo.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let msg = stderr(&o);
    assert!(msg.contains("line") && msg.contains('m'), "{msg}");

    let grid = std::fs::read_to_string(data("grid3.toml")).unwrap();
    let asym = write(dir.path(), "asym.toml", &grid.replace("[1.0, 0.0, 1.0]", "[1.5, 0.0, 1.0]"));
    let o = ccpoint(&["oracle", "--problem", asym.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("asymmetric entries (0,1)"), "{}", stderr(&o));

    let o = ccpoint(&["solve", "--builtin", "example-2.10", "--x0", "two", "--y0", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--x0"));

    let o = ccpoint(&["solve", "--builtin", "example-2.10", "--tol", "-1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = ccpoint(&["solve"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_with_one() {
    let o = ccpoint(&["solve", "--builtin", "example-2.10", "--max-iter", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not complete"), "{}", stderr(&o));
}
