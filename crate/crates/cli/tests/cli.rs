use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn tangrass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangrass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn run_passes_with_exit_zero() {
    let o = tangrass(&["run", "lemma-2.1", "--nu", "3", "--trials", "1000", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["trials"], 1000);
    assert_eq!(v["params"]["nu"], 3);
    assert!(stderr(&o).contains("PASS"));
}

#[test]
fn unknown_id_is_a_usage_error() {
    let o = tangrass(&["run", "unknown-id"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown statement"));
    assert!(stdout(&o).is_empty());
}

#[test]
fn bad_mode_is_a_usage_error() {
    assert_eq!(tangrass(&["run", "lemma-2.1", "--mode", "fuzzy"]).status.code(), Some(2));
    assert_eq!(tangrass(&["run", "thm-5.3", "--mode", "symbolic"]).status.code(), Some(2));
}

#[test]
fn failing_report_exits_one() {
    let o = tangrass(&["run", "thm-5.2", "--mode", "symbolic", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn out_writes_the_report_and_jobs_do_not_change_it() {
    let dir = std::env::temp_dir().join(format!("tangrass-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let mut reports = Vec::new();
    for jobs in ["1", "2"] {
        let path = dir.join(format!("r{}.json", jobs));
        let p = path.to_string_lossy().into_owned();
        let o = tangrass(&["run", "lemma-4.2", "--trials", "20", "--jobs", jobs, "--out", &p]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).is_empty());
        reports.push(fs::read_to_string(&path).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn timing_is_opt_in() {
    let plain: Value = serde_json::from_str(&stdout(&tangrass(&["run", "lemma-2.1", "--trials", "3"]))).unwrap();
    assert!(plain["ms"].is_null());
    let timed = tangrass(&["run", "lemma-2.1", "--trials", "3", "--timing"]);
    let timed: Value = serde_json::from_str(&stdout(&timed)).unwrap();
    assert!(timed["ms"].is_u64());
}

#[test]
fn list_names_every_campaign() {
    let o = tangrass(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("lemma-2.1"));
    assert!(out.contains("prop-zeron"));
    assert_eq!(out.lines().count(), tangrass::verify::REGISTRY.len());
}

#[test]
fn eval_prints_the_standard_frame() {
    let o = tangrass(&["eval", &fixture("frame.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "a + a′·ε");
    let o = tangrass(&["eval", &fixture("frame.json"), "--map", "tau2_1"]);
    assert_eq!(stdout(&o).trim(), "⟨a; a′]₂");
}

#[test]
fn eval_rejects_a_degenerate_fixture() {
    let o = tangrass(&["eval", &fixture("collinear.json"), "--map", "cross-ratio"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not generic"));
}

#[test]
fn eval_reports_the_line_of_a_bad_coefficient() {
    let o = tangrass(&["eval", &fixture("bad_coefficient.json"), "--map", "cross-ratio"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));
}

#[test]
fn eval_rejects_an_unknown_map() {
    let o = tangrass(&["eval", &fixture("frame.json"), "--map", "tau9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown map"));
}
