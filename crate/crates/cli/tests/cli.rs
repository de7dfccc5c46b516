use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qutrit_anneal::analysis::Jobs;
use qutrit_anneal::scenario::Scenario;
use qutrit_anneal::selftest::run_all;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qutrit-anneal"))
}

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scenario(name: &str) -> String {
    scenarios_dir().join(name).to_string_lossy().into_owned()
}

#[test]
fn shipped_scenarios_parse_and_round_trip() {
    let mut count = 0;
    for entry in fs::read_dir(scenarios_dir()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let s = Scenario::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(Scenario::parse(&s.to_text()).unwrap(), s);
        count += 1;
    }
    assert!(count >= 6);
}

#[test]
fn spectrum_has_nine_levels_and_degenerate_end() {
    let o = run(&["spectrum", &scenario("fig1a_spectrum.toml"), "--samples", "11"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,E1,E2,E3,E4,E5,E6,E7,E8,E9");
    assert_eq!(lines.len(), 12);
    let last: Vec<f64> = lines[11].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], 300.0);
    assert_eq!(&last[1..], &[-1.0, -1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
}

#[test]
fn theory_prediction_at_canonical_point() {
    let o = run(&["theory", "--h", "2", "--T", "300"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("quantity,value\n"));
    let a3: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("a3_prediction,"))
        .unwrap()
        .parse()
        .unwrap();
    let oracle = 1.22 * (2.0f64 / 300.0).powf(2.0 / 3.0);
    assert!((a3 - oracle).abs() < 1e-12, "{a3}");
    assert!((a3 - 0.0433).abs() < 2e-4, "{a3}");
}

#[test]
fn sweep_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let f = scenario("fig1c.toml");
    let out = dir.path().to_string_lossy().into_owned();
    let a = run(&["sweep", &f, "--out", &out, "--jobs", "3"]);
    assert!(a.status.success());
    let first = fs::read(dir.path().join("fig1c_sweep.csv")).unwrap();
    let b = run(&["--jobs", "1", "sweep", &f]);
    assert_eq!(first, b.stdout);
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("control,control_value,pattern,probability\ngamma,0,1;0,"));
    assert_eq!(text.lines().count(), 1 + 22 * 3);
}

#[test]
fn run_reports_probabilities() {
    let o = run(&["run", &scenario("fig3_switched.toml")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("pattern,probability"));
    assert_eq!(text.lines().count(), 5);
    assert!(text.contains("\n1;1,"));
}

#[test]
fn validation_errors_exit_one_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "name = \"bad\"\nn = 2\npatterns = [[0, 1], [2, 0]]\n").unwrap();
    let o = run(&["run", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    let json = err.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(v["exit_code"], 1);
    assert_eq!(v["failures"][0]["kind"], "validation");
    assert!(v["failures"][0]["message"].as_str().unwrap().contains("line 3"));

    assert_eq!(run(&["run", "/nonexistent/x.toml"]).status.code(), Some(1));
    assert_eq!(run(&["theory", "--h", "-1", "--T", "300"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn selftest_exit_code_tracks_the_suite() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["selftest", "--out", dir.path().to_str().unwrap()]);
    let report = fs::read_to_string(dir.path().join("selftest.txt")).unwrap();
    assert_eq!(report.lines().count(), 9);
    let expected = run_all(Jobs::default());
    let all_pass = expected.iter().all(|c| c.passed);
    for (line, c) in report.lines().zip(&expected) {
        assert_eq!(line.starts_with("[PASS]"), c.passed, "{line}");
    }
    if all_pass {
        assert_eq!(o.status.code(), Some(0));
    } else {
        assert_eq!(o.status.code(), Some(2));
        let err = String::from_utf8(o.stderr).unwrap();
        let v: serde_json::Value = serde_json::from_str(err.lines().last().unwrap()).unwrap();
        let failed = expected.iter().filter(|c| !c.passed).count();
        assert_eq!(v["failures"].as_array().unwrap().len(), failed);
    }
}
