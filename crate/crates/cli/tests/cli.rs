use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_tsgeom");

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn tsgeom(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn check(fixture: &str, extra: &[&str]) -> Output {
    let path = fixture_dir().join(fixture);
    let mut args = vec!["check", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    tsgeom(&args)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn exit_codes_follow_report_outcome() {
    assert_eq!(check("example.tsm", &["--suite", "all"]).status.code(), Some(2));
    assert_eq!(check("s3.tsm", &["--suite", "identities"]).status.code(), Some(0));
    assert_eq!(check("flat.tsm", &["--suite", "soliton"]).status.code(), Some(0));
}

#[test]
fn usage_and_parse_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.tsm");
    std::fs::write(&empty, "").unwrap();
    let out = tsgeom(&["check", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing mode"));

    assert_eq!(tsgeom(&["check"]).status.code(), Some(1));
    assert_eq!(check("s3.tsm", &["--suite", "nonsense"]).status.code(), Some(1));
    assert_eq!(check("s3.tsm", &["--format", "yaml"]).status.code(), Some(1));
    assert_eq!(tsgeom(&["check", "/nonexistent/x.tsm"]).status.code(), Some(1));
    assert_eq!(tsgeom(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for fmt in ["text", "json"] {
        let a = check("example.tsm", &["--format", fmt, "--oracle"]);
        let b = check("example.tsm", &["--format", fmt, "--oracle"]);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn example_json_flags_six_published_conflicts() {
    let v = json(&check("example.tsm", &["--format", "json"]));
    let flagged: Vec<&str> = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["items"].as_array().unwrap())
        .filter(|i| i["conflicts_with_paper"] == true)
        .map(|i| i["id"].as_str().unwrap())
        .collect();
    assert_eq!(
        flagged,
        ["R(e1,e2)e1", "R(e1,e3)e1", "R(e2,e3)e2", "S(e1,e1)", "S(e2,e2) and r", "lambda"]
    );
    assert_eq!(v["summary"]["conflicts_with_paper"], 6);
    assert_eq!(v["summary"]["fail"], 6);
    assert_eq!(v["exit_code"], 2);
}

#[test]
fn json_items_carry_reference_and_string_residuals() {
    let v = json(&check("example.tsm", &["--format", "json", "--suite", "published"]));
    for suite in v["suites"].as_array().unwrap() {
        for item in suite["items"].as_array().unwrap() {
            assert!(item["reference"].as_str().is_some_and(|s| !s.is_empty()));
            for r in item["residual_components"].as_array().unwrap() {
                assert!(r["index"].is_string() && r["value"].is_string());
            }
        }
    }
    assert!(v["engine_version"].is_string());
}

#[test]
fn oracle_suite_is_appended() {
    let v = json(&check("example.tsm", &["--format", "json", "--suite", "curvature", "--oracle", "--seed", "3"]));
    let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["curvature", "oracle"]);
    let oracle = &v["suites"][1];
    assert_eq!(oracle["summary"]["pass"], 2);

    let v = json(&check("s3.tsm", &["--format", "json", "--suite", "curvature", "--oracle"]));
    assert_eq!(v["suites"][1]["summary"]["not_applicable"], 2);
}

#[test]
fn numbered_suite_names_are_accepted() {
    let v = json(&check("s3.tsm", &["--format", "json", "--suite", "theorem-3-2"]));
    assert_eq!(v["suites"][0]["suite"], "star-conformal-curvature");
    let items = v["suites"][0]["items"].as_array().unwrap();
    assert!(items
        .iter()
        .flat_map(|i| i["notes"].as_array().unwrap())
        .any(|n| n.as_str().unwrap().contains("no *-conformal soliton")));
}

#[test]
fn bundled_fixtures_match_files() {
    for name in ["example", "s3", "flat"] {
        let out = tsgeom(&["fixture", name]);
        assert_eq!(out.status.code(), Some(0));
        let file = std::fs::read(fixture_dir().join(format!("{name}.tsm"))).unwrap();
        assert_eq!(out.stdout, file);
    }
    assert_eq!(tsgeom(&["fixture", "torus"]).status.code(), Some(1));
}
