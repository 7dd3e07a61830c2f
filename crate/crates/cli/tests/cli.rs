use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use ultraword_cli::{run, Outcome, EXIT_DOMAIN, EXIT_IO, EXIT_PARSE, EXIT_USAGE};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("ultraword").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn assert_one_line_error(out: &Outcome, code: i32) {
    assert_eq!(out.code, code, "stdout: {} stderr: {}", out.stdout, out.stderr);
    assert!(out.stdout.is_empty());
    assert_eq!(out.stderr.lines().count(), 1, "{:?}", out.stderr);
    assert!(out.stderr.starts_with("error["));
}

#[test]
fn points_csv() {
    let out = cli(&["points", "--q", "2", "--K", "4", "--i", "0..3", "--j-max", "5"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "i,j,t");
    assert_eq!(lines.len(), 1 + 4 * 6);
    assert_eq!(lines[1], "0,0,0");
    assert_eq!(lines[2], "0,1,1/8");
    assert_eq!(*lines.last().unwrap(), "3,5,127/128");
}

#[test]
fn points_bounded_endpoint_once() {
    let out = json(&cli(&["points", "--q", "1", "--K", "2", "--m", "3", "--j-max", "1", "--format", "json"]));
    let rows = out.as_array().unwrap();
    assert_eq!(rows.len(), 3 * 2 + 1);
    assert_eq!(rows.last().unwrap(), &serde_json::json!({"i": 3, "j": 0, "t": "3/2"}));
}

#[test]
fn points_negative_range() {
    let out = cli(&["points", "--q", "3", "--K", "3", "--i", "-1..0", "--j-max", "1"]);
    assert_eq!(out.stdout, "i,j,t\n-1,0,-1/3\n-1,1,-1/6\n0,0,0\n");
}

#[test]
fn usage_errors() {
    assert_one_line_error(&cli(&["points", "--K", "0"]), EXIT_USAGE);
    assert_one_line_error(&cli(&["points", "--q", "2", "--K", "0"]), EXIT_USAGE);
    assert_one_line_error(&cli(&["points", "--q", "2"]), EXIT_USAGE);
    assert_one_line_error(&cli(&["points", "--q", "2", "--K", "1", "--bogus"]), EXIT_USAGE);
    assert_one_line_error(&cli(&["points", "--q", "1", "--K", "1"]), EXIT_USAGE);
    assert_one_line_error(&cli(&["points", "--q", "2", "--K", "1", "--i", "3..1"]), EXIT_USAGE);
    assert_one_line_error(&cli(&["signature", "--context", "x.json"]), EXIT_USAGE);
    assert_one_line_error(&cli(&["check", "--target", "st"]), EXIT_USAGE);
    assert_one_line_error(&cli(&["frobnicate"]), EXIT_USAGE);
}

#[test]
fn help_is_not_an_error() {
    let out = cli(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("points"));
}

#[test]
fn parse_io_and_domain_errors() {
    assert_one_line_error(&cli(&["closure", "--rules", "/nonexistent/rules.json"]), EXIT_IO);
    assert_one_line_error(&cli(&["closure", "--rules", &fixture("observations.json")]), EXIT_PARSE);
    assert_one_line_error(&cli(&["closure", "--rules", &fixture("rules.json"), "--premises", "zzz"]), EXIT_DOMAIN);
    assert_one_line_error(&cli(&["points", "--q", "1", "--K", "2", "--m", "3", "--b", "5/2"]), EXIT_DOMAIN);
    assert_one_line_error(&cli(&["signature", "--context", &fixture("context.json"), "--x", "b"]), EXIT_DOMAIN);
    assert_one_line_error(
        &cli(&["ultraword", "--spec", &fixture("paradigm_q2.json"), "--m", "0", "--n", "0"]),
        EXIT_DOMAIN,
    );
    assert_one_line_error(&cli(&["--config", &fixture("rules.json"), "points", "--q", "2", "--K", "1"]), EXIT_PARSE);
}

#[test]
fn closure_command() {
    let out = json(&cli(&["closure", "--rules", &fixture("rules.json"), "--premises", "a"]));
    assert_eq!(out["closure"], serde_json::json!(["a", "b", "c"]));
    assert_eq!(out["derivation"].as_array().unwrap().len(), 2);
}

#[test]
fn decompose_three_atoms() {
    let out = json(&cli(&["decompose", "--spec", &fixture("paradigm_q2.json"), "--points", "0:0,0:1,1:0"]));
    assert_eq!(out["counts"], serde_json::json!({"A": 0, "Q": 4, "d": 3, "total": 7}));
    assert_eq!(out["disjoint"], Value::Bool(true));

    let perm = json(&cli(&[
        "decompose",
        "--spec",
        &fixture("paradigm_q2.json"),
        "--points",
        "1:0,0:0,0:1",
        "--mode",
        "permutational",
        "--axioms",
        "T",
    ]));
    assert_eq!(perm["counts"], serde_json::json!({"A": 1, "Q": 12, "d": 3, "total": 16}));
    assert!(perm["word"].as_str().unwrap().starts_with("event_1_0"));
}

#[test]
fn signature_commands() {
    let theory = json(&cli(&["signature", "--context", &fixture("context.json"), "--theory"]));
    assert_eq!(theory, serde_json::json!([{"premises": ["a"], "conclusion": "c"}]));
    let behavior = json(&cli(&["signature", "--context", &fixture("context.json"), "--x", "a,c"]));
    assert_eq!(behavior["tuples"], serde_json::json!([]));
}

#[test]
fn converse_command() {
    let out = json(&cli(&["converse", "--observations", &fixture("observations.json"), "--premises", "a"]));
    assert_eq!(out["comparison"]["separate"], serde_json::json!(["a", "b"]));
    assert_eq!(out["comparison"]["union"], serde_json::json!(["a", "b", "c"]));
    assert_eq!(out["comparison"]["equal"], Value::Bool(false));
    let without = json(&cli(&["converse", "--observations", &fixture("observations.json")]));
    assert!(without.get("comparison").is_none());
    let undeclared = cli(&["converse", "--observations", &fixture("observations.json"), "--language", "a,b"]);
    assert_one_line_error(&undeclared, EXIT_DOMAIN);
}

#[test]
fn st_commands() {
    let empty = json(&cli(&["st", "--input", &fixture("subparticles_empty.json")]));
    assert_eq!(empty["standard_parts"], serde_json::json!([]));
    let out = json(&cli(&["st", "--input", &fixture("subparticles.json")]));
    assert_eq!(out["standard_parts"], out["realism"]);
    assert_eq!(out["standard_parts"].as_array().unwrap().len(), 2);
    assert_eq!(out["extended"].as_array().unwrap().len(), 5);
}

#[test]
fn check_commands() {
    for (target, flag, file) in [
        ("closure", "--rules", "rules.json"),
        ("st", "--input", "subparticles.json"),
        ("signature", "--context", "context.json"),
    ] {
        let out = json(&cli(&["check", "--target", target, flag, &fixture(file)]));
        assert_eq!(out["passed"], Value::Bool(true), "{target}");
    }
}

#[test]
fn paradigm_and_ultraword() {
    let listing = json(&cli(&["paradigm", "--spec", &fixture("paradigm_q1.json"), "--j-max", "0"]));
    let segs = listing["segments"].as_array().unwrap();
    assert_eq!(segs.len(), 4);
    assert_eq!(segs[3]["clause"], "This instruction is named ⌈3/2⌉.");

    let w = json(&cli(&["ultraword", "--spec", &fixture("paradigm_q4.json"), "--m", "-1", "--p", "1", "--n", "1", "--marker", "λ"]));
    assert_eq!(w["size"], 6);
    assert_eq!(w["contained"], Value::Bool(true));
    assert_eq!(w["params"]["marker"], serde_json::json!({"inf": "λ", "offset": 0}));
    assert_eq!(w["word"].as_str().unwrap().matches(" ∧ ").count(), 5);
}

#[test]
fn config_supplies_defaults() {
    let with = cli(&["--config", &fixture("config.json"), "points", "--q", "2", "--i", "0..0"]);
    let explicit = cli(&["points", "--q", "2", "--K", "3", "--j-max", "2", "--format", "json", "--i", "0..0"]);
    assert_eq!(with, explicit);
    let overridden = cli(&["--config", &fixture("config.json"), "points", "--q", "2", "--i", "0..0", "--format", "csv"]);
    assert!(overridden.stdout.starts_with("i,j,t\n"));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("ultraword-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("points.csv");
    let out = cli(&["points", "--q", "2", "--K", "1", "--i", "0..0", "--j-max", "0", "--output", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "i,j,t\n0,0,0\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes_and_logging() {
    let bin = env!("CARGO_BIN_EXE_ultraword");
    let ok = Command::new(bin)
        .args(["points", "--q", "2", "--K", "1", "--i", "0..0", "--j-max", "0"])
        .env("ULTRAWORD_LOG", "info")
        .output()
        .unwrap();
    assert!(ok.status.success());
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "i,j,t\n0,0,0\n");
    assert!(String::from_utf8(ok.stderr).unwrap().contains("enumerating"));

    let bad = Command::new(bin).args(["points", "--K", "0"]).env_remove("ULTRAWORD_LOG").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    assert_eq!(String::from_utf8(bad.stderr).unwrap().lines().count(), 1);
}
