use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn semiflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiflow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

const SP3: &str = "# three-term relation\n2 1\n1 3\n--\n1 2\n2 3\n";
const UNBALANCED: &str = "2 1\n1 2\n--\n1 3\n";

#[test]
fn check_balance_reports_and_exits() {
    let dir = TempDir::new().unwrap();
    let balanced = semiflow(&["check-balance", &write(&dir, "sp3.txt", SP3)]);
    assert_eq!(balanced.status.code(), Some(0));
    assert_eq!(stdout(&balanced), "balanced\n");

    let unbalanced = semiflow(&["check-balance", &write(&dir, "bad.txt", UNBALANCED)]);
    assert_eq!(unbalanced.status.code(), Some(1));
    assert_eq!(
        stdout(&unbalanced),
        "unbalanced witness: (1,2)\nmultiplicity: 0 on the left, 1 on the right\n"
    );
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let missing = semiflow(&["check-balance", dir.path().join("absent.txt").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error:"));

    let malformed = semiflow(&["check-balance", &write(&dir, "m.txt", "2 1\n1 3\n")]);
    assert_eq!(malformed.status.code(), Some(2));

    let wrong_size = semiflow(&["enumerate-matchings", "-p", "2", "-q", "1", "1,2,3"]);
    assert_eq!(wrong_size.status.code(), Some(2));

    let bad_family = semiflow(&["verify", "family:nonsense"]);
    assert_eq!(bad_family.status.code(), Some(2));

    let bad_flag = semiflow(&["verify", "family:triple", "--mode", "guess"]);
    assert_eq!(bad_flag.status.code(), Some(2));
}

#[test]
fn enumerate_matchings_golden() {
    let out = semiflow(&["enumerate-matchings", "-p", "3", "-q", "2", "1,3,5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "(1,2) (3,4)\n(1,2) (4,5)\n(1,4) (2,3)\n(2,3) (4,5)\n(2,5) (3,4)\n"
    );
}

#[test]
fn verify_symbolic_family_passes() {
    let out = semiflow(&["verify", "--mode", "symbolic", "--network", "halfgrid:4", "family:quadruple"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "relation: {13} = {12,14} (p = 2, q = 2)\nbalanced: yes\nnetwork: halfgrid:4, 4 sources\nsymbolic: 1 checks\npass\n"
    );
}

#[test]
fn verify_finds_first_failure() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "bad.txt", UNBALANCED);
    let out = semiflow(&["verify", "--mode", "symbolic", &pair]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("balanced: no\n"), "{text}");
    assert!(text.contains("fail (symbolic) at X = {}, Y = {1,2,3}: f(12)f(3) = f(13)f(2)"), "{text}");
}

#[test]
fn verify_is_deterministic_across_jobs() {
    let args = |jobs: &'static str| {
        semiflow(&[
            "verify", "--mode", "numeric", "--network", "halfgrid:5", "--trials", "6", "--seed", "11", "--jobs", jobs,
            "family:tail-fixed:3:2:5",
        ])
    };
    let (one, four) = (args("1"), args("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);

    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "bad.txt", UNBALANCED);
    let run = |jobs: &str| semiflow(&["verify", "--mode", "tropical", "--seed", "5", "--jobs", jobs, &pair]);
    let (a, b) = (run("1"), run("3"));
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_on_network_file() {
    let dir = TempDir::new().unwrap();
    let grid = semiflow(&["counterexample", &write(&dir, "bad.txt", UNBALANCED), "--output", dir.path().join("g.txt").to_str().unwrap()]);
    assert_eq!(grid.status.code(), Some(0));
    let net = dir.path().join("g.txt");
    let out = semiflow(&["verify", "--network", net.to_str().unwrap(), &write(&dir, "sp3.txt", SP3)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn counterexample_writes_gadget() {
    let dir = TempDir::new().unwrap();
    let pair = write(&dir, "bad.txt", UNBALANCED);
    let target = dir.path().join("gadget.txt");
    let out = semiflow(&["counterexample", &pair, "--output", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("witness: (1,2) (left 0, right 1)\naugmented matching: (1,2) (3,4)\n"), "{text}");
    assert!(text.contains("(P1)/(P2): verified\nleft:  f(12)f(34) = 0\nright: f(13)f(24) = 1\n"), "{text}");
    let network = fs::read_to_string(&target).unwrap();
    assert!(network.contains("edge s1 pi(1,2):u1"));
    assert!(network.contains("sinks pi(1,2):u1 pi(3,4):u1"));

    let balanced = semiflow(&["counterexample", &write(&dir, "sp3.txt", SP3)]);
    assert_eq!(balanced.status.code(), Some(1));
    assert_eq!(stdout(&balanced), "balanced: no counterexample exists\n");
}

#[test]
fn gen_family_round_trips_through_check_balance() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("fam.txt");
    for spec in ["triple", "quintuple", "interval-exchange:5:4:2,4", "groebner:3:2:2,4,5:1", "tail-fixed:3:2:"] {
        let out = semiflow(&["gen-family", spec, "--output", target.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{spec}");
        let check = semiflow(&["check-balance", target.to_str().unwrap()]);
        assert_eq!(stdout(&check), "balanced\n", "{spec}");
    }
    let printed = semiflow(&["gen-family", "triple"]);
    assert_eq!(stdout(&printed), "# triple: {13} = {12,23}\n2 1\n1 3\n--\n1 2\n2 3\n");

    let list = semiflow(&["gen-family", "--list", "--max-total", "4"]);
    assert_eq!(list.status.code(), Some(0));
    assert!(stdout(&list).lines().any(|l| l == "triple\t{13} = {12,23}"));
}

#[test]
fn laurent_golden() {
    let out = semiflow(&["laurent", "-n", "3", "1,3"]);
    assert_eq!(
        stdout(&out),
        "f(13) = f[1..1]^1 f[2..3]^1 f[2..2]^-1 + f[1..2]^1 f[3..3]^1 f[2..2]^-1\n"
    );
    let too_big = semiflow(&["laurent", "-n", "13", "1"]);
    assert_eq!(too_big.status.code(), Some(2));
}

#[test]
fn lindstrom_and_flows_golden() {
    let m = semiflow(&["lindstrom", "--network", "halfgrid:3"]);
    assert_eq!(stdout(&m), "1 1 1\n0 1 2\n0 0 1\n");
    let weighted = semiflow(&["lindstrom", "--network", "halfgrid:2", "--weights", "2,3,5"]);
    assert_eq!(stdout(&weighted), "2 6\n0 15\n");
    let wrong = semiflow(&["lindstrom", "--network", "halfgrid:2", "--weights", "2,3"]);
    assert_eq!(wrong.status.code(), Some(2));

    let flows = semiflow(&["flows", "--network", "halfgrid:3", "1,3"]);
    assert_eq!(stdout(&flows), "1,1; 3,1->2,1->2,2\n1,1; 3,1->3,2->2,2\n");
}

#[test]
fn doubleflow_audit_reports_counts() {
    let out = semiflow(&["doubleflow-audit", "--network", "halfgrid:4", "-p", "2", "-q", "2", "1,3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.starts_with("I(A) = {1,3}, J(A) = {2,4}:"), "{text}");
    assert!(text.lines().skip(1).all(|l| l.ends_with("exchange invariant")), "{text}");
}

#[test]
fn json_envelope_is_versioned() {
    let dir = TempDir::new().unwrap();
    let out = semiflow(&["--format", "json", "check-balance", &write(&dir, "bad.txt", UNBALANCED)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "check-balance");
    assert_eq!(v["ok"], false);
    assert_eq!(v["witness"]["matching"], serde_json::json!([[1, 2]]));

    let laurent = json(&semiflow(&["laurent", "-n", "3", "1,3", "--format", "json"]));
    assert_eq!(laurent["terms"].as_array().unwrap().len(), 2);

    let verify = json(&semiflow(&["--format", "json", "verify", "family:triple"]));
    assert_eq!(verify["ok"], true);
    assert_eq!(verify["failure"], Value::Null);
}
